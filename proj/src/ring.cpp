#include "gdpa/ring.hpp"

#include <algorithm>
#include <cctype>

namespace gdpa {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t deg) {
  std::vector<mpz_class> v(deg + 1, 0);
  v[deg] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
  std::vector<mpz_class> r(c_);
  for (auto& x : r) x = -x;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

namespace {

// Long division num = q*den + r over Q. Returns false if a quotient
// coefficient is non-integral (then the division is not exact in Z[q]).
bool poly_divmod(const IntPoly& num, const IntPoly& den, IntPoly& quot, IntPoly& rem) {
  if (den.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<mpz_class> r = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dd = d.size() - 1;
  if (r.size() < d.size()) {
    quot = IntPoly();
    rem = num;
    return true;
  }
  std::vector<mpz_class> q(r.size() - dd, 0);
  for (std::size_t k = r.size(); k-- > dd;) {
    if (r[k] == 0) continue;
    if (r[k] % d[dd] != 0) return false;
    mpz_class t = r[k] / d[dd];
    q[k - dd] = t;
    for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= t * d[j];
  }
  quot = IntPoly(std::move(q));
  rem = IntPoly(std::move(r));
  return true;
}

}  // namespace

bool IntPoly::divides(const IntPoly& num) const {
  if (is_zero()) return num.is_zero();
  IntPoly q, r;
  if (!poly_divmod(num, *this, q, r)) return false;
  return r.is_zero();
}

IntPoly IntPoly::divide_exact(const IntPoly& num) const {
  IntPoly q, r;
  if (is_zero() || !poly_divmod(num, *this, q, r) || !r.is_zero())
    throw PreconditionError("polynomial division is not exact");
  return q;
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) g = gcd(g, x);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return *this;
  mpz_class g = content();
  if (c_.back() < 0) g = -g;
  std::vector<mpz_class> r(c_);
  for (auto& x : r) x /= g;
  return IntPoly(std::move(r));
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const mpz_class& c = c_[k];
    if (c == 0) continue;
    mpz_class a = abs(c);
    std::string term;
    if (k == 0) {
      term = a.get_str();
    } else {
      if (a != 1) term = a.get_str() + "*";
      term += "q";
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? "-" : "+") + term;
    }
  }
  return out;
}

IntPoly IntPoly::parse(const std::string& src) {
  std::string s;
  for (char ch : src)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw PreconditionError("empty polynomial string");
  IntPoly acc;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw PreconditionError("malformed polynomial: " + src);
    mpz_class coef = 1;
    std::size_t deg = 0;
    auto qpos = term.find('q');
    if (qpos == std::string::npos) {
      if (coef.set_str(term, 10) != 0) throw PreconditionError("malformed polynomial: " + src);
    } else {
      std::string cs = term.substr(0, qpos);
      if (!cs.empty() && cs.back() == '*') cs.pop_back();
      if (!cs.empty() && coef.set_str(cs, 10) != 0)
        throw PreconditionError("malformed polynomial: " + src);
      std::string rest = term.substr(qpos + 1);
      deg = 1;
      if (!rest.empty()) {
        if (rest[0] != '^') throw PreconditionError("malformed polynomial: " + src);
        deg = std::stoul(rest.substr(1));
      }
    }
    acc = acc + monomial(sign * coef, deg);
    i = j;
  }
  return acc;
}

// ---------------------------------------------------------------- primes

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1, m = 64;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(mpz_class(x - y))) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(mpz_class(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n0) {
  if (n0 <= 0) throw PreconditionError("factorize requires a positive integer");
  mpz_class n = n0;
  std::vector<mpz_class> primes;
  for (unsigned long p = 2; p < 10000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

// ---------------------------------------------------------------- Ring

namespace {

mpz_class mod_pos(const mpz_class& a, const mpz_class& n) {
  mpz_class r = a % n;
  if (r < 0) r += n;
  return r;
}

long vp(mpz_class a, const mpz_class& p) {
  if (a == 0) return -1;
  long v = 0;
  a = abs(a);
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
    throw PreconditionError("element is not invertible modulo " + n.get_str());
  return r;
}

}  // namespace

Ring::Ring(RingKind k, mpz_class n) : kind_(k), n_(std::move(n)) {
  switch (kind_) {
    case RingKind::Rationals: field_ = local_ = true; break;
    case RingKind::PrimeField:
      field_ = local_ = true;
      local_prime_ = n_;
      break;
    case RingKind::PLocal:
      local_ = true;
      local_prime_ = n_;
      break;
    case RingKind::IntegersMod: {
      auto f = factorize(n_);
      field_ = f.size() == 1 && f[0].second == 1;
      if (f.size() == 1) {
        local_ = true;
        local_prime_ = f[0].first;
      }
      break;
    }
    default: break;
  }
}

Ring Ring::integers() { return Ring(RingKind::Integers, 0); }
Ring Ring::rationals() { return Ring(RingKind::Rationals, 0); }

Ring Ring::integers_mod(const mpz_class& n) {
  if (n < 2) throw PreconditionError("Z/n requires n >= 2");
  return Ring(RingKind::IntegersMod, n);
}

Ring Ring::prime_field(const mpz_class& p) {
  if (!is_prime(p)) throw PreconditionError("GF(p) requires p prime, got " + p.get_str());
  return Ring(RingKind::PrimeField, p);
}

Ring Ring::p_local(const mpz_class& p) {
  if (!is_prime(p)) throw PreconditionError("Z_(p) requires p prime, got " + p.get_str());
  return Ring(RingKind::PLocal, p);
}

Ring Ring::int_poly() { return Ring(RingKind::IntPoly, 0); }

bool Ring::is_field() const { return field_; }

bool Ring::is_domain() const { return kind_ != RingKind::IntegersMod || field_; }

bool Ring::is_pid() const { return kind_ != RingKind::IntPoly && is_domain(); }

bool Ring::is_local() const { return local_; }

mpz_class Ring::local_prime() const {
  if (!local_) throw UnsupportedRing(name() + " is not a local ring");
  return local_prime_;
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::IntegersMod: return "Z/" + n_.get_str();
    case RingKind::PrimeField: return "GF(" + n_.get_str() + ")";
    case RingKind::PLocal: return "Z_(" + n_.get_str() + ")";
    case RingKind::IntPoly: return "Z[q]";
  }
  return "?";
}

void Ring::require_scalar(const char* op) const {
  if (kind_ == RingKind::IntPoly) throw UnsupportedRing(std::string(op) + " is not supported over Z[q]");
}

RingElement Ring::zero() const { return RingElement{}; }

RingElement Ring::one() const { return from_int(1); }

RingElement Ring::from_int(long v) const { return from_mpz(mpz_class(v)); }

RingElement Ring::from_mpz(const mpz_class& v) const {
  RingElement e;
  switch (kind_) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField: e.q = mod_pos(v, n_); break;
    case RingKind::IntPoly: e.poly = IntPoly::constant(v); break;
    default: e.q = v; break;
  }
  return e;
}

RingElement Ring::from_mpq(const mpq_class& v0) const {
  mpq_class v = v0;
  v.canonicalize();
  RingElement e;
  const mpz_class& num = v.get_num();
  const mpz_class& den = v.get_den();
  switch (kind_) {
    case RingKind::Integers:
      if (den != 1) throw PreconditionError("non-integral value " + v.get_str() + " in Z");
      e.q = v;
      break;
    case RingKind::Rationals: e.q = v; break;
    case RingKind::IntegersMod:
    case RingKind::PrimeField: e.q = mod_pos(num * inv_mod(mod_pos(den, n_), n_), n_); break;
    case RingKind::PLocal:
      if (den % n_ == 0) throw PreconditionError(v.get_str() + " is not in " + name());
      e.q = v;
      break;
    case RingKind::IntPoly:
      if (den != 1) throw PreconditionError("non-integral constant in Z[q]");
      e.poly = IntPoly::constant(num);
      break;
  }
  return e;
}

RingElement Ring::from_poly(const IntPoly& p) const {
  if (kind_ == RingKind::IntPoly) {
    RingElement e;
    e.poly = p;
    return e;
  }
  if (p.degree() > 0) throw PreconditionError("non-constant polynomial in " + name());
  return from_mpz(p.coeff(0));
}

RingElement Ring::normalize(const RingElement& a) const {
  if (kind_ == RingKind::IntPoly) return from_poly(a.poly);
  return from_mpq(a.q);
}

RingElement Ring::add(const RingElement& a, const RingElement& b) const {
  RingElement e;
  switch (kind_) {
    case RingKind::IntPoly: e.poly = a.poly + b.poly; break;
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
      mpz_class s = a.q.get_num() + b.q.get_num();
      if (s >= n_) s -= n_;
      e.q = s;
      break;
    }
    default: e.q = a.q + b.q; break;
  }
  return e;
}

RingElement Ring::neg(const RingElement& a) const {
  RingElement e;
  switch (kind_) {
    case RingKind::IntPoly: e.poly = -a.poly; break;
    case RingKind::IntegersMod:
    case RingKind::PrimeField: e.q = a.q == 0 ? mpz_class(0) : mpz_class(n_ - a.q.get_num()); break;
    default: e.q = -a.q; break;
  }
  return e;
}

RingElement Ring::sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
  RingElement e;
  switch (kind_) {
    case RingKind::IntPoly: e.poly = a.poly * b.poly; break;
    case RingKind::IntegersMod:
    case RingKind::PrimeField: e.q = mpz_class((a.q.get_num() * b.q.get_num()) % n_); break;
    default: e.q = a.q * b.q; break;
  }
  return e;
}

RingElement Ring::pow(const RingElement& a, unsigned long e) const {
  RingElement result = one(), base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

bool Ring::is_zero(const RingElement& a) const {
  return kind_ == RingKind::IntPoly ? a.poly.is_zero() : a.q == 0;
}

bool Ring::is_one(const RingElement& a) const {
  if (kind_ == RingKind::IntPoly) return a.poly.degree() == 0 && a.poly.coeff(0) == 1;
  return a.q == 1;
}

bool Ring::is_unit(const RingElement& a) const {
  switch (kind_) {
    case RingKind::Integers: return a.q == 1 || a.q == -1;
    case RingKind::Rationals:
    case RingKind::PrimeField: return a.q != 0;
    case RingKind::IntegersMod: return gcd(a.q.get_num(), n_) == 1;
    case RingKind::PLocal: return a.q != 0 && a.q.get_num() % n_ != 0;
    case RingKind::IntPoly: return a.poly.degree() == 0 && abs(a.poly.coeff(0)) == 1;
  }
  return false;
}

RingElement Ring::inverse(const RingElement& u) const {
  if (!is_unit(u)) throw PreconditionError(to_string(u) + " is not a unit in " + name());
  RingElement e;
  switch (kind_) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField: e.q = inv_mod(u.q.get_num(), n_); break;
    case RingKind::IntPoly: e.poly = u.poly; break;
    default: e.q = 1 / u.q; break;
  }
  return e;
}

bool Ring::divides(const RingElement& a, const RingElement& b) const {
  if (is_zero(b)) return true;
  switch (kind_) {
    case RingKind::Integers: return a.q != 0 && b.q.get_num() % a.q.get_num() == 0;
    case RingKind::Rationals:
    case RingKind::PrimeField: return a.q != 0;
    case RingKind::IntegersMod: return b.q.get_num() % gcd(a.q.get_num(), n_) == 0;
    case RingKind::PLocal:
      return a.q != 0 && vp(a.q.get_num(), n_) <= vp(b.q.get_num(), n_);
    case RingKind::IntPoly: return a.poly.divides(b.poly);
  }
  return false;
}

RingElement Ring::divide(const RingElement& b, const RingElement& a) const {
  if (!divides(a, b)) throw PreconditionError(to_string(a) + " does not divide " + to_string(b));
  if (is_zero(b)) return zero();
  RingElement e;
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::Rationals:
    case RingKind::PLocal: e.q = b.q / a.q; break;
    case RingKind::PrimeField: return mul(b, inverse(a));
    case RingKind::IntegersMod: {
      mpz_class g = gcd(a.q.get_num(), n_);
      mpz_class m = n_ / g;
      mpz_class x = (b.q.get_num() / g) * inv_mod(mod_pos(a.q.get_num() / g, m), m);
      e.q = mod_pos(x, m);
      break;
    }
    case RingKind::IntPoly: e.poly = a.poly.divide_exact(b.poly); break;
  }
  return e;
}

RingElement Ring::associate_normal(const RingElement& a) const {
  switch (kind_) {
    case RingKind::Integers: return from_mpz(abs(a.q.get_num()));
    case RingKind::Rationals:
    case RingKind::PrimeField: return is_zero(a) ? zero() : one();
    case RingKind::IntegersMod: return from_mpz(gcd(a.q.get_num(), n_));
    case RingKind::PLocal: {
      if (is_zero(a)) return zero();
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), n_.get_mpz_t(), static_cast<unsigned long>(vp(a.q.get_num(), n_)));
      return from_mpz(r);
    }
    case RingKind::IntPoly: {
      if (a.poly.is_zero()) return a;
      return a.poly.coeffs().back() < 0 ? neg(a) : a;
    }
  }
  return a;
}

RingElement Ring::ideal_generator(const std::vector<RingElement>& gens) const {
  switch (kind_) {
    case RingKind::Integers: {
      mpz_class g = 0;
      for (const auto& x : gens) g = gcd(g, x.q.get_num());
      return from_mpz(g);
    }
    case RingKind::Rationals:
    case RingKind::PrimeField:
      for (const auto& x : gens)
        if (!is_zero(x)) return one();
      return zero();
    case RingKind::IntegersMod: {
      mpz_class g = n_;
      for (const auto& x : gens) g = gcd(g, x.q.get_num());
      return from_mpz(g);
    }
    case RingKind::PLocal: {
      RingElement best = zero();
      long bv = -1;
      for (const auto& x : gens) {
        if (is_zero(x)) continue;
        long v = vp(x.q.get_num(), n_);
        if (bv < 0 || v < bv) {
          bv = v;
          best = x;
        }
      }
      return associate_normal(best);
    }
    case RingKind::IntPoly: break;
  }
  throw UnsupportedRing("ideal generators are not computed over Z[q]");
}

bool Ring::unit_ideal(const RingElement& a, const RingElement& b) const {
  if (kind_ == RingKind::IntPoly) throw UnsupportedRing("unit-ideal test is not supported over Z[q]");
  return is_unit(ideal_generator({a, b}));
}

mpz_class Ring::euclid_size(const RingElement& a) const {
  switch (kind_) {
    case RingKind::Integers: return abs(a.q.get_num());
    case RingKind::IntegersMod:
      if (field_) return 0;
      break;
    case RingKind::PLocal: return vp(a.q.get_num(), n_);
    case RingKind::Rationals:
    case RingKind::PrimeField: return 0;
    case RingKind::IntPoly: break;
  }
  throw UnsupportedRing("Euclidean elimination is not supported over " + name());
}

RingElement Ring::euclid_quotient(const RingElement& a, const RingElement& b) const {
  switch (kind_) {
    case RingKind::IntegersMod:
      if (field_) return mul(a, inverse(b));
      break;
    case RingKind::Integers: {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a.q.get_num_mpz_t(), b.q.get_num_mpz_t());
      RingElement e;
      e.q = q;
      return e;
    }
    case RingKind::PLocal:
      if (vp(a.q.get_num(), n_) >= vp(b.q.get_num(), n_)) {
        RingElement e;
        e.q = a.q / b.q;
        return e;
      }
      return zero();
    case RingKind::Rationals: {
      RingElement e;
      e.q = a.q / b.q;
      return e;
    }
    case RingKind::PrimeField: return mul(a, inverse(b));
    case RingKind::IntPoly: break;
  }
  throw UnsupportedRing("Euclidean elimination is not supported over " + name());
}

long Ring::valuation(const RingElement& a, const mpz_class& p) const {
  require_scalar("valuation");
  if (a.q == 0) return -1;
  return vp(a.q.get_num(), p) - vp(a.q.get_den(), p);
}

std::string Ring::to_string(const RingElement& a) const {
  if (kind_ == RingKind::IntPoly) return a.poly.to_string();
  return a.q.get_str();
}

RingElement Ring::parse(const std::string& src) const {
  if (kind_ == RingKind::IntPoly) return from_poly(IntPoly::parse(src));
  std::string s;
  for (char ch : src)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw PreconditionError("cannot parse ring element '" + src + "'");
  if (v.get_den() == 0) throw PreconditionError("zero denominator in '" + src + "'");
  v.canonicalize();
  return from_mpq(v);
}

}  // namespace gdpa
