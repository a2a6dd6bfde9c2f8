#include "gdpa/classes.hpp"

#include <algorithm>

namespace gdpa {

// ---------------------------------------------------------------- class vectors

namespace {

std::string prime_power_key(const mpz_class& p, unsigned k) {
  mpz_class q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), k);
  return "[Z/" + q.get_str() + "]";
}

mpz_class torsion_value(const RingElement& d) { return abs(d.q.get_num()); }

}  // namespace

ClassVector& add_into(ClassVector& acc, const ClassVector& v, long long sign) {
  for (const auto& [k, c] : v) {
    long long& x = acc[k];
    x += sign * c;
    if (x == 0) acc.erase(k);
  }
  return acc;
}

ClassVector class_of(const ModuleInvariants& inv, const Ring& ring, ClassMode mode) {
  ClassVector out;
  if (ring.kind() == RingKind::IntPoly) throw UnsupportedRing("no class group over Z[q]");
  const std::string free_key = "[" + ring.name() + "]";
  bool composite = ring.kind() == RingKind::IntegersMod && !ring.is_field();
  switch (mode) {
    case ClassMode::Full:
      if (inv.free_rank) out[free_key] = static_cast<long long>(inv.free_rank);
      for (const auto& d : inv.torsion_factors)
        for (const auto& [p, k] : factorize(torsion_value(d))) out[prime_power_key(p, k)] += 1;
      break;
    case ClassMode::Rank:
      if (composite) throw UnsupportedRing("rank classes are not defined over " + ring.name());
      if (inv.free_rank) out[free_key] = static_cast<long long>(inv.free_rank);
      break;
    case ClassMode::Plus:
      if (composite) throw UnsupportedRing("torsion length classes are not defined over " + ring.name());
      if (inv.free_rank) break;
      for (const auto& d : inv.torsion_factors)
        for (const auto& [p, k] : factorize(torsion_value(d))) out["[F_" + p.get_str() + "]"] += k;
      break;
  }
  return out;
}

std::string to_string(const ClassVector& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : v) {
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    long long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a) + "*";
    out += k;
  }
  return out;
}

// ---------------------------------------------------------------- Laurent polynomials

LaurentPoly LaurentPoly::monomial(long long c, long e) {
  LaurentPoly p;
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::one_minus_t(long p) {
  LaurentPoly r = one();
  r.add_term(p, -1);
  return r;
}

long long LaurentPoly::coeff(long e) const {
  auto it = c_.find(e);
  return it == c_.end() ? 0 : it->second;
}

void LaurentPoly::add_term(long e, long long c) {
  if (c == 0) return;
  long long& x = c_[e];
  x += c;
  if (x == 0) c_.erase(e);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.c_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.c_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

std::optional<LaurentPoly> LaurentPoly::divide_one_minus_t(long p) const {
  if (c_.empty()) return LaurentPoly();
  const long lo = c_.begin()->first, hi = c_.rbegin()->first;
  if (hi - lo < p) return std::nullopt;
  // n_e = q_e - q_{e-p}
  std::map<long, long long> q;
  LaurentPoly out;
  for (long e = lo; e <= hi; ++e) {
    long long prev = e - p >= lo ? q[e - p] : 0;
    long long v = coeff(e) + prev;
    if (e > hi - p) {
      if (v != 0) return std::nullopt;
      continue;
    }
    q[e] = v;
    out.add_term(e, v);
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : c_) {
    long long a = c < 0 ? -c : c;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    std::string mono = e == 0 ? "" : e == 1 ? "t" : "t^" + std::to_string(e);
    if (mono.empty())
      out += std::to_string(a);
    else
      out += (a == 1 ? "" : std::to_string(a) + "*") + mono;
  }
  return out;
}

// ---------------------------------------------------------------- rational series

std::vector<long long> RationalSeries::expand(long lo, long hi) const {
  if (hi < lo) return {};
  long start = lo;
  if (!num.is_zero()) start = std::min(start, num.coeffs().begin()->first);
  std::vector<long long> c(static_cast<std::size_t>(hi - start + 1), 0);
  for (const auto& [e, v] : num.coeffs())
    if (e <= hi) c[e - start] += v;
  for (long p : den)
    for (std::size_t i = static_cast<std::size_t>(p); i < c.size(); ++i) c[i] += c[i - p];
  return std::vector<long long>(c.begin() + (lo - start), c.end());
}

bool RationalSeries::equals(const RationalSeries& o) const {
  LaurentPoly a = num, b = o.num;
  for (long p : o.den) a = a * LaurentPoly::one_minus_t(p);
  for (long p : den) b = b * LaurentPoly::one_minus_t(p);
  return a == b;
}

RationalSeries RationalSeries::operator+(const RationalSeries& o) const {
  RationalSeries r;
  LaurentPoly a = num, b = o.num;
  for (long p : o.den) a = a * LaurentPoly::one_minus_t(p);
  for (long p : den) b = b * LaurentPoly::one_minus_t(p);
  r.num = a + b;
  r.den = den;
  r.den.insert(r.den.end(), o.den.begin(), o.den.end());
  return r.reduced();
}

RationalSeries RationalSeries::operator*(const RationalSeries& o) const {
  RationalSeries r;
  r.num = num * o.num;
  r.den = den;
  r.den.insert(r.den.end(), o.den.begin(), o.den.end());
  return r.reduced();
}

RationalSeries RationalSeries::negated() const {
  RationalSeries r = *this;
  r.num = LaurentPoly() - num;
  return r;
}

RationalSeries RationalSeries::reduced() const {
  RationalSeries r;
  r.num = num;
  if (num.is_zero()) return r;
  std::vector<long> work = den;
  std::sort(work.begin(), work.end());
  // Cancel (1 - t^p) entirely, or down to the factor (1 - t^d) for the
  // smallest d | p for which the numerator absorbs (1 - t^p)/(1 - t^d).
  while (!work.empty()) {
    long p = work.back();
    work.pop_back();
    if (auto q = r.num.divide_one_minus_t(p)) {
      r.num = *q;
      continue;
    }
    bool shrunk = false;
    for (long d = 1; d < p && !shrunk; ++d) {
      if (p % d) continue;
      if (auto q = (r.num * LaurentPoly::one_minus_t(d)).divide_one_minus_t(p)) {
        r.num = *q;
        work.insert(std::upper_bound(work.begin(), work.end(), d), d);
        shrunk = true;
      }
    }
    if (!shrunk) r.den.push_back(p);
  }
  std::sort(r.den.begin(), r.den.end());
  return r;
}

std::string RationalSeries::to_string() const {
  RationalSeries r = reduced();
  std::string n = r.num.to_string();
  if (r.den.empty()) return n;
  bool compound = r.num.coeffs().size() > 1;
  std::string d;
  for (long p : r.den) d += "(" + LaurentPoly::one_minus_t(p).to_string() + ")";
  if (r.den.size() > 1) d = "(" + d + ")";
  return (compound ? "(" + n + ")" : n) + "/" + d;
}

// ---------------------------------------------------------------- class expressions

void KClassExpr::add_term(const std::string& key, const RationalSeries& s) {
  auto it = terms_.find(key);
  RationalSeries v = it == terms_.end() ? s.reduced() : (it->second + s);
  if (v.num.is_zero())
    terms_.erase(key);
  else
    terms_[key] = v;
}

KClassExpr KClassExpr::operator+(const KClassExpr& o) const {
  KClassExpr r = *this;
  for (const auto& [k, s] : o.terms_) r.add_term(k, s);
  return r;
}

KClassExpr KClassExpr::operator-(const KClassExpr& o) const {
  KClassExpr r = *this;
  for (const auto& [k, s] : o.terms_) r.add_term(k, s.negated());
  return r;
}

KClassExpr KClassExpr::times(const RationalSeries& f) const {
  KClassExpr r;
  for (const auto& [k, s] : terms_) r.add_term(k, s * f);
  return r;
}

bool KClassExpr::equals(const KClassExpr& o) const { return (*this - o).is_zero(); }

bool KClassExpr::is_zero() const {
  for (const auto& [k, s] : terms_)
    if (!s.num.is_zero()) return false;
  return true;
}

std::vector<ClassVector> KClassExpr::expand(long lo, long hi) const {
  std::vector<ClassVector> out(hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0);
  for (const auto& [k, s] : terms_) {
    auto c = s.expand(lo, hi);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) out[i][k] = c[i];
  }
  return out;
}

std::string KClassExpr::to_string() const {
  std::vector<std::pair<RationalSeries, std::vector<std::string>>> groups;
  for (const auto& [k, s] : terms_) {
    RationalSeries r = s.reduced();
    if (r.num.is_zero()) continue;
    bool placed = false;
    for (auto& g : groups)
      if (g.first.num == r.num && g.first.den == r.den) {
        g.second.push_back(k);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({r, {k}});
  }
  if (groups.empty()) return "0";
  std::string out;
  for (const auto& [s, keys] : groups) {
    std::string ks = keys[0];
    for (std::size_t i = 1; i < keys.size(); ++i) ks += "+" + keys[i];
    if (keys.size() > 1) ks = "(" + ks + ")";
    std::string prefix;
    if (s.num == LaurentPoly::one()) {
    } else if (s.num == LaurentPoly::monomial(-1, 0)) {
      prefix = "-";
    } else if (s.num.coeffs().size() == 1) {
      prefix = s.num.to_string() + "*";
    } else {
      prefix = "(" + s.num.to_string() + ")*";
    }
    std::string term = prefix + ks;
    if (!s.den.empty()) {
      std::string d;
      for (long p : s.den) d += "(" + LaurentPoly::one_minus_t(p).to_string() + ")";
      if (s.den.size() > 1) d = "(" + d + ")";
      term += "/" + d;
    }
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

std::optional<KClassExpr> KClassExpr::fit(const std::vector<ClassVector>& data, long lo, long max_period) {
  const long L = static_cast<long>(data.size());
  if (max_period < 0) max_period = L / 2;
  std::vector<std::string> keys;
  for (const auto& v : data)
    for (const auto& [k, c] : v)
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  KClassExpr out;
  for (const auto& key : keys) {
    std::vector<long long> c(static_cast<std::size_t>(L), 0);
    for (long i = 0; i < L; ++i) {
      auto it = data[i].find(key);
      if (it != data[i].end()) c[i] = it->second;
    }
    long best_s = -1, best_p = -1;
    for (long P = 1; P <= max_period; ++P) {
      long s = 0;
      for (long i = L - P - 1; i >= 0; --i)
        if (c[i] != c[i + P]) {
          s = i + 1;
          break;
        }
      if (L - s < 2 * P) continue;
      if (best_p < 0 || s + P < best_s + best_p) {
        best_s = s;
        best_p = P;
      }
    }
    if (best_p < 0) return std::nullopt;
    RationalSeries r;
    bool periodic_zero = true;
    for (long j = 0; j < best_p; ++j)
      if (c[best_s + j]) periodic_zero = false;
    LaurentPoly prefix;
    for (long i = 0; i < best_s; ++i) prefix.add_term(lo + i, c[i]);
    if (periodic_zero) {
      r.num = prefix;
    } else {
      LaurentPoly tail;
      for (long j = 0; j < best_p; ++j) tail.add_term(lo + best_s + j, c[best_s + j]);
      r.num = prefix * LaurentPoly::one_minus_t(best_p) + tail;
      r.den = {best_p};
    }
    out.add_term(key, r);
  }
  auto check = out.expand(lo, lo + L - 1);
  for (long i = 0; i < L; ++i)
    if (check[i] != data[i]) return std::nullopt;
  return out;
}

}  // namespace gdpa
