#include "gdpa/pi.hpp"

#include <limits>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace gdpa {

// ---------------------------------------------------------------- divisible sequences

std::optional<long> DivisibleSequence::term(std::size_t i) const {
  if (i < terms.size()) return terms[i];
  if (!unbounded() || terms.empty()) return std::nullopt;
  long t = terms.back();
  for (std::size_t k = terms.size(); k <= i; ++k) {
    if (t > std::numeric_limits<long>::max() / ratio) return std::nullopt;
    t *= ratio;
  }
  return t;
}

void DivisibleSequence::validate() const {
  if (terms.empty() || terms[0] != 1) throw PreconditionError("divisible sequence must start with 1");
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i] <= terms[i - 1] || terms[i] % terms[i - 1] != 0)
      throw PreconditionError("divisible sequence step " + std::to_string(terms[i - 1]) + " -> " +
                              std::to_string(terms[i]) + " is not a proper divisibility");
  if (ratio == 1 || ratio < 0) throw PreconditionError("divisible sequence ratio must be 0 or >= 2");
}

std::vector<long> base_rep(long n, const DivisibleSequence& b) {
  if (n < 0) throw PreconditionError("base_rep requires n >= 0");
  b.validate();
  std::vector<long> places;
  for (std::size_t i = 0;; ++i) {
    auto t = b.term(i);
    if (!t || *t > n) break;
    places.push_back(*t);
  }
  std::vector<long> digits(places.size(), 0);
  long rest = n;
  for (std::size_t i = places.size(); i-- > 0;) {
    digits[i] = rest / places[i];
    rest %= places[i];
  }
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
  return digits;
}

int carry(long k, long n, long m) {
  if (k < 1) throw PreconditionError("carry requires k >= 1");
  if (n < 0 || m < 0) throw PreconditionError("carry requires nonnegative arguments");
  return static_cast<int>((n + m) / k - n / k - m / k);
}

std::vector<long> divisors(long n) {
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int mobius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  if (n > 1) mu = -mu;
  return mu;
}

IntPoly cyclotomic_polynomial(long n) {
  if (n < 1) throw PreconditionError("cyclotomic polynomial index must be >= 1");
  IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
  for (long d : divisors(n)) {
    int mu = mobius(d);
    if (mu == 0) continue;
    IntPoly f = IntPoly::monomial(1, static_cast<std::size_t>(n / d)) - IntPoly::constant(1);
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
  }
  return den.divide_exact(num);
}

namespace {

// Smallest prime factor; returns n itself for n prime.
long smallest_prime_factor(long n) {
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// p if n = p^s with s >= 1, else 0.
long prime_power_base(long n) {
  if (n < 2) return 0;
  long p = smallest_prime_factor(n);
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

RingElement evaluate_in(const Ring& r, const IntPoly& f, const RingElement& x) {
  RingElement acc = r.zero();
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = r.add(r.mul(acc, x), r.from_mpz(c[i]));
  return acc;
}

mpq_class mobius_product(const std::function<mpz_class(long)>& a, long n) {
  mpq_class v = 1;
  for (long d : divisors(n)) {
    int mu = mobius(d);
    if (mu == 0) continue;
    mpz_class x = a(n / d);
    if (x == 0) throw PreconditionError("a(" + std::to_string(n / d) + ") = 0 in a gcd-morphic sequence");
    if (mu > 0)
      v *= x;
    else
      v /= x;
  }
  v.canonicalize();
  return v;
}

}  // namespace

// ---------------------------------------------------------------- PiSequence

struct PiSequence::Impl {
  Ring ring;
  PiFamily family = PiFamily::AllOnes;
  RingElement q0;
  std::map<long, RingElement> values;
  RingElement default_value;
  std::function<mpz_class(long)> gcd_a;
  std::string label;
  std::vector<mpz_class> listed;
  long h = 1;
  std::shared_ptr<Impl> base;

  mutable std::recursive_mutex mu;
  mutable std::unordered_map<long, RingElement> pi_memo;
  mutable std::unordered_map<unsigned long long, RingElement> c_memo;
  // Indices k in [2, scanned] whose pi_k is not one, ascending.
  mutable std::vector<long> non_one;
  mutable long scanned = 1;

  RingElement compute(long n) const;
  RingElement pi(long n) const;
  void scan_to(long n) const;
};

RingElement PiSequence::Impl::compute(long n) const {
  if (n == 1) return ring.zero();
  switch (family) {
    case PiFamily::AllOnes: return ring.one();
    case PiFamily::Classical: {
      long p = prime_power_base(n);
      return p ? ring.from_int(p) : ring.one();
    }
    case PiFamily::CyclotomicSymbolic: return ring.from_poly(cyclotomic_polynomial(n));
    case PiFamily::CyclotomicAt: return evaluate_in(ring, cyclotomic_polynomial(n), q0);
    case PiFamily::Custom: {
      auto it = values.find(n);
      return it == values.end() ? default_value : it->second;
    }
    case PiFamily::GcdMorphic: {
      mpq_class v = mobius_product(gcd_a, n);
      if (v.get_den() != 1)
        throw PreconditionError("Moebius product at n = " + std::to_string(n) + " is non-integral: " + v.get_str());
      return ring.from_mpz(v.get_num());
    }
    case PiFamily::Transform: {
      RingElement v = ring.one();
      for (long d : divisors(h))
        if (std::gcd(h / d, n) == 1) v = ring.mul(v, base->pi(d * n));
      return v;
    }
  }
  return ring.one();
}

RingElement PiSequence::Impl::pi(long n) const {
  if (n < 1) throw PreconditionError("pi_n requires n >= 1");
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = pi_memo.find(n);
  if (it != pi_memo.end()) return it->second;
  RingElement v = compute(n);
  pi_memo.emplace(n, v);
  return v;
}

void PiSequence::Impl::scan_to(long n) const {
  std::lock_guard<std::recursive_mutex> lock(mu);
  for (long k = scanned + 1; k <= n; ++k)
    if (!ring.is_one(pi(k))) non_one.push_back(k);
  if (n > scanned) scanned = n;
}

PiSequence::PiSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

PiSequence PiSequence::all_ones(const Ring& ring) {
  auto i = std::make_shared<Impl>();
  i->ring = ring;
  i->family = PiFamily::AllOnes;
  return PiSequence(i);
}

PiSequence PiSequence::classical(const Ring& ring) {
  auto i = std::make_shared<Impl>();
  i->ring = ring;
  i->family = PiFamily::Classical;
  return PiSequence(i);
}

PiSequence PiSequence::cyclotomic_symbolic() {
  auto i = std::make_shared<Impl>();
  i->ring = Ring::int_poly();
  i->family = PiFamily::CyclotomicSymbolic;
  return PiSequence(i);
}

PiSequence PiSequence::cyclotomic_at(const Ring& ring, const RingElement& q0) {
  auto i = std::make_shared<Impl>();
  i->ring = ring;
  i->family = PiFamily::CyclotomicAt;
  i->q0 = ring.normalize(q0);
  return PiSequence(i);
}

PiSequence PiSequence::custom(const Ring& ring, std::map<long, RingElement> values, RingElement default_value) {
  auto i = std::make_shared<Impl>();
  i->ring = ring;
  i->family = PiFamily::Custom;
  for (auto& [k, v] : values) {
    if (k < 2) throw PreconditionError("custom pi values are indexed from 2 (pi_1 = 0 is fixed)");
    i->values[k] = ring.normalize(v);
  }
  i->default_value = ring.normalize(default_value);
  return PiSequence(i);
}

PiSequence PiSequence::gcd_morphic(const Ring& ring, std::function<mpz_class(long)> a, std::string label,
                                   std::vector<mpz_class> listed) {
  auto i = std::make_shared<Impl>();
  i->ring = ring;
  i->family = PiFamily::GcdMorphic;
  i->gcd_a = std::move(a);
  i->label = std::move(label);
  i->listed = std::move(listed);
  return PiSequence(i);
}

const Ring& PiSequence::ring() const { return impl_->ring; }
PiFamily PiSequence::family() const { return impl_->family; }

std::string PiSequence::describe() const {
  switch (impl_->family) {
    case PiFamily::AllOnes: return "all_ones";
    case PiFamily::Classical: return "classical";
    case PiFamily::CyclotomicSymbolic: return "cyclotomic";
    case PiFamily::CyclotomicAt: return "cyclotomic_at(" + impl_->ring.to_string(impl_->q0) + ")";
    case PiFamily::GcdMorphic: return "gcd_morphic(" + impl_->label + ")";
    case PiFamily::Custom: return "custom";
    case PiFamily::Transform:
      return "transform(" + PiSequence(impl_->base).describe() + "," + std::to_string(impl_->h) + ")";
  }
  return "?";
}

RingElement PiSequence::pi(long n) const { return impl_->pi(n); }

RingElement PiSequence::a(long n) const {
  if (n < 1) throw PreconditionError("a(n) requires n >= 1");
  const Ring& r = impl_->ring;
  RingElement v = r.one();
  for (long d : divisors(n))
    if (d != 1) v = r.mul(v, pi(d));
  return v;
}

RingElement PiSequence::A(long n) const {
  if (n < 0) throw PreconditionError("A(n) requires n >= 0");
  const Ring& r = impl_->ring;
  RingElement v = r.one();
  for (long k = 2; k <= n; ++k) v = r.mul(v, a(k));
  return v;
}

RingElement PiSequence::C(long n, long m) const {
  if (m < 0 || m > n) throw PreconditionError("C(n,m) requires 0 <= m <= n");
  const Ring& r = impl_->ring;
  if (m == 0 || m == n) return r.one();
  if (2 * m > n) m = n - m;
  const unsigned long long key = (static_cast<unsigned long long>(n) << 32) | static_cast<unsigned long long>(m);
  std::lock_guard<std::recursive_mutex> lock(impl_->mu);
  auto it = impl_->c_memo.find(key);
  if (it != impl_->c_memo.end()) return it->second;
  impl_->scan_to(n);
  RingElement v = r.one();
  for (long k : impl_->non_one) {
    if (k > n) break;
    if (carry(k, n - m, m)) {
      v = r.mul(v, pi(k));
      if (r.is_zero(v)) break;
    }
  }
  impl_->c_memo.emplace(key, v);
  return v;
}

PiSequence PiSequence::h_transform(long h) const {
  if (h < 1) throw PreconditionError("h-transform requires h >= 1");
  if (h == 1) return *this;
  auto i = std::make_shared<Impl>();
  i->ring = impl_->ring;
  i->family = PiFamily::Transform;
  i->h = h;
  i->base = impl_;
  return PiSequence(i);
}

PiSequence PiSequence::reduce_to(const Ring& target) const {
  auto map_elem = [&](const RingElement& x) {
    return impl_->ring.kind() == RingKind::IntPoly ? target.from_poly(x.poly) : target.from_mpq(x.q);
  };
  switch (impl_->family) {
    case PiFamily::AllOnes: return all_ones(target);
    case PiFamily::Classical: return classical(target);
    case PiFamily::CyclotomicSymbolic:
      throw UnsupportedRing("the symbolic cyclotomic sequence has no scalar reduction; use cyclotomic_at");
    case PiFamily::CyclotomicAt: return cyclotomic_at(target, map_elem(impl_->q0));
    case PiFamily::GcdMorphic: return gcd_morphic(target, impl_->gcd_a, impl_->label, impl_->listed);
    case PiFamily::Custom: {
      std::map<long, RingElement> v;
      for (const auto& [k, x] : impl_->values) v[k] = map_elem(x);
      return custom(target, std::move(v), map_elem(impl_->default_value));
    }
    case PiFamily::Transform: return PiSequence(impl_->base).reduce_to(target).h_transform(impl_->h);
  }
  return *this;
}

const RingElement& PiSequence::q0() const { return impl_->q0; }
const std::map<long, RingElement>& PiSequence::custom_values() const { return impl_->values; }
const RingElement& PiSequence::custom_default() const { return impl_->default_value; }
const std::string& PiSequence::label() const { return impl_->label; }
const std::vector<mpz_class>& PiSequence::listed_values() const { return impl_->listed; }
long PiSequence::transform_h() const { return impl_->h; }

PiSequence PiSequence::transform_base() const {
  if (impl_->family != PiFamily::Transform) throw PreconditionError("not a transformed sequence");
  return PiSequence(impl_->base);
}

Tri PiSequence::infinite_nonunit_locus() const {
  const Ring& r = impl_->ring;
  const RingKind k = r.kind();
  if (k == RingKind::IntPoly) return Tri::Unknown;
  switch (impl_->family) {
    case PiFamily::AllOnes: return Tri::No;
    case PiFamily::Classical: return k == RingKind::Rationals ? Tri::No : Tri::Yes;
    case PiFamily::Custom: {
      const RingElement& d = impl_->default_value;
      if (r.is_unit(d)) return Tri::No;
      if (r.is_zero(d)) return Tri::Yes;
      switch (k) {
        case RingKind::Integers: return Tri::No;  // (p) for p not dividing d meets only finitely many
        case RingKind::PLocal: return Tri::Yes;
        case RingKind::IntegersMod: {
          for (const auto& [p, e] : factorize(r.modulus()))
            if (d.q.get_num() % p != 0) return Tri::No;
          return Tri::Yes;
        }
        default: return Tri::Unknown;
      }
    }
    case PiFamily::CyclotomicAt:
      if (k == RingKind::PrimeField) return r.is_zero(impl_->q0) ? Tri::No : Tri::Yes;
      return Tri::Unknown;
    case PiFamily::Transform:
      return PiSequence(impl_->base).infinite_nonunit_locus() == Tri::No ? Tri::No : Tri::Unknown;
    default: return Tri::Unknown;
  }
}

std::optional<long> PiSequence::last_nonunit() const {
  if (infinite_nonunit_locus() != Tri::No)
    throw PreconditionError("last_nonunit requires a finite nonunit locus");
  const Ring& r = impl_->ring;
  long bound = 1;
  switch (impl_->family) {
    case PiFamily::AllOnes: return std::nullopt;
    case PiFamily::Classical: bound = 1; break;  // only over Q, where every pi_n is a unit
    case PiFamily::CyclotomicAt: return std::nullopt;  // Phi_n(0) = 1 for n >= 2
    case PiFamily::Custom:
      for (const auto& [n, v] : impl_->values)
        if (!r.is_unit(v)) bound = std::max(bound, n);
      if (r.kind() == RingKind::Integers) {
        // A nonunit default lies in finitely many maximal ideals but is a
        // nonunit everywhere; "last" is then not defined.
        if (!r.is_unit(impl_->default_value)) throw PreconditionError("nonunit default has no last nonunit");
      }
      break;
    case PiFamily::Transform: {
      auto b = PiSequence(impl_->base).last_nonunit();
      if (!b) return std::nullopt;
      bound = *b;
      break;
    }
    default: throw PreconditionError("last_nonunit is not available for this family");
  }
  for (long n = bound; n >= 2; --n)
    if (!r.is_unit(pi(n))) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------- admissibility

AdmissibilityVerdict admissible_check(const PiSequence& pi, long up_to) {
  AdmissibilityVerdict v;
  PiFamily f = pi.family();
  if (f == PiFamily::CyclotomicSymbolic) return v;
  if (f == PiFamily::Transform) {
    // Transforms of the symbolic cyclotomic sequence inherit admissibility.
    PiSequence cur = pi;
    while (cur.family() == PiFamily::Transform) cur = cur.transform_base();
    if (cur.family() == PiFamily::CyclotomicSymbolic) return v;
  }
  const Ring& r = pi.ring();
  if (r.kind() == RingKind::IntPoly) throw UnsupportedRing("admissibility scan is not supported over Z[q]");
  std::vector<RingElement> vals(static_cast<std::size_t>(std::max(up_to, 1L) + 1));
  std::vector<char> unit(vals.size(), 1);
  for (long n = 2; n <= up_to; ++n) {
    vals[n] = pi.pi(n);
    unit[n] = r.is_unit(vals[n]);
  }
  for (long n = 2; n <= up_to; ++n) {
    if (unit[n]) continue;
    for (long m = n + 1; m <= up_to; ++m) {
      if (unit[m] || m % n == 0) continue;
      if (!r.unit_ideal(vals[n], vals[m])) return {false, n, m};
    }
  }
  return v;
}

// ---------------------------------------------------------------- gcd-morphic

mpz_class fibonacci_number(long n) {
  mpz_class f;
  mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

PiSequence pi_from_gcd_morphic(std::function<mpz_class(long)> a, long up_to, std::string label, const Ring& ring) {
  if (up_to < 1) throw PreconditionError("gcd-morphic check requires up_to >= 1");
  std::vector<mpz_class> v(static_cast<std::size_t>(up_to) + 1);
  for (long n = 1; n <= up_to; ++n) {
    v[n] = a(n);
    if (v[n] == 0) throw NotGcdMorphicError(n, n, "a(" + std::to_string(n) + ") = 0");
  }
  if (abs(v[1]) != 1) throw NotGcdMorphicError(1, 1, "a(1) must be +-1");
  for (long n = 1; n <= up_to; ++n)
    for (long m = n + 1; m <= up_to; ++m) {
      mpz_class g = gcd(v[n], v[m]);
      if (g != abs(v[std::gcd(n, m)]))
        throw NotGcdMorphicError(n, m,
                                 "gcd(a(" + std::to_string(n) + "), a(" + std::to_string(m) + ")) = " + g.get_str() +
                                     " differs from |a(gcd)| = " + mpz_class(abs(v[std::gcd(n, m)])).get_str());
    }
  for (long n = 2; n <= up_to; ++n) {
    mpq_class q = mobius_product(a, n);
    if (q.get_den() != 1)
      throw PreconditionError("Moebius product at n = " + std::to_string(n) + " is non-integral: " + q.get_str());
  }
  return PiSequence::gcd_morphic(ring, std::move(a), std::move(label));
}

PiSequence pi_from_gcd_morphic(const std::vector<mpz_class>& values, long up_to, const Ring& ring) {
  if (values.empty()) throw PreconditionError("empty gcd-morphic sequence");
  if (up_to < 0) up_to = static_cast<long>(values.size());
  if (up_to > static_cast<long>(values.size()))
    throw PreconditionError("gcd-morphic check range exceeds the listed values");
  auto copy = values;
  auto fn = [copy](long n) -> mpz_class {
    if (n < 1 || n > static_cast<long>(copy.size()))
      throw PreconditionError("listed gcd-morphic sequence is undefined at n = " + std::to_string(n));
    return copy[static_cast<std::size_t>(n - 1)];
  };
  pi_from_gcd_morphic(fn, up_to, "listed", ring);
  return PiSequence::gcd_morphic(ring, fn, "listed", values);
}

// ---------------------------------------------------------------- b-sequences

DivisibleSequence b_sequence_for_ideal(const PiSequence& pi, const std::vector<RingElement>& ideal_generators,
                                       long limit) {
  const Ring& r = pi.ring();
  RingElement g = r.ideal_generator(ideal_generators);
  DivisibleSequence b;
  if (r.is_unit(g)) return b;
  long prev = 1;
  for (long n = 2; n <= limit; ++n) {
    if (!r.divides(g, pi.pi(n))) continue;
    if (n % prev != 0)
      throw PreconditionError("admissibility failure: pi_" + std::to_string(prev) + " and pi_" + std::to_string(n) +
                              " lie in the ideal but " + std::to_string(prev) + " does not divide " +
                              std::to_string(n));
    b.terms.push_back(n);
    prev = n;
  }
  return b;
}

}  // namespace gdpa
