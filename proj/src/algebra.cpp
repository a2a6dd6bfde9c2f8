#include "gdpa/algebra.hpp"

namespace gdpa {

// ---------------------------------------------------------------- context and elements

AlgebraContext::AlgebraContext(PiSequence pi, long admissibility_horizon) : pi_(std::move(pi)) {
  if (pi_.ring().kind() == RingKind::IntPoly && pi_.family() != PiFamily::CyclotomicSymbolic &&
      pi_.family() != PiFamily::Transform)
    throw UnsupportedRing("only the cyclotomic family is supported over Z[q]");
  AdmissibilityVerdict v = admissible_check(pi_, admissibility_horizon);
  if (!v.admissible)
    throw PreconditionError("pi-sequence is not admissible: (pi_" + std::to_string(v.n) + ", pi_" +
                            std::to_string(v.m) + ") is a proper ideal");
}

AlgebraContext AlgebraContext::unchecked(PiSequence pi) { return AlgebraContext(std::move(pi), Unchecked{}); }

GdpaElement GdpaElement::monomial(const AlgebraContext& ctx, long degree, const RingElement& c) {
  GdpaElement e(ctx);
  e.set(degree, c);
  return e;
}

RingElement GdpaElement::coeff(long degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? ctx_.ring().zero() : it->second;
}

void GdpaElement::set(long degree, const RingElement& c) {
  if (degree < 0) throw PreconditionError("negative degree in an algebra element");
  RingElement v = ctx_.ring().normalize(c);
  if (ctx_.ring().is_zero(v))
    terms_.erase(degree);
  else
    terms_[degree] = v;
}

long GdpaElement::homogeneous_degree() const {
  if (terms_.size() != 1) throw PreconditionError("element is not homogeneous and nonzero");
  return terms_.begin()->first;
}

GdpaElement GdpaElement::operator+(const GdpaElement& o) const {
  GdpaElement r = *this;
  for (const auto& [d, c] : o.terms_) r.set(d, ctx_.ring().add(r.coeff(d), c));
  return r;
}

GdpaElement GdpaElement::operator-(const GdpaElement& o) const { return *this + o.scaled(ctx_.ring().neg(ctx_.ring().one())); }

GdpaElement GdpaElement::scaled(const RingElement& c) const {
  GdpaElement r(ctx_);
  for (const auto& [d, x] : terms_) r.set(d, ctx_.ring().mul(c, x));
  return r;
}

std::string GdpaElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [d, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string cs = ctx_.ring().to_string(c);
    if (ctx_.ring().is_one(c))
      out += "x[" + std::to_string(d) + "]";
    else if (cs.find_first_of("+-", 1) != std::string::npos)
      out += "(" + cs + ")*x[" + std::to_string(d) + "]";
    else
      out += cs + "*x[" + std::to_string(d) + "]";
  }
  return out;
}

GdpaElement multiply(const GdpaElement& e1, const GdpaElement& e2) {
  const AlgebraContext& ctx = e1.context();
  if (!(ctx.ring() == e2.context().ring())) throw PreconditionError("context mismatch in multiply");
  const Ring& r = ctx.ring();
  GdpaElement out(ctx);
  for (const auto& [a, ca] : e1.terms())
    for (const auto& [b, cb] : e2.terms()) {
      RingElement k = ctx.product_coeff(a, b);
      if (r.is_zero(k)) continue;
      out.set(a + b, r.add(out.coeff(a + b), r.mul(k, r.mul(ca, cb))));
    }
  return out;
}

// ---------------------------------------------------------------- field case

bool has_base_carry(long n, long m, const DivisibleSequence& b) {
  for (std::size_t i = 1;; ++i) {
    auto t = b.term(i);
    if (!t || *t > n + m) return false;
    if (n % *t + m % *t >= *t) return true;
  }
}

GdpaElement field_multiply_by_carries(const GdpaElement& e1, const GdpaElement& e2, const DivisibleSequence& b) {
  const Ring& r = e1.context().ring();
  if (!r.is_field()) throw UnsupportedRing("carry multiplication requires a field, got " + r.name());
  b.validate();
  GdpaElement out(e1.context());
  for (const auto& [a, ca] : e1.terms())
    for (const auto& [c, cc] : e2.terms())
      if (!has_base_carry(a, c, b)) out.set(a + c, r.add(out.coeff(a + c), r.mul(ca, cc)));
  return out;
}

DivisibleSequence zero_locus(const PiSequence& pi, long limit) {
  const Ring& r = pi.ring();
  if (!r.is_field()) throw UnsupportedRing("zero locus is defined here over fields only");
  DivisibleSequence b;
  for (long n = 2; n <= limit; ++n) {
    if (!r.is_zero(pi.pi(n))) continue;
    if (n % b.terms.back() != 0)
      throw PreconditionError("zero locus is not a divisible sequence at " + std::to_string(n));
    b.terms.push_back(n);
  }
  return b;
}

std::vector<RingElement> carry_basis_scaling(const PiSequence& pi, long up_to) {
  const Ring& r = pi.ring();
  if (!r.is_field()) throw UnsupportedRing("carry basis scaling requires a field");
  std::vector<RingElement> alpha(static_cast<std::size_t>(up_to) + 1, r.one());
  for (long k = 2; k <= up_to; ++k) {
    RingElement p = pi.pi(k);
    if (!r.is_zero(p)) alpha[k] = r.inverse(p);
  }
  return associate_scaling(pi, alpha, up_to);
}

GdpaElement veronese_decompose(const GdpaElement& e, long h, long k) {
  if (h < 1 || k < 0 || k >= h) throw PreconditionError("veronese_decompose requires 0 <= k < h");
  GdpaElement out(e.context());
  for (const auto& [d, c] : e.terms())
    if (d % h == k) out.set(d, c);
  return out;
}

// ---------------------------------------------------------------- regrading and associates

std::vector<RingElement> regrade_units(const PiSequence& pi, long h, long up_to) {
  const Ring& r = pi.ring();
  if (h < 1) throw PreconditionError("regrading requires h >= 1");
  RingElement ph = pi.pi(h);
  bool radical = r.is_zero(ph) || (r.is_local() && !r.is_unit(ph));
  if (!radical)
    throw PreconditionError("pi_" + std::to_string(h) + " = " + r.to_string(ph) +
                            " is not in the Jacobson radical of " + r.name());
  std::vector<RingElement> u(static_cast<std::size_t>(up_to) + 1, r.one());
  for (long n = 1; n <= up_to; ++n) {
    RingElement v = r.one();
    for (long k = 2; k <= h * n; ++k) {
      if (h % k == 0 || k % h == 0) continue;
      long e = (h * n) / k;
      RingElement p = pi.pi(k);
      if (!r.is_one(p)) v = r.mul(v, r.pow(p, static_cast<unsigned long>(e)));
    }
    if (!r.is_unit(v)) throw PreconditionError("regrading factor u_" + std::to_string(n) + " is not a unit");
    u[n] = v;
  }
  std::map<long, RingElement> vals;
  for (long j = 2; j <= up_to; ++j) vals[j] = pi.pi(h * j);
  PiSequence regraded = PiSequence::custom(r, vals, r.one());
  for (long n = 0; n <= up_to; ++n)
    for (long m = 0; n + m <= up_to; ++m) {
      RingElement lhs = r.mul(r.mul(u[n], u[m]), pi.C(h * (n + m), h * m));
      RingElement rhs = r.mul(u[n + m], regraded.C(n + m, m));
      if (lhs != rhs)
        throw Error("regrading identity fails at (" + std::to_string(n) + ", " + std::to_string(m) + ")");
    }
  return u;
}

std::vector<RingElement> associate_scaling(const PiSequence& pi, const std::vector<RingElement>& alpha, long up_to) {
  const Ring& r = pi.ring();
  auto alpha_at = [&](long k) { return k < static_cast<long>(alpha.size()) ? alpha[k] : r.one(); };
  for (long k = 2; k <= up_to; ++k)
    if (!r.is_unit(alpha_at(k))) throw PreconditionError("alpha_" + std::to_string(k) + " is not a unit");
  std::vector<RingElement> beta(static_cast<std::size_t>(up_to) + 1, r.one());
  for (long n = 2; n <= up_to; ++n) {
    RingElement v = r.one();
    for (long k = 2; k <= n; ++k) {
      RingElement a = alpha_at(k);
      if (!r.is_one(a)) v = r.mul(v, r.pow(a, static_cast<unsigned long>(n / k)));
    }
    beta[n] = v;
  }
  std::map<long, RingElement> vals;
  for (long k = 2; k <= up_to; ++k) vals[k] = r.mul(alpha_at(k), pi.pi(k));
  PiSequence scaled = PiSequence::custom(r, vals, r.one());
  for (long n = 0; n <= up_to; ++n)
    for (long m = 0; n + m <= up_to; ++m) {
      RingElement lhs = r.mul(scaled.C(n + m, m), r.mul(beta[n], beta[m]));
      RingElement rhs = r.mul(beta[n + m], pi.C(n + m, m));
      if (lhs != rhs)
        throw Error("associate identity fails at (" + std::to_string(n) + ", " + std::to_string(m) + ")");
    }
  return beta;
}

// ---------------------------------------------------------------- structure constants

StructureConstants StructureConstants::from_pi(const PiSequence& pi, long N) {
  StructureConstants sc;
  sc.ring = pi.ring();
  sc.N = N;
  sc.c.resize(static_cast<std::size_t>(N) + 1);
  for (long n = 0; n <= N; ++n) {
    sc.c[n].resize(static_cast<std::size_t>(n) + 1);
    for (long m = 0; m <= n; ++m) sc.c[n][m] = pi.C(n, m);
  }
  return sc;
}

RecoveredPi recover_pi(const StructureConstants& sc) {
  const Ring& r = sc.ring;
  if (!r.is_local()) throw UnsupportedRing("structure-constant recovery requires a local ring, got " + r.name());
  if (static_cast<long>(sc.c.size()) != sc.N + 1) throw PreconditionError("malformed structure-constant table");
  for (long n = 0; n <= sc.N; ++n) {
    if (static_cast<long>(sc.c[n].size()) != n + 1) throw PreconditionError("malformed structure-constant table");
    if (!r.is_one(sc.at(n, 0)) || !r.is_one(sc.at(n, n)))
      throw NotAGdpaError(n, 0, "c(n,0) and c(n,n) must be 1");
  }
  std::vector<RingElement> pi(static_cast<std::size_t>(sc.N) + 1, r.one());
  if (sc.N >= 1) pi[1] = r.zero();
  DivisibleSequence locus;
  for (long n = 2; n <= sc.N; ++n) {
    bool locus_point = true;
    for (long m = 1; m < n && locus_point; ++m)
      if (r.is_unit(sc.at(n, m))) locus_point = false;
    long bstar = 1;
    for (long b : locus.terms)
      if (n % b == 0) bstar = b;
    RingElement Q = r.one();
    for (long k = 2; k < n; ++k)
      if (carry(k, n - bstar, bstar)) Q = r.mul(Q, pi[k]);
    if (!r.is_unit(Q))
      throw NotAGdpaError(n, bstar,
                          "no pi_" + std::to_string(n) + " is compatible with c(" + std::to_string(n) + ", " +
                              std::to_string(bstar) + ")");
    pi[n] = r.mul(sc.at(n, bstar), r.inverse(Q));
    if (locus_point) {
      if (n % locus.terms.back() != 0)
        throw NotAGdpaError(n, locus.terms.back(), "nonunit locus is not a divisible sequence");
      locus.terms.push_back(n);
    }
    for (long m = 1; m < n; ++m) {
      RingElement v = r.one();
      for (long k = 2; k <= n; ++k)
        if (carry(k, n - m, m)) v = r.mul(v, pi[k]);
      if (v != sc.at(n, m))
        throw NotAGdpaError(n, m,
                            "structure constant c(" + std::to_string(n) + ", " + std::to_string(m) +
                                ") is not reproduced by any pi-sequence");
    }
  }
  RecoveredPi out;
  for (auto& x : pi) out.pi.push_back(r.associate_normal(x));
  out.locus = locus;
  return out;
}

std::vector<std::pair<long, ModuleInvariants>> tor1_closed_form(const PiSequence& pi, long from, long to) {
  std::vector<std::pair<long, ModuleInvariants>> out;
  const Ring& r = pi.ring();
  for (long n = std::max(from, 1L); n <= to; ++n) {
    ExactMatrix m(r, 1, 1);
    m.at(0, 0) = pi.pi(n);
    out.emplace_back(n, cokernel_invariants(m));
  }
  return out;
}

}  // namespace gdpa
