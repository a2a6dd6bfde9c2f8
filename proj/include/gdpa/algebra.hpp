#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gdpa/matrix.hpp"
#include "gdpa/pi.hpp"

namespace gdpa {

/// The algebra D with basis x^[0], x^[1], ... and x^[a] x^[b] = C(a+b, b) x^[a+b].
class AlgebraContext {
 public:
  /// Verifies admissibility of pi up to `admissibility_horizon` (skipped for
  /// families admissible by construction); throws PreconditionError otherwise.
  explicit AlgebraContext(PiSequence pi, long admissibility_horizon = 40);
  /// No admissibility scan.
  static AlgebraContext unchecked(PiSequence pi);

  const Ring& ring() const { return pi_.ring(); }
  const PiSequence& pi() const { return pi_; }
  RingElement C(long n, long m) const { return pi_.C(n, m); }
  /// Coefficient of x^[a] x^[b] on x^[a+b].
  RingElement product_coeff(long a, long b) const { return pi_.C(a + b, b); }

 private:
  struct Unchecked {};
  AlgebraContext(PiSequence pi, Unchecked) : pi_(std::move(pi)) {}
  PiSequence pi_;
};

/// Finite sum of c_n x^[n]; no stored zero coefficients.
class GdpaElement {
 public:
  explicit GdpaElement(AlgebraContext ctx) : ctx_(std::move(ctx)) {}
  static GdpaElement monomial(const AlgebraContext& ctx, long degree, const RingElement& c);
  static GdpaElement one(const AlgebraContext& ctx) { return monomial(ctx, 0, ctx.ring().one()); }

  const AlgebraContext& context() const { return ctx_; }
  const std::map<long, RingElement>& terms() const { return terms_; }
  RingElement coeff(long degree) const;
  void set(long degree, const RingElement& c);
  bool is_zero() const { return terms_.empty(); }
  /// Degree of a homogeneous nonzero element; throws when not homogeneous.
  long homogeneous_degree() const;

  GdpaElement operator+(const GdpaElement& o) const;
  GdpaElement operator-(const GdpaElement& o) const;
  GdpaElement scaled(const RingElement& c) const;
  bool operator==(const GdpaElement& o) const { return terms_ == o.terms_; }
  /// E.g. "2*x[2] + x[3]"; "0" for zero.
  std::string to_string() const;

 private:
  AlgebraContext ctx_;
  std::map<long, RingElement> terms_;
};

GdpaElement multiply(const GdpaElement& e1, const GdpaElement& e2);

/// Multiplication of the carry algebra over a field: x^[n] x^[m] = x^[n+m]
/// when adding n and m in base b produces no carry, else 0.
GdpaElement field_multiply_by_carries(const GdpaElement& e1, const GdpaElement& e2, const DivisibleSequence& b);
/// True when adding n and m in base b carries into some place.
bool has_base_carry(long n, long m, const DivisibleSequence& b);
/// Zero locus (1, b_1, b_2, ...) of pi up to `limit` over a field.
DivisibleSequence zero_locus(const PiSequence& pi, long limit);
/// beta_0..beta_N with x^[n] -> beta_n x^[n] an isomorphism from D onto the
/// carry algebra of its zero locus (field case, alpha_k = pi_k^{-1} off the
/// zero locus).
std::vector<RingElement> carry_basis_scaling(const PiSequence& pi, long up_to);

/// Terms of e with degree congruent to k mod h.
GdpaElement veronese_decompose(const GdpaElement& e, long h, long k);

/// u_0..u_{up_to} with y^[n] -> u_n x^[hn] intertwining the algebra with
/// pi'_j = pi_{hj} and the Veronese subalgebra of multiples of h. Each u_n
/// and the intertwining identity are verified.
std::vector<RingElement> regrade_units(const PiSequence& pi, long h, long up_to);

/// beta_n = prod_{k=2}^n alpha_k^{floor(n/k)} for n = 0..up_to (alpha indexed
/// by k, entries 0 and 1 ignored). Verifies C'(n+m,m) beta_n beta_m =
/// beta_{n+m} C(n+m,m) with pi'_k = alpha_k pi_k.
std::vector<RingElement> associate_scaling(const PiSequence& pi, const std::vector<RingElement>& alpha, long up_to);

/// Table c(n, m) for 0 <= m <= n <= N.
struct StructureConstants {
  Ring ring;
  long N = 0;
  std::vector<std::vector<RingElement>> c;

  static StructureConstants from_pi(const PiSequence& pi, long N);
  const RingElement& at(long n, long m) const { return c[n][m]; }
};

class NotAGdpaError : public PreconditionError {
 public:
  NotAGdpaError(long n, long m, const std::string& what) : PreconditionError(what), n(n), m(m) {}
  long n, m;
};

struct RecoveredPi {
  /// pi[n] for 0 <= n <= N as canonical associates; pi[0] unused, pi[1] = 0.
  std::vector<RingElement> pi;
  /// Discovered nonunit locus 1 = b_0 | b_1 | ...
  DivisibleSequence locus;
};

/// Reconstructs pi up to units from structure constants over a local ring.
RecoveredPi recover_pi(const StructureConstants& sc);

/// (n, k/(pi_n)) for n in [from, to].
std::vector<std::pair<long, ModuleInvariants>> tor1_closed_form(const PiSequence& pi, long from, long to);

}  // namespace gdpa
