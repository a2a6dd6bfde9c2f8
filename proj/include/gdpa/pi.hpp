#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdpa/ring.hpp"

namespace gdpa {

/// 1 = b_0 | b_1 | ... with each step a proper divisor. A finite prefix may
/// be extended geometrically by `ratio` (0 means the sequence is finite).
struct DivisibleSequence {
  std::vector<long> terms{1};
  long ratio = 0;

  bool unbounded() const { return ratio > 1; }
  /// Term i, extending the prefix by `ratio`; nullopt past a finite end or
  /// on overflow.
  std::optional<long> term(std::size_t i) const;
  /// Throws PreconditionError unless b_0 = 1 and every step is proper.
  void validate() const;
  bool operator==(const DivisibleSequence& o) const { return terms == o.terms && ratio == o.ratio; }
};

/// Digits d_i of n = sum d_i b_i with 0 <= d_i < b_{i+1}/b_i (the last digit
/// of a finite sequence is unbounded). Greedy; no trailing zero digits.
std::vector<long> base_rep(long n, const DivisibleSequence& b);

/// floor((n+m)/k) - floor(n/k) - floor(m/k); k >= 1.
int carry(long k, long n, long m);

std::vector<long> divisors(long n);
int mobius(long n);
IntPoly cyclotomic_polynomial(long n);

enum class PiFamily { AllOnes, Classical, CyclotomicSymbolic, CyclotomicAt, GcdMorphic, Custom, Transform };

/// Three-valued answer for structural questions that are not always decidable.
enum class Tri { Yes, No, Unknown };

/// A pi-sequence pi_1 = 0, pi_2, pi_3, ... in a coefficient ring, with
/// memoized values and structure constants. Copies share the memo; the memo
/// is internally synchronized.
class PiSequence {
 public:
  static PiSequence all_ones(const Ring& ring);
  /// pi_n = p for n = p^s, else 1.
  static PiSequence classical(const Ring& ring);
  /// pi_n = Phi_n(q) over Z[q].
  static PiSequence cyclotomic_symbolic();
  /// pi_n = Phi_n(q0) evaluated in the ring.
  static PiSequence cyclotomic_at(const Ring& ring, const RingElement& q0);
  /// Explicit values; indices absent from the map take `default_value`.
  static PiSequence custom(const Ring& ring, std::map<long, RingElement> values, RingElement default_value);
  /// pi from the Moebius product of an integer sequence a(n); values are
  /// mapped into `ring`. `label` names the sequence for serialization.
  static PiSequence gcd_morphic(const Ring& ring, std::function<mpz_class(long)> a, std::string label,
                                std::vector<mpz_class> listed = {});

  const Ring& ring() const;
  PiFamily family() const;
  /// Human-readable family name, e.g. "classical", "transform(classical,2)".
  std::string describe() const;

  RingElement pi(long n) const;
  /// prod_{d | n, d != 1} pi_d for n >= 1.
  RingElement a(long n) const;
  /// a(1) a(2) ... a(n); A(0) = 1.
  RingElement A(long n) const;
  /// prod_{2 <= k <= n} pi_k^{carry_k(n-m, m)}; never computed by division.
  RingElement C(long n, long m) const;

  /// pi^[h]_n = prod_{d | h, gcd(h/d, n) = 1} pi_{dn}.
  PiSequence h_transform(long h) const;
  /// The same rule with values mapped into another ring (e.g. residue field).
  PiSequence reduce_to(const Ring& target) const;

  // Family parameters (meaningful only for the matching family).
  const RingElement& q0() const;
  const std::map<long, RingElement>& custom_values() const;
  const RingElement& custom_default() const;
  const std::string& label() const;
  const std::vector<mpz_class>& listed_values() const;
  long transform_h() const;
  PiSequence transform_base() const;

  /// Whether every maximal ideal of the coefficient ring contains pi_n for
  /// infinitely many n. Over a field: infinitely many zeros. Over a local
  /// ring: infinitely many nonunits.
  Tri infinite_nonunit_locus() const;
  /// Largest n >= 2 with pi_n a nonunit (zero, over a field), or nullopt if
  /// there is none. Requires infinite_nonunit_locus() == No.
  std::optional<long> last_nonunit() const;

 private:
  struct Impl;
  explicit PiSequence(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

struct AdmissibilityVerdict {
  bool admissible = true;
  long n = 0, m = 0;  // first violating pair when not admissible
};

/// Scans 2 <= n < m <= up_to with n not dividing m for (pi_n, pi_m) proper.
AdmissibilityVerdict admissible_check(const PiSequence& pi, long up_to);

/// Thrown when a(gcd(n, m)) != gcd(a(n), a(m)).
class NotGcdMorphicError : public PreconditionError {
 public:
  NotGcdMorphicError(long n, long m, const std::string& what) : PreconditionError(what), n(n), m(m) {}
  long n, m;
};

/// Verifies the gcd property and integrality of the Moebius products up to
/// `up_to`, then returns the derived sequence over Z.
PiSequence pi_from_gcd_morphic(std::function<mpz_class(long)> a, long up_to, std::string label = "custom",
                               const Ring& ring = Ring::integers());
/// Same for a finite listed sequence a(1), a(2), ...; up_to defaults to its length.
PiSequence pi_from_gcd_morphic(const std::vector<mpz_class>& values, long up_to = -1,
                               const Ring& ring = Ring::integers());
mpz_class fibonacci_number(long n);

/// Terms 1 = b_0 < b_1 < ... <= limit of n with pi_n in the ideal, each the
/// smallest exceeding the previous. The unit ideal gives (1).
DivisibleSequence b_sequence_for_ideal(const PiSequence& pi, const std::vector<RingElement>& ideal_generators,
                                       long limit);

}  // namespace gdpa
