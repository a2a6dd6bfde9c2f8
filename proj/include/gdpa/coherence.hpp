#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gdpa/modules.hpp"

namespace gdpa {

/// Homogeneous ideal I of D generated by a_i x^[i] for 0 <= i <= d, with a
/// chain of coefficient ideals a_0 <= a_1 <= ... <= a_d (each by generators).
struct IdealSpec {
  AlgebraContext ctx;
  std::vector<std::vector<RingElement>> chain;

  long d() const { return static_cast<long>(chain.size()) - 1; }
  /// Throws PreconditionError when the chain is not ascending.
  void validate() const;
  /// Generator of the degree-n slice: sum_{j <= min(n, d)} C(n, j) a_j.
  RingElement slice_generator(long n) const;
  /// I as a quotient of the free module on its nonzero generators.
  PresentedModule as_module(long horizon) const;
  /// Generator degrees and images (in D) of the nonzero generators.
  ModuleMap generators() const;
};

/// Order of the part of k/(g) annihilated by some a^[h](n), n <= limit, for
/// a principal ideal ring (Z/m is handled through its integer lift).
RingElement torsion_order(const PiSequence& pi, long h, const RingElement& g, long limit);

struct NReport {
  std::optional<long> N;
  /// "bounded" or "unbounded-within-limit".
  std::string verdict;
};

/// Smallest N with a^[h](N) annihilating the pi^[h]-torsion of k/a_i for all
/// 1 <= h <= 2d and 0 <= i <= 3d (a_i the true degree-i slice of I).
NReport torsion_bound_N(const IdealSpec& spec, long limit = 10000);

struct BoundReport {
  std::optional<long> N;
  long d = 0;
  long bound = 0;
  /// Top degree of Tor_1(I/T(I), k) within the horizon; nullopt if none.
  std::optional<long> computed_t1;
  bool pass = false;
  long horizon = 0;
  /// "T(I) = 0", "T(I) = I" or the reason the check was not run.
  std::string torsion;
};

/// Tor_1(M, k)_d = (R cap D_+F)_d / (D_+R)_d for M = F/R, lo <= d <= horizon.
std::vector<std::pair<long, ModuleInvariants>> tor1_by_syzygies(const PresentedModule& m, long horizon);

/// Checks t_1(I/T(I)) <= (2N+3) d on degrees up to (2N+3) d + margin.
BoundReport t1_bound_check(const IdealSpec& spec, long margin = 8);

/// Random chain over Z with classical pi: d in [1, max_d], generators in
/// [0, 60], chain closed by accumulated gcds.
IdealSpec random_ideal_spec(std::mt19937& rng, long max_d = 4);

/// Element of the tensor square of D: (i, j) -> coefficient of x^[i] y^[j].
class BigradedElement {
 public:
  explicit BigradedElement(AlgebraContext ctx) : ctx_(std::move(ctx)) {}
  static BigradedElement monomial(const AlgebraContext& ctx, long i, long j, const RingElement& c);
  const std::map<std::pair<long, long>, RingElement>& terms() const { return terms_; }
  void add(long i, long j, const RingElement& c);
  bool is_zero() const { return terms_.empty(); }
  BigradedElement operator+(const BigradedElement& o) const;
  BigradedElement operator-(const BigradedElement& o) const;
  BigradedElement operator*(const BigradedElement& o) const;

 private:
  AlgebraContext ctx_;
  std::map<std::pair<long, long>, RingElement> terms_;
};

struct CounterexampleReport {
  long p = 0, r = 0, q = 0;  // q = p^r
  bool relation_holds = false;
  /// Syzygies of (y^[1], x^[1]) in bidegree (q, q) modulo those generated
  /// from lower bidegrees.
  ModuleInvariants new_syzygies;
  bool not_generated_below = false;
};

/// Two-variable divided powers over Z_(p): the bidegree-(q, q) syzygy of
/// (y^[1], x^[1]) is not generated by lower-degree syzygies. Requires q <= 16.
CounterexampleReport bivariate_counterexample(long p, long r);

/// Number of minimal syzygy generators of (y^[1], x^[1]) over the tensor
/// square of the given algebra, for bidegrees with a, b <= max_bidegree.
long syzygy_generator_count(const AlgebraContext& ctx, long max_bidegree);

enum class A2Kind { Bounded, Inconclusive };

struct A2Verdict {
  A2Kind kind = A2Kind::Inconclusive;
  /// Smallest n with a^[h](n) annihilating the torsion of k/a.
  std::optional<long> n;
  RingElement torsion_order;
};

/// Boundedness of the pi^[h]-torsion of k/a: searches n <= limit.
A2Verdict a2_condition_check(const PiSequence& pi, const std::vector<RingElement>& ideal, long h, long limit = 10000);

}  // namespace gdpa
