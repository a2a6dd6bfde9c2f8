#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdpa/algebra.hpp"
#include "gdpa/classes.hpp"

namespace gdpa {

/// Homogeneous element of a free module with generator degrees g_i:
/// sum_i c[i] x^[degree - g_i] e_i, with c[i] = 0 whenever g_i > degree.
struct HomVec {
  long degree = 0;
  Vec c;
};

/// Indices i with g_i <= d, ascending: the basis x^[d - g_i] e_i of F_d.
std::vector<std::size_t> basis_indices(const std::vector<long>& gens, long d);
/// Degree-d slice of the submodule generated by `vecs`: rows are the basis
/// of F_d, one column per vector of degree <= d (x^[d - deg v] v).
ExactMatrix slice(const AlgebraContext& ctx, const std::vector<long>& gens, const std::vector<HomVec>& vecs, long d);
/// Matrix of multiplication by x^[j] from F_d to F_{d+j}.
ExactMatrix multiplication_map(const AlgebraContext& ctx, const std::vector<long>& gens, long d, long j);
/// HomVec of degree d from coordinates in the basis of F_d.
HomVec from_slice_coords(const Ring& ring, const std::vector<long>& gens, long d, const Vec& coords);

/// Finitely presented graded module F/R with F free on generators of the
/// given degrees and R generated by homogeneous relations.
struct PresentedModule {
  AlgebraContext ctx;
  std::vector<long> gen_degrees;
  std::vector<HomVec> relations;

  PresentedModule(AlgebraContext c, std::vector<long> gens, std::vector<HomVec> rels = {});
  /// Relations given as columns of algebra elements; entry i of a column of
  /// degree r must be homogeneous of degree r - g_i (or zero).
  static PresentedModule from_elements(const AlgebraContext& ctx, const std::vector<long>& gens,
                                       const std::vector<std::vector<GdpaElement>>& columns,
                                       const std::vector<long>& relation_degrees);

  const Ring& ring() const { return ctx.ring(); }
  long min_degree() const;
  /// Largest generator or relation degree.
  long max_presentation_degree() const;
  /// Largest degree of a nonzero relation entry (relation degree minus
  /// generator degree); 0 when there are no relations.
  long max_entry_degree() const;
  /// Throws PreconditionError when a relation is not homogeneous.
  void validate() const;
};

struct GradedPieceRealization {
  long degree = 0;
  ExactMatrix presentation;
  ModuleInvariants invariants;
  /// (generator index, monomial shift d - g_i) per row.
  std::vector<std::pair<std::size_t, long>> labels;
};

GradedPieceRealization graded_piece(const PresentedModule& m, long d);

struct HilbertSeries {
  long lo = 0, horizon = 0;
  std::vector<ModuleInvariants> pieces;  // degree lo + i
  std::optional<KClassExpr> fit;
};

/// Pieces from the lowest generator degree to the horizon, with a fit of
/// their elementary-divisor classes.
HilbertSeries hilbert_series(const PresentedModule& m, long horizon);
/// Default horizon: 4 (max presentation degree + 1), overridable by the
/// environment variable GDPA_HORIZON.
long default_horizon(const PresentedModule& m);

/// Minimal generators, degree by degree on [lo, hi], of the submodule K
/// whose degree-d slice is spanned by the columns of span(d) (coordinates in
/// the basis of F_d). Vectors in `base` (e.g. relations of an ambient
/// quotient) are treated as zero; span(d) must contain their slice.
std::vector<HomVec> extract_generators(const AlgebraContext& ctx, const std::vector<long>& gens,
                                       const std::function<ExactMatrix(long)>& span, long lo, long hi,
                                       const std::vector<HomVec>& base = {});

/// Homogeneous map from a free module (generator degrees `source`) to the
/// module `target`, sending generator j to images[j] (a HomVec of degree
/// source[j] in the free cover of target).
struct ModuleMap {
  std::vector<long> source;
  std::vector<HomVec> images;
};

struct KernelPresentation {
  /// Kernel as a module: generators are `generators`, relations their
  /// syzygies up to the bound.
  PresentedModule module;
  /// Generators as elements of the source free module.
  std::vector<HomVec> generators;
  long degree_bound = 0;
  /// True when a supplied generator-degree certificate is within the bound.
  bool certified_complete = false;
};

/// Minimal generators, to degree_bound, of the kernel of f composed with F -> M.
std::vector<HomVec> kernel_generators(const PresentedModule& target, const ModuleMap& f, long degree_bound);

/// Kernel of f composed with F -> M, degreewise to degree_bound.
KernelPresentation kernel_presentation(const PresentedModule& target, const ModuleMap& f, long degree_bound,
                                       std::optional<long> certified_generator_bound = std::nullopt);

/// Free resolution F_k -> ... -> F_0 -> M with generators extracted to a
/// horizon; steps[0] has the generators of M and no images.
struct FreeResolution {
  AlgebraContext ctx;
  long horizon = 0;
  struct Step {
    std::vector<long> gens;
    std::vector<HomVec> images;  // boundary of each generator, in the previous step
  };
  std::vector<Step> steps;
};

FreeResolution resolve(const PresentedModule& m, int length, long horizon);

struct TorTable {
  long lo = 0, horizon = 0;
  int max_i = 0;
  std::map<std::pair<int, long>, ModuleInvariants> entries;
  const ModuleInvariants& at(int i, long d) const;
  /// Top degree with a nonzero Tor_i, or nullopt if none within the horizon.
  std::optional<long> top_degree(int i) const;
};

/// Tor_i(M, k)_d for 0 <= i <= max_i and lo <= d <= horizon, as homology of
/// the resolution tensored with k. Exact on the whole range.
TorTable tor(const PresentedModule& m, int max_i, long horizon);

/// The module k = D/D_+ presented to a horizon by relations x^[j], 1 <= j <= horizon.
PresentedModule residue_module(const AlgebraContext& ctx, long horizon);

enum class TorsionVerdict { TorsionFree, HasTorsion, Inconclusive };
std::string to_string(TorsionVerdict v);

struct TorsionReport {
  TorsionVerdict verdict = TorsionVerdict::Inconclusive;
  /// Generators of the torsion submodule (elements of the free cover).
  std::vector<HomVec> generators;
  /// Degrees examined.
  long horizon = 0;
  /// How the verdict was obtained.
  std::string method;
  /// Degree where a check failed, for inconclusive verdicts.
  std::optional<long> witness_degree;
};

/// Elements m with x^[n] m = 0 for all large n.
TorsionReport torsion_submodule(const PresentedModule& m, long degree_bound);

enum class TruncationMode { AtLeast, AtMost };

/// tau_{>=n} M (submodule of degrees >= n) or tau^{<=n} M (quotient by
/// degrees > n), presented exactly up to the horizon.
PresentedModule truncate(const PresentedModule& m, TruncationMode mode, long n, long horizon);

}  // namespace gdpa
