#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdpa/modules.hpp"

namespace gdpa {

/// Data of M(a, h) = (D/aD)^(h): an ideal a of k (by generators; empty
/// means the zero ideal) containing pi_h.
struct SpecialBlock {
  std::vector<RingElement> ideal;
  long h = 1;
};

/// Throws PreconditionError unless pi_h lies in the ideal.
void require_special(const PiSequence& pi, const SpecialBlock& b);
/// One generator in degree `shift`, relations a e (a in the ideal) and
/// x^[j] e for 1 <= j < h.
PresentedModule make_special(const AlgebraContext& ctx, const SpecialBlock& b, long shift = 0);
/// Invariants of k/a.
ModuleInvariants quotient_invariants(const Ring& ring, const std::vector<RingElement>& ideal);

/// Filtration 0 = M_0 < M_1 < ... < M_n = M with M_k generated by the first
/// k block generators; M_k / M_{k-1} is isomorphic to M(a_k, h_k) shifted to
/// the degree of the k-th generator.
struct SpecialFiltrationCertificate {
  struct Block {
    SpecialBlock block;
    HomVec generator;  // element of the free cover of M
  };
  std::vector<Block> blocks;
};

struct FiltrationVerdict {
  bool ok = true;
  std::optional<std::size_t> block;
  std::optional<long> witness_degree;
  std::string reason;
};

/// Checks, up to the horizon, that each block generator satisfies its
/// block relations modulo the previous layer, that each quotient has the
/// pieces of its block, and that the generators exhaust M.
FiltrationVerdict verify_special_filtration(const PresentedModule& m, const SpecialFiltrationCertificate& cert,
                                            long horizon);

/// 0 -> P_r -> F_{r-1} -> ... -> F_0 -> M -> 0 with P_r special (r <= 1 here).
struct SpecialResolution {
  long horizon = 0;
  int r = 0;
  /// Degree h of the blocks.
  long h = 1;
  /// F_0 generator degrees (equal to those of M) when r = 1.
  std::vector<long> free_cover;
  /// P_r; for r = 1 its generators map to `top_images` in F_0.
  PresentedModule top;
  std::vector<HomVec> top_images;
  SpecialFiltrationCertificate certificate;
};

/// Special resolution of a module over a field. Infinitely many zeros: M
/// itself is special (r = 0). Finitely many: the relation module is
/// special (r <= 1).
SpecialResolution special_resolve_field(const PresentedModule& m, long horizon);

struct ResolutionVerdict {
  bool exact = true;
  FiltrationVerdict certificate;
  std::optional<long> witness_degree;
  bool ok() const { return exact && certificate.ok; }
};

ResolutionVerdict verify_special_resolution(const PresentedModule& m, const SpecialResolution& res);

/// Degreewise classes of a module with an eventually periodic fit.
struct ClassSeries {
  long lo = 0, horizon = 0;
  std::vector<ClassVector> data;  // degree lo + i
  std::optional<KClassExpr> fit;
};

/// Hilbert data as classes: rank over Z and Z_(p), dimension over fields
/// (ClassMode::Rank), or the full elementary-divisor decomposition.
ClassSeries h_invariant(const PresentedModule& m, long horizon, ClassMode mode = ClassMode::Rank);

struct LSeries {
  long lo = 0, horizon = 0;
  /// Degrees up to which every contributing Tor_i was computed.
  long exact_to = 0;
  /// Alternating sums of [Tor_i]_+ per degree.
  std::vector<ClassVector> l0;
  /// Partial sums of l0, i.e. l0 / (1 - t).
  std::vector<ClassVector> data;
  std::optional<KClassExpr> fit;
};

/// L-invariant over Z or Z_(p): Tor_i(M, k)_d vanishes for i > d - lo + 1,
/// so degrees up to lo + max_i - 1 are exact.
LSeries l_invariant(const PresentedModule& m, int max_i, long horizon);
/// 3 (largest h) + max presentation degree, at least 12.
long default_l_horizon(long max_h, const PresentedModule& m);

struct KtorsReport {
  long p = 0, h = 0;
  /// Rank class series of D/pD and its fit (expected 0).
  ClassSeries h_quotient;
  /// Rank class series of M(p, h).
  ClassSeries h_special;
  LSeries l_special;
  /// [F_p]_+/(1 - t^h).
  KClassExpr expected_l;
  bool h_class_zero = false;
  bool l_matches = false;
  bool l_nonzero = false;
  std::string note;
};

/// Torsion-class example over Z_(p) with classical pi: M(p, h) has zero
/// H-class up to the (1 - t^h)/(1 - t) factor but a nonzero L-invariant.
/// Requires h to be a power of p.
KtorsReport ktors_demo(long p, long h);

}  // namespace gdpa
