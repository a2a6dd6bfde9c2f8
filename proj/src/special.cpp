#include "gdpa/special.hpp"

#include <algorithm>

namespace gdpa {

namespace {

ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out = a;
  for (const auto& c : b.columns()) out.append_column(c);
  return out;
}

/// x^[j] v for a homogeneous element v of the free module.
HomVec times_monomial(const AlgebraContext& ctx, const std::vector<long>& gens, const HomVec& v, long j) {
  const Ring& R = ctx.ring();
  HomVec out{v.degree + j, Vec(gens.size(), R.zero())};
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!R.is_zero(v.c[i])) out.c[i] = R.mul(v.c[i], ctx.C(v.degree + j - gens[i], j));
  return out;
}

HomVec scaled(const Ring& R, const HomVec& v, const RingElement& a) {
  HomVec out = v;
  for (auto& c : out.c) c = R.mul(c, a);
  return out;
}

HomVec unit_vector(const Ring& R, std::size_t n, std::size_t i, long degree) {
  HomVec v{degree, Vec(n, R.zero())};
  v.c[i] = R.one();
  return v;
}

/// full[k][n] is true when x^[n] lies in m^k, m = (x^[1], ..., x^[h-1]),
/// over a field. Ends with the first power vanishing on [0, nmax].
std::vector<std::vector<char>> ideal_power_table(const AlgebraContext& ctx, long h, long nmax) {
  const Ring& R = ctx.ring();
  std::vector<std::vector<char>> full{std::vector<char>(static_cast<std::size_t>(nmax + 1), 1)};
  if (h <= 1) {
    full.emplace_back(static_cast<std::size_t>(nmax + 1), 0);
    return full;
  }
  while (true) {
    const auto& prev = full.back();
    std::vector<char> row(static_cast<std::size_t>(nmax + 1), 0);
    bool any = false;
    for (long n = 1; n <= nmax; ++n) {
      for (long j = 1; j < h && j <= n && !row[n]; ++j)
        if (prev[n - j] && !R.is_zero(ctx.C(n, j))) row[n] = 1;
      any = any || row[n];
    }
    full.push_back(std::move(row));
    if (!any) return full;
  }
}

std::optional<long> first_zero_beyond(const PiSequence& pi, long bound) {
  const Ring& R = pi.ring();
  long cap = 64 * (bound + 2) + 1024;
  for (long n = bound + 1; n <= cap; ++n)
    if (R.is_zero(pi.pi(n))) return n;
  return std::nullopt;
}

}  // namespace

ModuleInvariants quotient_invariants(const Ring& ring, const std::vector<RingElement>& ideal) {
  if (ideal.empty()) return ModuleInvariants{1, {}};
  ExactMatrix m(ring, 1, ideal.size());
  for (std::size_t j = 0; j < ideal.size(); ++j) m.at(0, j) = ideal[j];
  return cokernel_invariants(m);
}

void require_special(const PiSequence& pi, const SpecialBlock& b) {
  if (b.h < 1) throw PreconditionError("block degree h must be at least 1");
  const Ring& R = pi.ring();
  RingElement pih = pi.pi(b.h);
  if (R.is_zero(pih)) return;
  if (b.ideal.empty() || !R.divides(R.ideal_generator(b.ideal), pih))
    throw PreconditionError("pi_" + std::to_string(b.h) + " = " + R.to_string(pih) + " is not in the ideal");
}

PresentedModule make_special(const AlgebraContext& ctx, const SpecialBlock& b, long shift) {
  require_special(ctx.pi(), b);
  const Ring& R = ctx.ring();
  std::vector<HomVec> rels;
  for (const auto& a : b.ideal)
    if (!R.is_zero(a)) rels.push_back(HomVec{shift, {R.normalize(a)}});
  for (long j = 1; j < b.h; ++j) rels.push_back(HomVec{shift + j, {R.one()}});
  return PresentedModule(ctx, {shift}, std::move(rels));
}

FiltrationVerdict verify_special_filtration(const PresentedModule& m, const SpecialFiltrationCertificate& cert,
                                            long horizon) {
  const AlgebraContext& ctx = m.ctx;
  const Ring& R = m.ring();
  LinearContext lc(R);
  const auto& gens = m.gen_degrees;
  FiltrationVerdict v;
  auto fail = [&](std::size_t k, std::optional<long> d, std::string why) {
    v.ok = false;
    v.block = k;
    v.witness_degree = d;
    v.reason = std::move(why);
    return v;
  };
  std::vector<HomVec> prev = m.relations;
  for (std::size_t k = 0; k < cert.blocks.size(); ++k) {
    const auto& blk = cert.blocks[k];
    const HomVec& g = blk.generator;
    if (g.c.size() != gens.size()) return fail(k, std::nullopt, "generator has the wrong number of entries");
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!R.is_zero(g.c[i]) && gens[i] > g.degree) return fail(k, g.degree, "generator is not homogeneous");
    try {
      require_special(ctx.pi(), blk.block);
    } catch (const PreconditionError& e) {
      return fail(k, std::nullopt, e.what());
    }
    // Block relations hold modulo the previous layer.
    std::vector<HomVec> must;
    for (const auto& a : blk.block.ideal) must.push_back(scaled(R, g, a));
    for (long j = 1; j < blk.block.h && g.degree + j <= horizon; ++j) must.push_back(times_monomial(ctx, gens, g, j));
    for (const auto& w : must) {
      ExactMatrix span = slice(ctx, gens, prev, w.degree);
      ExactMatrix col = slice(ctx, gens, {w}, w.degree);
      if (!lc.contains(span, col)) return fail(k, w.degree, "block relation does not hold modulo the previous layer");
    }
    std::vector<HomVec> cur = prev;
    cur.push_back(g);
    ModuleInvariants block_piece = quotient_invariants(R, blk.block.ideal);
    for (long d = m.min_degree(); d <= horizon; ++d) {
      bool on = d >= g.degree && (d - g.degree) % blk.block.h == 0;
      ModuleInvariants want = on ? block_piece : ModuleInvariants{};
      ModuleInvariants got;
      if (!basis_indices(gens, d).empty()) got = lc.subquotient(slice(ctx, gens, cur, d), slice(ctx, gens, prev, d));
      if (got != want)
        return fail(k, d, "layer piece is " + got.to_string(R) + ", block predicts " + want.to_string(R));
    }
    prev = std::move(cur);
  }
  for (long d = m.min_degree(); d <= horizon; ++d) {
    std::size_t n = basis_indices(gens, d).size();
    if (n == 0) continue;
    if (!lc.subquotient(ExactMatrix::identity(R, n), slice(ctx, gens, prev, d)).is_zero())
      return fail(cert.blocks.size(), d, "filtration does not exhaust the module");
  }
  return v;
}

SpecialResolution special_resolve_field(const PresentedModule& m, long horizon) {
  const AlgebraContext& ctx = m.ctx;
  const Ring& R = m.ring();
  if (!R.is_field()) throw UnsupportedRing("special resolutions are constructed over fields only");
  const auto& gens = m.gen_degrees;
  long lo = m.min_degree();
  long maxgen = gens.empty() ? lo : *std::max_element(gens.begin(), gens.end());
  LinearContext lc(R);
  SpecialResolution res{horizon, 0, 1, {}, m, {}, {}};
  Tri inf = ctx.pi().infinite_nonunit_locus();
  if (inf == Tri::Unknown) throw UnsupportedRing("zero locus of " + ctx.pi().describe() + " is not classified");

  if (inf == Tri::Yes) {
    // M = D^(h) (x) N for a zero h beyond every relation entry; the layers of
    // the m-adic filtration are free over D^(h).
    auto h = first_zero_beyond(ctx.pi(), std::max(m.max_entry_degree(), 1L));
    if (!h) throw PreconditionError("no zero of pi found beyond the presentation degrees");
    res.h = *h;
    long top = std::max(horizon, maxgen + *h);
    auto full = ideal_power_table(ctx, *h, top - lo);
    std::vector<HomVec> known = m.relations;
    for (std::size_t k = full.size() - 1; k-- > 0;) {
      auto span = [&](long d) {
        auto idx = basis_indices(gens, d);
        ExactMatrix s(R, idx.size(), 0);
        for (std::size_t r = 0; r < idx.size(); ++r) {
          if (!full[k][d - gens[idx[r]]]) continue;
          Vec e(idx.size(), R.zero());
          e[r] = R.one();
          s.append_column(e);
        }
        return hcat(s, slice(ctx, gens, m.relations, d));
      };
      auto layer = extract_generators(ctx, gens, span, lo, top, known);
      for (auto& g : layer) {
        res.certificate.blocks.push_back({SpecialBlock{{}, *h}, g});
        known.push_back(g);
      }
    }
    return res;
  }

  // Finitely many zeros, the last being h: D = D_{<h} (x) k[x^[h]]. The
  // relation module R is special via the layers of R cap m^k F, each a free
  // module over D/mD = D^(h).
  long h = ctx.pi().last_nonunit().value_or(1);
  res.h = h;
  res.r = 1;
  res.free_cover = gens;
  long top = std::max(horizon, m.max_presentation_degree() + h);
  auto full = ideal_power_table(ctx, h, top - lo);
  std::vector<HomVec> chosen;
  for (std::size_t k = full.size() - 1; k-- > 0;) {
    auto span = [&](long d) {
      ExactMatrix a = slice(ctx, gens, m.relations, d);
      auto idx = basis_indices(gens, d);
      std::vector<std::size_t> outside;
      for (std::size_t r = 0; r < idx.size(); ++r)
        if (!full[k][d - gens[idx[r]]]) outside.push_back(r);
      if (outside.empty() || a.cols() == 0) return a;
      ExactMatrix proj(R, outside.size(), a.cols());
      for (std::size_t r = 0; r < outside.size(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) proj.at(r, c) = a.at(outside[r], c);
      ExactMatrix ker = lc.preimage(proj, ExactMatrix(R, outside.size(), 0));
      return a * ker;
    };
    auto layer = extract_generators(ctx, gens, span, lo, top, chosen);
    chosen.insert(chosen.end(), layer.begin(), layer.end());
  }
  std::vector<long> degs;
  for (const auto& g : chosen) degs.push_back(g.degree);
  PresentedModule free_cover(ctx, gens);
  auto syz = kernel_presentation(free_cover, ModuleMap{degs, chosen}, horizon);
  res.top = PresentedModule(ctx, degs, syz.generators);
  res.top_images = chosen;
  for (std::size_t k = 0; k < chosen.size(); ++k)
    res.certificate.blocks.push_back({SpecialBlock{{}, h}, unit_vector(R, chosen.size(), k, degs[k])});
  return res;
}

ResolutionVerdict verify_special_resolution(const PresentedModule& m, const SpecialResolution& res) {
  ResolutionVerdict v;
  const AlgebraContext& ctx = m.ctx;
  LinearContext lc(m.ring());
  if (res.r == 1) {
    const auto& tg = res.top.gen_degrees;
    for (long d = m.min_degree(); d <= res.horizon; ++d) {
      ExactMatrix img = slice(ctx, m.gen_degrees, res.top_images, d);
      ExactMatrix rel = slice(ctx, m.gen_degrees, m.relations, d);
      bool exact0 = img.rows() == 0 || (lc.contains(rel, img) && lc.contains(img, rel));
      bool injective = true;
      if (!basis_indices(tg, d).empty()) {
        ExactMatrix ker = lc.preimage(img, ExactMatrix(m.ring(), img.rows(), 0));
        injective = lc.contains(slice(ctx, tg, res.top.relations, d), ker);
      }
      if (!exact0 || !injective) {
        v.exact = false;
        v.witness_degree = d;
        break;
      }
    }
  } else if (res.r != 0) {
    v.exact = false;
  }
  v.certificate = verify_special_filtration(res.top, res.certificate, res.horizon);
  return v;
}

ClassSeries h_invariant(const PresentedModule& m, long horizon, ClassMode mode) {
  ClassSeries s;
  s.lo = m.min_degree();
  s.horizon = horizon;
  for (long d = s.lo; d <= horizon; ++d) s.data.push_back(class_of(graded_piece(m, d).invariants, m.ring(), mode));
  s.fit = KClassExpr::fit(s.data, s.lo);
  return s;
}

long default_l_horizon(long max_h, const PresentedModule& m) {
  return std::max(12L, 3 * max_h + m.max_presentation_degree());
}

LSeries l_invariant(const PresentedModule& m, int max_i, long horizon) {
  const Ring& R = m.ring();
  if (!(R.kind() == RingKind::Integers || R.kind() == RingKind::PLocal || R.is_field()))
    throw UnsupportedRing("L-invariant needs Z, Z_(p) or a field, not " + R.name());
  LSeries s;
  s.lo = m.min_degree();
  s.horizon = horizon;
  s.exact_to = std::min(horizon, s.lo + max_i - 1);
  TorTable t = tor(m, max_i, s.exact_to);
  ClassVector run;
  for (long d = s.lo; d <= s.exact_to; ++d) {
    ClassVector c;
    for (int i = 0; i <= max_i; ++i) add_into(c, class_of(t.at(i, d), R, ClassMode::Plus), i % 2 == 0 ? 1 : -1);
    s.l0.push_back(c);
    add_into(run, c);
    s.data.push_back(run);
  }
  s.fit = KClassExpr::fit(s.data, s.lo);
  return s;
}

KtorsReport ktors_demo(long p, long h) {
  if (p < 2 || !is_prime(p)) throw PreconditionError("p must be prime");
  long q = h;
  while (q > 1 && q % p == 0) q /= p;
  if (h < 1 || q != 1) throw PreconditionError("h must be a power of p");
  Ring zp = Ring::p_local(p);
  AlgebraContext ctx(PiSequence::classical(zp));
  KtorsReport r;
  r.p = p;
  r.h = h;
  auto quotient = make_special(ctx, SpecialBlock{{zp.from_int(p)}, 1});
  auto special = make_special(ctx, SpecialBlock{{zp.from_int(p)}, h});
  long H = default_l_horizon(h, special);
  r.h_quotient = h_invariant(quotient, H);
  r.h_special = h_invariant(special, H);
  r.l_special = l_invariant(special, static_cast<int>(H + 1), H);
  r.expected_l.add_term("[F_" + std::to_string(p) + "]", RationalSeries{LaurentPoly::one(), {h}});
  r.h_class_zero = r.h_quotient.fit && r.h_quotient.fit->is_zero() && r.h_special.fit && r.h_special.fit->is_zero();
  r.l_matches = r.l_special.fit && r.l_special.fit->equals(r.expected_l);
  r.l_nonzero = r.l_matches && !r.expected_l.is_zero();
  if (h == 1)
    r.note = "h = 1: M(p, 1) = D/pD, so no torsion class arises";
  else
    r.note = "[M(p," + std::to_string(h) + ")] (1-t^" + std::to_string(h) +
             ")/(1-t) = [D/pD] has zero H-class while L is nonzero";
  return r;
}

}  // namespace gdpa
