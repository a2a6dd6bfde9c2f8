#include "gdpa/modules.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace gdpa {

namespace {

ExactMatrix empty_columns(const Ring& ring, std::size_t rows) { return ExactMatrix(ring, rows, 0); }

std::vector<std::size_t> exact_degree_indices(const std::vector<long>& gens, long d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == d) out.push_back(i);
  return out;
}

std::vector<long> degrees_of(const std::vector<HomVec>& vs) {
  std::vector<long> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.degree);
  return out;
}

long min_or(const std::vector<long>& v, long fallback) {
  return v.empty() ? fallback : *std::min_element(v.begin(), v.end());
}

}  // namespace

std::vector<std::size_t> basis_indices(const std::vector<long>& gens, long d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] <= d) out.push_back(i);
  return out;
}

ExactMatrix slice(const AlgebraContext& ctx, const std::vector<long>& gens, const std::vector<HomVec>& vecs, long d) {
  const Ring& R = ctx.ring();
  auto rows = basis_indices(gens, d);
  std::size_t ncols = 0;
  for (const auto& v : vecs)
    if (v.degree <= d) ++ncols;
  ExactMatrix m(R, rows.size(), ncols);
  std::size_t j = 0;
  for (const auto& v : vecs) {
    if (v.degree > d) continue;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t i = rows[r];
      if (R.is_zero(v.c[i])) continue;
      m.at(r, j) = R.mul(v.c[i], ctx.C(d - gens[i], v.degree - gens[i]));
    }
    ++j;
  }
  return m;
}

ExactMatrix multiplication_map(const AlgebraContext& ctx, const std::vector<long>& gens, long d, long j) {
  auto src = basis_indices(gens, d);
  auto dst = basis_indices(gens, d + j);
  ExactMatrix m(ctx.ring(), dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::size_t i = src[c];
    auto r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), i) - dst.begin());
    m.at(r, c) = ctx.C(d + j - gens[i], j);
  }
  return m;
}

HomVec from_slice_coords(const Ring& ring, const std::vector<long>& gens, long d, const Vec& coords) {
  HomVec v{d, Vec(gens.size(), ring.zero())};
  auto idx = basis_indices(gens, d);
  for (std::size_t k = 0; k < idx.size(); ++k) v.c[idx[k]] = ring.normalize(coords[k]);
  return v;
}

PresentedModule::PresentedModule(AlgebraContext c, std::vector<long> gens, std::vector<HomVec> rels)
    : ctx(std::move(c)), gen_degrees(std::move(gens)), relations(std::move(rels)) {
  validate();
}

PresentedModule PresentedModule::from_elements(const AlgebraContext& ctx, const std::vector<long>& gens,
                                               const std::vector<std::vector<GdpaElement>>& columns,
                                               const std::vector<long>& relation_degrees) {
  if (columns.size() != relation_degrees.size())
    throw PreconditionError("relation count does not match relation degree count");
  const Ring& R = ctx.ring();
  std::vector<HomVec> rels;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != gens.size())
      throw PreconditionError("relation " + std::to_string(j) + " has the wrong number of entries");
    HomVec v{relation_degrees[j], Vec(gens.size(), R.zero())};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& e = columns[j][i];
      if (e.is_zero()) continue;
      long want = relation_degrees[j] - gens[i];
      if (e.terms().size() != 1 || e.terms().begin()->first != want)
        throw PreconditionError("relation " + std::to_string(j) + " entry " + std::to_string(i) +
                                " is not homogeneous of degree " + std::to_string(want));
      v.c[i] = e.terms().begin()->second;
    }
    rels.push_back(std::move(v));
  }
  return PresentedModule(ctx, gens, std::move(rels));
}

long PresentedModule::min_degree() const { return min_or(gen_degrees, 0); }

long PresentedModule::max_presentation_degree() const {
  long m = gen_degrees.empty() ? 0 : *std::max_element(gen_degrees.begin(), gen_degrees.end());
  for (const auto& r : relations) m = std::max(m, r.degree);
  return m;
}

long PresentedModule::max_entry_degree() const {
  long m = 0;
  for (const auto& r : relations)
    for (std::size_t i = 0; i < gen_degrees.size(); ++i)
      if (!ring().is_zero(r.c[i])) m = std::max(m, r.degree - gen_degrees[i]);
  return m;
}

void PresentedModule::validate() const {
  for (std::size_t j = 0; j < relations.size(); ++j) {
    const auto& r = relations[j];
    if (r.c.size() != gen_degrees.size())
      throw PreconditionError("relation " + std::to_string(j) + " has the wrong number of entries");
    for (std::size_t i = 0; i < gen_degrees.size(); ++i)
      if (!ring().is_zero(r.c[i]) && gen_degrees[i] > r.degree)
        throw PreconditionError("relation " + std::to_string(j) + " has a nonzero entry of negative degree");
  }
}

GradedPieceRealization graded_piece(const PresentedModule& m, long d) {
  GradedPieceRealization g;
  g.degree = d;
  for (std::size_t i : basis_indices(m.gen_degrees, d)) g.labels.emplace_back(i, d - m.gen_degrees[i]);
  g.presentation = slice(m.ctx, m.gen_degrees, m.relations, d);
  if (g.presentation.rows() == 0)
    g.invariants = ModuleInvariants{};
  else if (g.presentation.cols() == 0)
    g.invariants = ModuleInvariants{g.presentation.rows(), {}};
  else
    g.invariants = cokernel_invariants(g.presentation);
  return g;
}

long default_horizon(const PresentedModule& m) {
  if (const char* env = std::getenv("GDPA_HORIZON")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return v;
  }
  return 4 * (m.max_presentation_degree() + 1);
}

HilbertSeries hilbert_series(const PresentedModule& m, long horizon) {
  HilbertSeries h;
  h.lo = m.min_degree();
  h.horizon = horizon;
  std::vector<ClassVector> data;
  for (long d = h.lo; d <= horizon; ++d) {
    h.pieces.push_back(graded_piece(m, d).invariants);
    data.push_back(class_of(h.pieces.back(), m.ring(), ClassMode::Full));
  }
  h.fit = KClassExpr::fit(data, h.lo);
  return h;
}

std::vector<HomVec> extract_generators(const AlgebraContext& ctx, const std::vector<long>& gens,
                                       const std::function<ExactMatrix(long)>& span, long lo, long hi,
                                       const std::vector<HomVec>& base) {
  LinearContext lc(ctx.ring());
  std::vector<HomVec> chosen;
  std::vector<HomVec> known = base;
  for (long d = lo; d <= hi; ++d) {
    if (basis_indices(gens, d).empty()) continue;
    ExactMatrix s = span(d);
    ExactMatrix t = slice(ctx, gens, known, d);
    auto ql = lc.quotient_lifts(s, t);
    for (const auto& lift : ql.lifts) {
      HomVec v = from_slice_coords(ctx.ring(), gens, d, lift);
      chosen.push_back(v);
      known.push_back(std::move(v));
    }
  }
  return chosen;
}

std::vector<HomVec> kernel_generators(const PresentedModule& target, const ModuleMap& f, long degree_bound) {
  if (f.source.size() != f.images.size()) throw PreconditionError("map needs one image per source generator");
  for (std::size_t j = 0; j < f.images.size(); ++j) {
    if (f.images[j].degree != f.source[j] || f.images[j].c.size() != target.gen_degrees.size())
      throw PreconditionError("image " + std::to_string(j) + " is not homogeneous of its generator degree");
  }
  const AlgebraContext& ctx = target.ctx;
  LinearContext lc(ctx.ring());
  auto ker_span = [&](long d) {
    ExactMatrix a = slice(ctx, target.gen_degrees, f.images, d);
    ExactMatrix r = slice(ctx, target.gen_degrees, target.relations, d);
    return lc.preimage(a, r);
  };
  return extract_generators(ctx, f.source, ker_span, min_or(f.source, 0), degree_bound);
}

KernelPresentation kernel_presentation(const PresentedModule& target, const ModuleMap& f, long degree_bound,
                                       std::optional<long> certified_generator_bound) {
  const AlgebraContext& ctx = target.ctx;
  LinearContext lc(ctx.ring());
  auto generators = kernel_generators(target, f, degree_bound);
  auto gdeg = degrees_of(generators);
  auto syz_span = [&](long d) {
    ExactMatrix a = slice(ctx, f.source, generators, d);
    return lc.preimage(a, empty_columns(ctx.ring(), a.rows()));
  };
  auto syz = extract_generators(ctx, gdeg, syz_span, min_or(gdeg, 0), degree_bound);
  KernelPresentation out{PresentedModule(ctx, gdeg, std::move(syz)), generators, degree_bound, false};
  out.certified_complete = certified_generator_bound && degree_bound >= *certified_generator_bound;
  return out;
}

FreeResolution resolve(const PresentedModule& m, int length, long horizon) {
  FreeResolution res{m.ctx, horizon, {}};
  const AlgebraContext& ctx = m.ctx;
  LinearContext lc(ctx.ring());
  res.steps.push_back({m.gen_degrees, {}});
  if (length >= 1) {
    auto rel_span = [&](long d) { return slice(ctx, m.gen_degrees, m.relations, d); };
    auto imgs = extract_generators(ctx, m.gen_degrees, rel_span, m.min_degree(), horizon);
    res.steps.push_back({degrees_of(imgs), imgs});
  }
  for (int i = 2; i <= length; ++i) {
    const auto& prev = res.steps[i - 1];
    const auto& prev2 = res.steps[i - 2];
    if (prev.gens.empty()) {
      res.steps.push_back({});
      continue;
    }
    auto ker_span = [&](long d) {
      ExactMatrix a = slice(ctx, prev2.gens, prev.images, d);
      return lc.preimage(a, empty_columns(ctx.ring(), a.rows()));
    };
    auto imgs = extract_generators(ctx, prev.gens, ker_span, min_or(prev.gens, 0), horizon);
    auto degs = degrees_of(imgs);
    res.steps.push_back({std::move(degs), std::move(imgs)});
  }
  return res;
}

const ModuleInvariants& TorTable::at(int i, long d) const {
  auto it = entries.find({i, d});
  if (it == entries.end()) throw PreconditionError("tor entry outside the computed range");
  return it->second;
}

std::optional<long> TorTable::top_degree(int i) const {
  std::optional<long> top;
  for (const auto& [key, inv] : entries)
    if (key.first == i && !inv.is_zero()) top = key.second;
  return top;
}

TorTable tor(const PresentedModule& m, int max_i, long horizon) {
  FreeResolution res = resolve(m, max_i + 1, horizon);
  const Ring& R = m.ring();
  LinearContext lc(R);
  TorTable t;
  t.lo = m.min_degree();
  t.horizon = horizon;
  t.max_i = max_i;
  // Boundary tensored with k in degree d: coefficients between generators of degree exactly d.
  auto reduced_boundary = [&](int i, long d) {
    auto cols = exact_degree_indices(res.steps[i].gens, d);
    auto rows = exact_degree_indices(res.steps[i - 1].gens, d);
    ExactMatrix a(R, rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows.size(); ++r) a.at(r, c) = res.steps[i].images[cols[c]].c[rows[r]];
    return a;
  };
  for (int i = 0; i <= max_i; ++i) {
    for (long d = t.lo; d <= horizon; ++d) {
      std::size_t n = exact_degree_indices(res.steps[i].gens, d).size();
      if (n == 0) {
        t.entries[{i, d}] = ModuleInvariants{};
        continue;
      }
      ExactMatrix ker = i == 0 ? ExactMatrix::identity(R, n) : lc.preimage(reduced_boundary(i, d), empty_columns(R, exact_degree_indices(res.steps[i - 1].gens, d).size()));
      ExactMatrix im = reduced_boundary(i + 1, d);
      t.entries[{i, d}] = lc.subquotient(ker, im);
    }
  }
  return t;
}

PresentedModule residue_module(const AlgebraContext& ctx, long horizon) {
  std::vector<HomVec> rels;
  for (long j = 1; j <= horizon; ++j) rels.push_back(HomVec{j, {ctx.ring().one()}});
  return PresentedModule(ctx, {0}, std::move(rels));
}

std::string to_string(TorsionVerdict v) {
  switch (v) {
    case TorsionVerdict::TorsionFree:
      return "torsion-free";
    case TorsionVerdict::HasTorsion:
      return "has-torsion";
    case TorsionVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

/// Generators (over the lattice ring) of {m in F_d : x^[j] m in R_{d+j}}.
ExactMatrix annihilated_by(const PresentedModule& m, LinearContext& lc, long d, long j) {
  ExactMatrix mu = multiplication_map(m.ctx, m.gen_degrees, d, j);
  ExactMatrix r = slice(m.ctx, m.gen_degrees, m.relations, d + j);
  return lc.preimage(mu, r);
}

/// True when x^[j] is injective on M_d.
bool multiplication_injective(const PresentedModule& m, LinearContext& lc, long d, long j) {
  if (basis_indices(m.gen_degrees, d).empty()) return true;
  ExactMatrix ker = annihilated_by(m, lc, d, j);
  ExactMatrix r = slice(m.ctx, m.gen_degrees, m.relations, d);
  return lc.contains(r, ker);
}

/// Smallest n > bound with pi_n zero; nullopt if none below the search cap.
std::optional<long> zero_beyond(const PiSequence& pi, long bound) {
  const Ring& R = pi.ring();
  long cap = 64 * (bound + 2) + 1024;
  for (long n = bound + 1; n <= cap; ++n)
    if (R.is_zero(pi.pi(n))) return n;
  return std::nullopt;
}

/// Field with finitely many zeros: D is free of finite rank over k[x^[h]]
/// with h the last zero, so torsion is killed by x^[J] for one J that is a
/// multiple of h with d + J >= (max presentation degree) + h.
TorsionReport torsion_finite_locus(const PresentedModule& m) {
  TorsionReport rep;
  LinearContext lc(m.ring());
  long h = m.ctx.pi().last_nonunit().value_or(1);
  long B = m.max_presentation_degree() + h;
  rep.horizon = B;
  rep.method = "exact: free over k[x^[" + std::to_string(h) + "]]";
  auto span = [&](long d) {
    long need = std::max(1L, B - d);
    long J = ((need + h - 1) / h) * h;
    return annihilated_by(m, lc, d, J);
  };
  rep.generators = extract_generators(m.ctx, m.gen_degrees, span, m.min_degree(), B, m.relations);
  rep.verdict = rep.generators.empty() ? TorsionVerdict::TorsionFree : TorsionVerdict::HasTorsion;
  return rep;
}

/// Field with infinitely many zeros: for h a zero beyond the entry degrees
/// and beyond d - min degree, x^[h] is injective on M_d.
TorsionReport torsion_infinite_locus(const PresentedModule& m, long degree_bound) {
  TorsionReport rep;
  rep.horizon = degree_bound;
  rep.method = "injectivity of x^[h] on each degree, h in the zero locus";
  LinearContext lc(m.ring());
  long entry = m.max_entry_degree();
  for (long d = m.min_degree(); d <= degree_bound; ++d) {
    auto h = zero_beyond(m.ctx.pi(), std::max(entry, d - m.min_degree()));
    if (!h || !multiplication_injective(m, lc, d, *h)) {
      rep.verdict = TorsionVerdict::Inconclusive;
      rep.witness_degree = d;
      return rep;
    }
  }
  rep.verdict = TorsionVerdict::TorsionFree;
  return rep;
}

PresentedModule reduce_module(const PresentedModule& m, const Ring& target) {
  AlgebraContext ctx = AlgebraContext::unchecked(m.ctx.pi().reduce_to(target));
  std::vector<HomVec> rels;
  for (const auto& r : m.relations) {
    HomVec v{r.degree, {}};
    for (const auto& c : r.c) v.c.push_back(target.from_mpq(c.q));
    rels.push_back(std::move(v));
  }
  return PresentedModule(ctx, m.gen_degrees, std::move(rels));
}

}  // namespace

TorsionReport torsion_submodule(const PresentedModule& m, long degree_bound) {
  const Ring& R = m.ring();
  const PiSequence& pi = m.ctx.pi();
  Tri inf = pi.infinite_nonunit_locus();
  if (R.is_field()) {
    if (inf == Tri::No) return torsion_finite_locus(m);
    if (inf == Tri::Yes) return torsion_infinite_locus(m, degree_bound);
    TorsionReport rep;
    rep.horizon = degree_bound;
    rep.method = "zero locus undecided";
    return rep;
  }
  if (inf == Tri::Yes) {
    // Every maximal ideal contains infinitely many pi_n: torsion-free; the
    // reductions to residue fields are checked as a consistency test.
    std::vector<mpz_class> primes;
    if (R.kind() == RingKind::Integers)
      primes = {2, 3};
    else if (R.is_local() && R.local_prime() != 0)
      primes = {R.local_prime()};
    TorsionReport rep;
    rep.horizon = degree_bound;
    rep.method = "every maximal ideal contains infinitely many pi_n; residue checks at";
    for (const auto& p : primes) {
      rep.method += " " + p.get_str();
      auto sub = torsion_infinite_locus(reduce_module(m, Ring::prime_field(p)), degree_bound);
      if (sub.verdict != TorsionVerdict::TorsionFree) {
        rep.verdict = TorsionVerdict::Inconclusive;
        rep.witness_degree = sub.witness_degree;
        return rep;
      }
    }
    rep.verdict = TorsionVerdict::TorsionFree;
    return rep;
  }
  TorsionReport rep;
  rep.horizon = degree_bound;
  rep.method = "no decision procedure for this coefficient ring and sequence";
  return rep;
}

PresentedModule truncate(const PresentedModule& m, TruncationMode mode, long n, long horizon) {
  const AlgebraContext& ctx = m.ctx;
  const Ring& R = m.ring();
  LinearContext lc(R);
  if (mode == TruncationMode::AtMost) {
    std::vector<HomVec> extra = m.relations;
    for (std::size_t i = 0; i < m.gen_degrees.size(); ++i) {
      for (long d = std::max(n + 1, m.gen_degrees[i]); d <= horizon; ++d) {
        HomVec v{d, Vec(m.gen_degrees.size(), R.zero())};
        v.c[i] = R.one();
        extra.push_back(std::move(v));
      }
    }
    auto span = [&](long d) { return slice(ctx, m.gen_degrees, extra, d); };
    auto rels = extract_generators(ctx, m.gen_degrees, span, m.min_degree(), horizon);
    return PresentedModule(ctx, m.gen_degrees, std::move(rels));
  }
  // Generators of the submodule of degrees >= n, modulo the relations of M.
  auto full = [&](long d) { return ExactMatrix::identity(R, basis_indices(m.gen_degrees, d).size()); };
  auto gens = extract_generators(ctx, m.gen_degrees, full, std::max(n, m.min_degree()), horizon, m.relations);
  ModuleMap inc{degrees_of(gens), gens};
  // Relations: kernel of the free module on `gens` onto the submodule.
  return PresentedModule(ctx, inc.source, kernel_generators(m, inc, horizon));
}

}  // namespace gdpa
