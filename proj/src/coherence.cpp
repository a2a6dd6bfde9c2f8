#include "gdpa/coherence.hpp"

#include <algorithm>

namespace gdpa {

namespace {

bool is_composite_mod(const Ring& r) { return r.kind() == RingKind::IntegersMod; }

mpz_class lift_int(const RingElement& a) { return a.q.get_num(); }

/// lcm in a principal ideal ring; zero absorbs.
RingElement lcm(const Ring& r, const RingElement& a, const RingElement& b) {
  if (r.is_zero(a) || r.is_zero(b)) return r.zero();
  RingElement g = r.ideal_generator({a, b});
  return r.associate_normal(r.divide(r.mul(a, b), g));
}

/// Order t of the c-torsion of k/(g), i.e. that torsion is isomorphic to k/(t).
RingElement c_torsion_order(const Ring& r, const RingElement& g, const RingElement& c) {
  if (r.is_zero(g)) return r.is_zero(c) ? r.zero() : r.one();
  return r.ideal_generator({g, c});
}

/// Torsion order over a domain-like ring `work` with values c(n).
template <class F>
RingElement accumulate_torsion(const Ring& work, const RingElement& g, F&& c, long limit) {
  RingElement t = work.one();
  RingElement whole = work.associate_normal(g);
  for (long n = 1; n <= limit; ++n) {
    t = lcm(work, t, c_torsion_order(work, g, c(n)));
    if (work.associate_normal(t) == whole) break;
  }
  return t;
}

/// Pairs (ring, element) in which torsion computations are done: Z for Z/m.
struct Lifted {
  Ring work;
  RingElement g;
};

Lifted lift_generator(const Ring& r, const RingElement& g) {
  if (!is_composite_mod(r)) return {r, g};
  Ring z = Ring::integers();
  mpz_class gi;
  mpz_gcd(gi.get_mpz_t(), r.modulus().get_mpz_t(), mpz_class(lift_int(g)).get_mpz_t());
  return {z, z.from_mpz(gi)};
}

RingElement in_work(const Ring& r, const Ring& work, const RingElement& v) {
  return is_composite_mod(r) ? work.from_mpz(lift_int(v)) : v;
}

std::optional<long> smallest_killing(const PiSequence& pih, const RingElement& t, long limit) {
  const Ring& r = pih.ring();
  for (long n = 1; n <= limit; ++n)
    if (r.divides(t, pih.a(n))) return n;
  return std::nullopt;
}

/// Kernel basis of the syzygy map in bidegree (a, b) together with slot positions.
struct SyzygySlice {
  bool has_u = false, has_v = false;
  ExactMatrix kernel;  // columns in R^{has_u + has_v}
  std::size_t size() const { return static_cast<std::size_t>(has_u) + static_cast<std::size_t>(has_v); }
};

/// Syzygies (alpha x^[a] y^[b-1], beta x^[a-1] y^[b]) of (y^[1], x^[1]) by bidegree.
class SyzygyTable {
 public:
  explicit SyzygyTable(const AlgebraContext& ctx) : ctx_(ctx), lc_(ctx.ring()) {}

  const SyzygySlice& at(long a, long b) {
    auto it = cache_.find({a, b});
    if (it != cache_.end()) return it->second;
    const Ring& R = ctx_.ring();
    SyzygySlice s;
    s.has_u = b >= 1;
    s.has_v = a >= 1;
    ExactMatrix m(R, 1, s.size());
    std::size_t k = 0;
    if (s.has_u) m.at(0, k++) = ctx_.product_coeff(b - 1, 1);
    if (s.has_v) m.at(0, k++) = ctx_.product_coeff(a - 1, 1);
    s.kernel = lc_.preimage(m, ExactMatrix(R, 1, 0));
    return cache_.emplace(std::make_pair(a, b), std::move(s)).first->second;
  }

  /// Images in bidegree (a, b) of all syzygies from strictly lower bidegrees.
  ExactMatrix lower_span(long a, long b) {
    const Ring& R = ctx_.ring();
    const SyzygySlice& top = at(a, b);
    ExactMatrix out(R, top.size(), 0);
    for (long a2 = 0; a2 <= a; ++a2) {
      for (long b2 = 0; b2 <= b; ++b2) {
        if (a2 == a && b2 == b) continue;
        const SyzygySlice& low = at(a2, b2);
        long A = a - a2, B = b - b2;
        for (std::size_t j = 0; j < low.kernel.cols(); ++j) {
          Vec col(top.size(), R.zero());
          std::size_t k = 0, pos = 0;
          if (low.has_u) {
            RingElement alpha = low.kernel.at(k++, j);
            // x^[a2] y^[b2-1] * x^[A] y^[B]
            col[pos] = R.mul(alpha, R.mul(ctx_.product_coeff(a2, A), ctx_.product_coeff(b2 - 1, B)));
          }
          if (top.has_u) ++pos;
          if (low.has_v) {
            RingElement beta = low.kernel.at(k, j);
            col[pos] = R.mul(beta, R.mul(ctx_.product_coeff(a2 - 1, A), ctx_.product_coeff(b2, B)));
          }
          out.append_column(col);
        }
      }
    }
    return out;
  }

  LinearContext& lc() { return lc_; }

 private:
  AlgebraContext ctx_;
  LinearContext lc_;
  std::map<std::pair<long, long>, SyzygySlice> cache_;
};

}  // namespace

void IdealSpec::validate() const {
  if (chain.empty()) throw PreconditionError("ideal needs at least the degree-0 coefficient ideal");
  const Ring& R = ctx.ring();
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    RingElement next = R.ideal_generator(chain[j + 1]);
    for (const auto& a : chain[j])
      if (!R.divides(next, a))
        throw PreconditionError("coefficient ideals must ascend: a_" + std::to_string(j) + " is not inside a_" +
                                std::to_string(j + 1));
  }
}

RingElement IdealSpec::slice_generator(long n) const {
  const Ring& R = ctx.ring();
  std::vector<RingElement> gens;
  for (long j = 0; j <= std::min(n, d()); ++j)
    for (const auto& a : chain[j]) gens.push_back(R.mul(ctx.product_coeff(j, n - j), a));
  return R.ideal_generator(gens);
}

ModuleMap IdealSpec::generators() const {
  const Ring& R = ctx.ring();
  ModuleMap f;
  for (long j = 0; j <= d(); ++j) {
    for (const auto& a : chain[j]) {
      if (R.is_zero(a)) continue;
      f.source.push_back(j);
      f.images.push_back(HomVec{j, {a}});
    }
  }
  return f;
}

PresentedModule IdealSpec::as_module(long horizon) const {
  validate();
  ModuleMap f = generators();
  auto rels = kernel_generators(PresentedModule(ctx, {0}), f, horizon);
  return PresentedModule(ctx, f.source, std::move(rels));
}

RingElement torsion_order(const PiSequence& pi, long h, const RingElement& g, long limit) {
  const Ring& r = pi.ring();
  PiSequence pih = h == 1 ? pi : pi.h_transform(h);
  Lifted l = lift_generator(r, g);
  RingElement t = accumulate_torsion(l.work, l.g, [&](long n) { return in_work(r, l.work, pih.a(n)); }, limit);
  return is_composite_mod(r) ? r.from_mpz(lift_int(t)) : t;
}

NReport torsion_bound_N(const IdealSpec& spec, long limit) {
  spec.validate();
  const PiSequence& pi = spec.ctx.pi();
  const Ring& R = pi.ring();
  // Generator of T(k), the torsion of k itself.
  RingElement tk = torsion_order(pi, 1, R.zero(), limit);
  RingElement tau;
  if (is_composite_mod(R)) {
    // T(Z/m) is cyclic of order t, generated by m / t.
    mpz_class t = lift_int(tk);
    if (t == 0) t = R.modulus();
    tau = R.from_mpz(R.modulus() / t);
  } else {
    tau = R.is_zero(tk) ? R.one() : R.zero();
  }
  long d = spec.d();
  std::vector<PiSequence> transforms;
  std::vector<std::vector<RingElement>> orders;
  for (long h = 1; h <= 2 * d; ++h) {
    transforms.push_back(h == 1 ? pi : pi.h_transform(h));
    std::vector<RingElement> row;
    for (long i = 0; i <= 3 * d; ++i)
      row.push_back(torsion_order(pi, h, R.ideal_generator({spec.slice_generator(i), tau}), limit));
    orders.push_back(std::move(row));
  }
  for (long n = 1; n <= limit; ++n) {
    bool ok = true;
    for (std::size_t k = 0; k < transforms.size() && ok; ++k) {
      RingElement an = transforms[k].a(n);
      for (const auto& t : orders[k])
        if (!R.divides(t, an)) {
          ok = false;
          break;
        }
    }
    if (ok) return {n, "bounded"};
  }
  return {std::nullopt, "unbounded-within-limit"};
}

std::vector<std::pair<long, ModuleInvariants>> tor1_by_syzygies(const PresentedModule& m, long horizon) {
  const Ring& R = m.ring();
  if (is_composite_mod(R)) throw UnsupportedRing("Tor_1 by syzygies needs a principal ideal domain");
  LinearContext lc(R);
  std::vector<std::pair<long, ModuleInvariants>> out;
  for (long d = m.min_degree(); d <= horizon; ++d) {
    auto rows = basis_indices(m.gen_degrees, d);
    ExactMatrix rd = slice(m.ctx, m.gen_degrees, m.relations, d);
    std::vector<HomVec> lower;
    for (const auto& r : m.relations)
      if (r.degree < d) lower.push_back(r);
    ExactMatrix td = slice(m.ctx, m.gen_degrees, lower, d);
    // Coordinates on the generators of degree exactly d.
    std::vector<std::size_t> top;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (m.gen_degrees[rows[k]] == d) top.push_back(k);
    ExactMatrix proj(R, top.size(), rd.cols());
    for (std::size_t k = 0; k < top.size(); ++k)
      for (std::size_t j = 0; j < rd.cols(); ++j) proj.at(k, j) = rd.at(top[k], j);
    ExactMatrix s = rd * lc.preimage(proj, ExactMatrix(R, top.size(), 0));
    out.emplace_back(d, lc.subquotient(s, td));
  }
  return out;
}

BoundReport t1_bound_check(const IdealSpec& spec, long margin) {
  spec.validate();
  const Ring& R = spec.ctx.ring();
  if (is_composite_mod(R)) throw UnsupportedRing("t1 bound check is implemented over domains only");
  BoundReport rep;
  rep.d = spec.d();
  auto n = torsion_bound_N(spec);
  rep.N = n.N;
  if (!n.N) {
    rep.torsion = "N unbounded within the search limit";
    return rep;
  }
  rep.bound = (2 * *n.N + 3) * rep.d;
  rep.horizon = rep.bound + margin;
  for (long k = 2; k <= rep.horizon; ++k) {
    if (R.is_zero(spec.ctx.pi().pi(k))) {
      // Over a domain some a(n) vanishes, so all of I is torsion.
      rep.torsion = "T(I) = I";
      rep.pass = true;
      return rep;
    }
  }
  rep.torsion = "T(I) = 0";
  for (const auto& [d, inv] : tor1_by_syzygies(spec.as_module(rep.horizon), rep.horizon))
    if (!inv.is_zero()) rep.computed_t1 = d;
  rep.pass = !rep.computed_t1 || *rep.computed_t1 <= rep.bound;
  return rep;
}

IdealSpec random_ideal_spec(std::mt19937& rng, long max_d) {
  Ring z = Ring::integers();
  std::uniform_int_distribution<long> deg(1, std::max(1L, max_d)), coef(0, 60);
  IdealSpec spec{AlgebraContext(PiSequence::classical(z)), {}};
  long d = deg(rng);
  RingElement acc = z.zero();
  for (long j = 0; j <= d; ++j) {
    acc = z.ideal_generator({acc, z.from_int(coef(rng))});
    spec.chain.push_back({acc});
  }
  return spec;
}

BigradedElement BigradedElement::monomial(const AlgebraContext& ctx, long i, long j, const RingElement& c) {
  BigradedElement e(ctx);
  e.add(i, j, c);
  return e;
}

void BigradedElement::add(long i, long j, const RingElement& c) {
  if (i < 0 || j < 0) throw PreconditionError("bidegrees are nonnegative");
  const Ring& R = ctx_.ring();
  auto it = terms_.find({i, j});
  RingElement v = it == terms_.end() ? c : R.add(it->second, c);
  if (R.is_zero(v)) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[{i, j}] = v;
  }
}

BigradedElement BigradedElement::operator+(const BigradedElement& o) const {
  BigradedElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
  return r;
}

BigradedElement BigradedElement::operator-(const BigradedElement& o) const {
  BigradedElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, ctx_.ring().neg(c));
  return r;
}

BigradedElement BigradedElement::operator*(const BigradedElement& o) const {
  const Ring& R = ctx_.ring();
  BigradedElement r(ctx_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      RingElement coeff = R.mul(ctx_.product_coeff(k1.first, k2.first), ctx_.product_coeff(k1.second, k2.second));
      r.add(k1.first + k2.first, k1.second + k2.second, R.mul(R.mul(c1, c2), coeff));
    }
  return r;
}

CounterexampleReport bivariate_counterexample(long p, long r) {
  if (p < 2 || !is_prime(p)) throw PreconditionError("p must be prime");
  if (r < 1) throw PreconditionError("r must be at least 1");
  CounterexampleReport rep;
  rep.p = p;
  rep.r = r;
  long q = 1;
  for (long k = 0; k < r; ++k) {
    q *= p;
    if (q > 16) throw PreconditionError("bidegree p^r is limited to 16");
  }
  rep.q = q;
  Ring zp = Ring::p_local(p);
  AlgebraContext ctx(PiSequence::classical(zp));
  RingElement one = zp.one();
  auto lhs = BigradedElement::monomial(ctx, q, q - 1, one) * BigradedElement::monomial(ctx, 0, 1, one);
  auto rhs = BigradedElement::monomial(ctx, q - 1, q, one) * BigradedElement::monomial(ctx, 1, 0, one);
  rep.relation_holds = (lhs - rhs).is_zero() && !lhs.is_zero();
  SyzygyTable table(ctx);
  const SyzygySlice& top = table.at(q, q);
  rep.new_syzygies = table.lc().subquotient(top.kernel, table.lower_span(q, q));
  rep.not_generated_below = !rep.new_syzygies.is_zero();
  return rep;
}

long syzygy_generator_count(const AlgebraContext& ctx, long max_bidegree) {
  if (is_composite_mod(ctx.ring())) throw UnsupportedRing("syzygy count needs a principal ideal domain");
  SyzygyTable table(ctx);
  long count = 0;
  for (long a = 0; a <= max_bidegree; ++a)
    for (long b = 0; b <= max_bidegree; ++b) {
      const SyzygySlice& s = table.at(a, b);
      if (s.kernel.cols() == 0) continue;
      count += static_cast<long>(table.lc().quotient_lifts(s.kernel, table.lower_span(a, b)).lifts.size());
    }
  return count;
}

A2Verdict a2_condition_check(const PiSequence& pi, const std::vector<RingElement>& ideal, long h, long limit) {
  if (h < 1) throw PreconditionError("h must be at least 1");
  const Ring& R = pi.ring();
  A2Verdict v;
  v.torsion_order = torsion_order(pi, h, R.ideal_generator(ideal), limit);
  PiSequence pih = h == 1 ? pi : pi.h_transform(h);
  v.n = smallest_killing(pih, v.torsion_order, limit);
  v.kind = v.n ? A2Kind::Bounded : A2Kind::Inconclusive;
  return v;
}

}  // namespace gdpa
