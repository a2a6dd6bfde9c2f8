// Acceptance harness: one pass/fail line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "gdpa/coherence.hpp"
#include "gdpa/special.hpp"

using namespace gdpa;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first failure; later failures only count.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failed_;
    if (first_.empty()) first_ = what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << " [" << checks_ - failed_ << "/" << checks_ << " checks]";
    if (failed_) s << " first failure: " << first_;
    return {failed_ == 0, s.str()};
  }

 private:
  long checks_ = 0, failed_ = 0;
  std::string first_;
};

AlgebraContext classical(const Ring& r) { return AlgebraContext(PiSequence::classical(r)); }

HomVec hv(const Ring& r, long degree, const std::vector<long>& c) {
  HomVec v{degree, {}};
  for (long x : c) v.c.push_back(r.from_int(x));
  return v;
}

/// Up to 3 generators and 3 relations, degrees at most 6.
PresentedModule random_module(const AlgebraContext& ctx, std::mt19937& rng) {
  const Ring& R = ctx.ring();
  std::uniform_int_distribution<long> ngen(1, 3), nrel(0, 3), deg(0, 6), coef(0, 6);
  std::vector<long> gens;
  for (long i = ngen(rng); i > 0; --i) gens.push_back(deg(rng));
  std::vector<HomVec> rels;
  for (long j = nrel(rng); j > 0; --j) {
    long d = deg(rng);
    HomVec v{d, {}};
    for (long g : gens) v.c.push_back(g <= d ? R.from_int(coef(rng)) : R.zero());
    rels.push_back(std::move(v));
  }
  return PresentedModule(ctx, gens, rels);
}

PiSequence random_never_zero(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> v(1, 12), sign(0, 1);
  Ring z = Ring::integers();
  std::map<long, RingElement> vals;
  for (long n = 2; n <= 130; ++n) vals[n] = z.from_int(v(rng) * (sign(rng) ? 1 : -1));
  return PiSequence::custom(z, vals, z.one());
}

Outcome classical_binomials() {
  Tally t;
  Ring z = Ring::integers();
  PiSequence pi = PiSequence::classical(z);
  for (long n = 0; n <= 60; ++n)
    for (long m = 0; m <= n; ++m) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), n, m);
      t.check(pi.C(n, m) == z.from_mpz(b), "C(" + std::to_string(n) + "," + std::to_string(m) + ")");
    }
  return t.outcome("C(n,m) = binomial(n,m) for m <= n <= 60");
}

Outcome q_binomials() {
  Tally t;
  PiSequence pi = PiSequence::cyclotomic_symbolic();
  const long N = 24;
  std::vector<std::vector<IntPoly>> oracle(N + 1);
  for (long n = 0; n <= N; ++n) {
    oracle[n].resize(n + 1);
    oracle[n][0] = oracle[n][n] = IntPoly::constant(1);
    for (long m = 1; m < n; ++m) oracle[n][m] = oracle[n - 1][m - 1] + IntPoly::monomial(1, m) * oracle[n - 1][m];
  }
  for (long n = 0; n <= N; ++n)
    for (long m = 0; m <= n; ++m)
      t.check(pi.C(n, m).poly == oracle[n][m], "[" + std::to_string(n) + "," + std::to_string(m) + "]_q");
  return t.outcome("Gaussian binomials from q-Pascal, n <= 24");
}

Outcome cocycle_identity() {
  Tally t;
  Ring z = Ring::integers();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    PiSequence pi = random_never_zero(rng);
    for (long n = 0; n <= 24; ++n)
      for (long m = 0; m <= n; ++m) {
        t.check(z.mul(z.mul(pi.C(n, m), pi.A(n - m)), pi.A(m)) == pi.A(n), "factorial identity");
        for (long l = 0; l <= m; ++l)
          t.check(z.mul(pi.C(n, m), pi.C(m, l)) == z.mul(pi.C(n - l, m - l), pi.C(n, l)),
                  "cocycle at (" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(l) + ")");
      }
  }
  return t.outcome("200 random never-zero sequences, l <= m <= n <= 24");
}

Outcome transform_laws() {
  Tally t;
  Ring z = Ring::integers();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    PiSequence pi = random_never_zero(rng);
    for (long h = 1; h <= 6; ++h) {
      PiSequence ph = pi.h_transform(h);
      for (long n = 1; n <= 20; ++n) t.check(z.mul(ph.a(n), pi.a(h)) == pi.a(h * n), "a^[h](n) a(h) = a(hn)");
      for (long h2 = 1; h2 <= 6; ++h2) {
        PiSequence twice = ph.h_transform(h2), once = pi.h_transform(h * h2);
        for (long n = 1; n <= 20; ++n) t.check(twice.a(n) == once.a(n), "double transform");
      }
    }
  }
  return t.outcome("transform laws for h, h' <= 6, n <= 20");
}

Outcome fibonomial_bridge() {
  Tally t;
  PiSequence fib = pi_from_gcd_morphic([](long n) { return fibonacci_number(n); }, 60, "fibonacci");
  const std::vector<long> prefix{1, 2, 3, 5, 4, 13};
  for (long n = 2; n <= 7; ++n) t.check(fib.pi(n).q == prefix[n - 2], "prefix at " + std::to_string(n));
  for (long n = 2; n <= 60; ++n) {
    mpq_class moebius = 1;
    for (long d : divisors(n)) {
      int mu = mobius(n / d);
      if (mu == 1) moebius *= mpq_class(fibonacci_number(d));
      if (mu == -1) moebius /= mpq_class(fibonacci_number(d));
    }
    t.check(fib.pi(n).q == moebius, "Moebius oracle at " + std::to_string(n));
  }
  for (long n = 1; n <= 30; ++n)
    for (long m = 1; m <= 30; ++m)
      t.check(gcd(fibonacci_number(n), fibonacci_number(m)) == fibonacci_number(std::gcd(n, m)), "gcd property");
  t.check(admissible_check(fib, 60).admissible, "admissible to 60");
  return t.outcome("Fibonacci prefix, Moebius oracle, gcd property, admissibility");
}

Outcome tor1_closed_forms() {
  Tally t;
  const long N = 32;
  for (const Ring& r : {Ring::prime_field(2), Ring::prime_field(3), Ring::integers_mod(4), Ring::integers()}) {
    auto ctx = classical(r);
    auto table = tor(residue_module(ctx, N), 1, N);
    for (const auto& [n, inv] : tor1_closed_form(ctx.pi(), 1, N))
      t.check(table.at(1, n) == inv, r.name() + " degree " + std::to_string(n));
  }
  Ring z = Ring::integers();
  PresentedModule induced(classical(z), {0, 0, 1, 1},
                          {hv(z, 0, {2, 4, 0, 0}), hv(z, 0, {0, 6, 0, 0}), hv(z, 1, {0, 0, 3, 0})});
  auto ti = tor(induced, 3, 12);
  for (int i = 1; i <= 3; ++i) t.check(!ti.top_degree(i), "induced module over Z, i = " + std::to_string(i));
  Ring f = Ring::prime_field(3);
  auto t2 = tor(PresentedModule(classical(f), {0, 2}, {hv(f, 2, {0, 1})}), 3, 15);
  for (int i = 1; i <= 3; ++i) t.check(!t2.top_degree(i), "induced module over GF(3), i = " + std::to_string(i));
  return t.outcome("Tor_1(k,k)_n = k/(pi_n) to n = 32; induced modules have Tor_{1..3} = 0");
}

Outcome hilbert_fits() {
  Tally t;
  Ring z = Ring::integers();
  auto ctx = classical(z);
  const std::vector<std::pair<long, long>> cases{{1, 2}, {2, 2}, {3, 3}, {4, 2}, {8, 2}};
  const long H = 40;
  std::map<long, KClassExpr> fits;
  for (const auto& [h, p] : cases) {
    auto m = make_special(ctx, SpecialBlock{{z.from_int(p)}, h});
    auto hs = h_invariant(m, H, ClassMode::Full);
    KClassExpr expected;
    expected.add_term("[Z/" + std::to_string(p) + "]", RationalSeries{LaurentPoly::one(), {h}});
    bool ok = hs.fit && hs.fit->equals(expected);
    t.check(ok, "fit of M((" + std::to_string(p) + ")," + std::to_string(h) + ")");
    if (hs.fit) fits[h] = *hs.fit;
  }
  for (const auto& [h, p] : cases) {
    for (const auto& [k, q] : cases) {
      if (h % k != 0 || p != q || !fits.count(h) || !fits.count(k)) continue;
      RationalSeries factor{LaurentPoly::one_minus_t(h), {k}};
      t.check(fits[h].times(factor).equals(fits[k]), "relation h = " + std::to_string(h) + ", k = " + std::to_string(k));
    }
  }
  return t.outcome("[k/a]/(1-t^h) for h in {1,2,3,4,8}; (1-t^h)/(1-t^k) relation for k | h");
}

Outcome degree_bound() {
  Tally t;
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    auto spec = random_ideal_spec(rng, 4);
    auto rep = t1_bound_check(spec);
    t.check(rep.N.has_value() && rep.pass, "ideal #" + std::to_string(trial));
  }
  return t.outcome("50 random ideals over Z, d <= 4, t1(I/T(I)) <= (2N+3)d");
}

PiSequence random_gf5_with_zeros(std::mt19937_64& rng, long N) {
  Ring f = Ring::prime_field(5);
  std::uniform_int_distribution<long> nz(1, 4), step(2, 4);
  std::map<long, RingElement> v;
  for (long n = 2; n <= N; ++n) v[n] = f.from_int(nz(rng));
  for (long b = step(rng); b <= N; b *= step(rng)) v[b] = f.zero();
  return PiSequence::custom(f, v, f.one());
}

Outcome structure_recovery() {
  Tally t;
  for (long p : {2L, 3L}) {
    Ring r = Ring::p_local(p);
    PiSequence cl = PiSequence::classical(r);
    auto rec = recover_pi(StructureConstants::from_pi(cl, 16));
    for (long n = 2; n <= 16; ++n)
      t.check(r.divides(rec.pi[n], cl.pi(n)) && r.divides(cl.pi(n), rec.pi[n]), r.name() + " at " + std::to_string(n));
  }
  Ring f5 = Ring::prime_field(5);
  std::mt19937_64 rng(17);
  int with_zero = 0;
  for (int trial = 0; trial < 5; ++trial) {
    PiSequence s = random_gf5_with_zeros(rng, 16);
    t.check(admissible_check(s, 16).admissible, "random GF(5) sequence is admissible");
    auto rec = recover_pi(StructureConstants::from_pi(s, 16));
    bool any_zero = false;
    for (long n = 2; n <= 16; ++n) {
      any_zero = any_zero || f5.is_zero(s.pi(n));
      t.check(f5.is_zero(rec.pi[n]) == f5.is_zero(s.pi(n)), "GF(5) sequence at " + std::to_string(n));
    }
    with_zero += any_zero;
  }
  t.check(with_zero == 5, "every GF(5) sequence has a zero entry");
  return t.outcome("pi -> C-table (N = 16) -> recover_pi over Z_(2), Z_(3) and 5 GF(5) sequences");
}

Outcome field_special_resolutions() {
  Tally t;
  std::mt19937 rng(10);
  for (long p : {2L, 3L}) {
    auto ctx = classical(Ring::prime_field(p));
    for (int trial = 0; trial < 20; ++trial) {
      auto m = random_module(ctx, rng);
      auto res = special_resolve_field(m, 40);
      auto v = verify_special_resolution(m, res);
      t.check(res.r <= 1 && v.ok(), "GF(" + std::to_string(p) + ") module #" + std::to_string(trial) + ": " +
                                        v.certificate.reason);
    }
  }
  return t.outcome("20 random modules each over GF(2) and GF(3), certified to degree 40, r <= 1");
}

Outcome counterexample() {
  Tally t;
  for (long r : {1L, 2L, 3L}) {
    auto rep = bivariate_counterexample(2, r);
    t.check(rep.relation_holds, "relation at r = " + std::to_string(r));
    t.check(rep.not_generated_below, "new syzygy at r = " + std::to_string(r));
  }
  long koszul = syzygy_generator_count(AlgebraContext(PiSequence::all_ones(Ring::rationals())), 6);
  t.check(koszul == 1, "Koszul count " + std::to_string(koszul));
  return t.outcome("p = 2, r in {1,2,3}; one Koszul generator over Q");
}

Outcome torsion_class_demo() {
  Tally t;
  for (long p : {2L, 3L}) {
    auto r = ktors_demo(p, p);
    t.check(r.h_class_zero, "H-class of D/pD vanishes, p = " + std::to_string(p));
    t.check(r.l_matches && r.l_nonzero, "L = [F_p]/(1-t^p), p = " + std::to_string(p));
  }
  return t.outcome("L of M(p,p) is [F_p]/(1-t^p) != 0 while [D/pD] has zero H-class, p in {2,3}");
}

Outcome torsion_dichotomy() {
  Tally t;
  std::mt19937 rng(13);
  auto ctx = classical(Ring::p_local(2));
  for (int trial = 0; trial < 20; ++trial) {
    auto rep = torsion_submodule(random_module(ctx, rng), 40);
    t.check(rep.verdict == TorsionVerdict::TorsionFree, "Z_(2) module #" + std::to_string(trial));
  }
  Ring q = Ring::rationals();
  auto poly = AlgebraContext(PiSequence::all_ones(q));
  auto rep = torsion_submodule(PresentedModule(poly, {0}, {hv(q, 1, {1})}), 40);
  t.check(rep.verdict == TorsionVerdict::HasTorsion, "k[x]/(x) over Q");
  return t.outcome("20 random Z_(2) modules torsion-free to degree 40; k[x]/(x) has torsion");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "classical binomials", classical_binomials, 2.0},
      {2, "q-binomials", q_binomials, 0},
      {3, "cocycle and factorial identities", cocycle_identity, 0},
      {4, "transform laws", transform_laws, 0},
      {5, "Fibonacci bridge", fibonomial_bridge, 0},
      {6, "Tor_1 closed form", tor1_closed_forms, 0},
      {7, "Hilbert fits", hilbert_fits, 0},
      {8, "degree bound", degree_bound, 300.0},
      {9, "structure-constant recovery", structure_recovery, 0},
      {10, "field special resolutions", field_special_resolutions, 0},
      {11, "bivariate counterexample", counterexample, 0},
      {12, "torsion-class example", torsion_class_demo, 0},
      {13, "torsion dichotomy", torsion_dichotomy, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " exceeded the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    failures += !o.pass;
    std::printf("%s  %2d  %-34s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
