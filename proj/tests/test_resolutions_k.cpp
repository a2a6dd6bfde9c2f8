#include <doctest.h>

#include <random>

#include "gdpa/special.hpp"

using namespace gdpa;

namespace {

AlgebraContext classical(const Ring& r) { return AlgebraContext(PiSequence::classical(r)); }

HomVec hv(const Ring& r, long degree, const std::vector<long>& c) {
  HomVec v{degree, {}};
  for (long x : c) v.c.push_back(r.from_int(x));
  return v;
}

/// Random module with up to 3 generators and 3 relations in degrees <= 6.
PresentedModule random_module(const AlgebraContext& ctx, std::mt19937& rng) {
  const Ring& R = ctx.ring();
  std::uniform_int_distribution<long> ngen(1, 3), nrel(0, 3), deg(0, 6), coef(0, 6);
  std::vector<long> gens;
  for (long i = ngen(rng); i > 0; --i) gens.push_back(deg(rng) / 2);
  std::vector<HomVec> rels;
  for (long j = nrel(rng); j > 0; --j) {
    long d = deg(rng);
    HomVec v{d, {}};
    for (long g : gens) v.c.push_back(g <= d ? R.from_int(coef(rng)) : R.zero());
    rels.push_back(std::move(v));
  }
  return PresentedModule(ctx, gens, rels);
}

}  // namespace

TEST_CASE("principal special modules") {
  Ring z = Ring::integers();
  auto ctx = classical(z);
  auto d2 = make_special(ctx, SpecialBlock{{z.from_int(2)}, 1});
  PresentedModule quotient(ctx, {0}, {hv(z, 0, {2})});
  for (long d = 0; d <= 20; ++d) CHECK(graded_piece(d2, d).invariants == graded_piece(quotient, d).invariants);
  auto dd = make_special(ctx, SpecialBlock{{z.zero()}, 1});
  for (long d = 0; d <= 20; ++d) CHECK(graded_piece(dd, d).invariants == ModuleInvariants{1, {}});
  for (long p : {2L, 3L, 5L}) {
    for (long h = p; h <= 25; h *= p) {
      auto m = make_special(ctx, SpecialBlock{{z.from_int(p)}, h});
      for (long d = 0; d <= 30; ++d) {
        CAPTURE(h);
        CAPTURE(d);
        CHECK(graded_piece(m, d).invariants ==
              (d % h == 0 ? ModuleInvariants{0, {z.from_int(p)}} : ModuleInvariants{}));
      }
    }
  }
  CHECK_THROWS_AS(make_special(ctx, SpecialBlock{{z.from_int(2)}, 3}), PreconditionError);
  CHECK_THROWS_AS(make_special(ctx, SpecialBlock{{}, 2}), PreconditionError);
}

TEST_CASE("Tor of M(a, h) is annihilated by pi_h") {
  for (long p : {2L, 3L}) {
    Ring zp = Ring::p_local(p);
    auto ctx = classical(zp);
    auto m = make_special(ctx, SpecialBlock{{zp.from_int(p)}, p});
    auto t = tor(m, 3, 12);
    for (const auto& [key, inv] : t.entries) {
      CHECK(inv.free_rank == 0);
      for (const auto& f : inv.torsion_factors) CHECK(zp.valuation(f, p) >= 1);
    }
  }
}

TEST_CASE("special resolutions over fields") {
  SUBCASE("M((0), 2) over GF(2) is its own certificate") {
    Ring f = Ring::prime_field(2);
    auto ctx = classical(f);
    auto m = make_special(ctx, SpecialBlock{{}, 2});
    auto res = special_resolve_field(m, 40);
    CHECK(res.r == 0);
    CHECK(res.h == 2);
    CHECK(res.certificate.blocks.size() == 1);
    CHECK(verify_special_resolution(m, res).ok());
  }
  SUBCASE("random modules over GF(2) and GF(3)") {
    std::mt19937 rng(11);
    for (long p : {2L, 3L}) {
      auto ctx = classical(Ring::prime_field(p));
      for (int trial = 0; trial < 6; ++trial) {
        auto m = random_module(ctx, rng);
        auto res = special_resolve_field(m, 40);
        CHECK(res.r == 0);
        auto v = verify_special_resolution(m, res);
        CAPTURE(v.certificate.reason);
        CHECK(v.ok());
      }
    }
  }
  SUBCASE("polynomial algebra over Q: k[x]/(x)") {
    Ring q = Ring::rationals();
    auto ctx = AlgebraContext(PiSequence::all_ones(q));
    PresentedModule m(ctx, {0}, {hv(q, 1, {1})});
    auto res = special_resolve_field(m, 20);
    CHECK(res.r == 1);
    CHECK(res.top.gen_degrees == std::vector<long>{1});
    CHECK(res.top.relations.empty());
    CHECK(verify_special_resolution(m, res).ok());
  }
  SUBCASE("finitely many zeros over GF(5)") {
    Ring f = Ring::prime_field(5);
    auto ctx = AlgebraContext(PiSequence::custom(f, {{5, f.zero()}, {25, f.zero()}}, f.one()));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 4; ++trial) {
      auto m = random_module(ctx, rng);
      auto res = special_resolve_field(m, 40);
      CHECK(res.r <= 1);
      CHECK(res.h == 25);
      auto v = verify_special_resolution(m, res);
      CAPTURE(v.certificate.reason);
      CHECK(v.ok());
    }
  }
  SUBCASE("non-fields are rejected") {
    Ring z = Ring::integers();
    CHECK_THROWS_AS(special_resolve_field(PresentedModule(classical(z), {0}), 10), UnsupportedRing);
  }
}

TEST_CASE("filtration certificates") {
  Ring f = Ring::prime_field(2);
  auto ctx = classical(f);
  auto m = make_special(ctx, SpecialBlock{{}, 4});
  SpecialFiltrationCertificate good{{{SpecialBlock{{}, 4}, hv(f, 0, {1})}}};
  CHECK(verify_special_filtration(m, good, 30).ok);
  SpecialFiltrationCertificate bad{{{SpecialBlock{{}, 2}, hv(f, 0, {1})}}};
  auto v = verify_special_filtration(m, bad, 30);
  CHECK(!v.ok);
  REQUIRE(v.witness_degree);
  CHECK(*v.witness_degree == 2);

  // The ideal (x^[1], ..., x^[s-1]) filtered by translates of D^(s).
  for (long p : {2L, 3L}) {
    Ring fp = Ring::prime_field(p);
    auto c = classical(fp);
    long s = p * p;
    std::vector<long> degs;
    std::vector<HomVec> imgs;
    for (long j = s - 1; j >= 1; --j) {
      degs.push_back(j);
      imgs.push_back(hv(fp, j, {1}));
    }
    auto ker = kernel_presentation(PresentedModule(c, {0}), ModuleMap{degs, imgs}, 40);
    PresentedModule ideal(c, degs, ker.generators);
    SpecialFiltrationCertificate cert;
    for (std::size_t k = 0; k < degs.size(); ++k) {
      HomVec e{degs[k], Vec(degs.size(), fp.zero())};
      e.c[k] = fp.one();
      cert.blocks.push_back({SpecialBlock{{}, s}, e});
    }
    auto verdict = verify_special_filtration(ideal, cert, 40);
    CAPTURE(verdict.reason);
    CHECK(verdict.ok);
  }
}

TEST_CASE("H-invariant classes") {
  Ring z = Ring::integers();
  auto ctx = classical(z);
  auto hd = h_invariant(PresentedModule(ctx, {0}), 16);
  REQUIRE(hd.fit);
  CHECK(hd.fit->to_string() == "[Z]/(1-t)");
  auto hq = h_invariant(make_special(ctx, SpecialBlock{{z.from_int(3)}, 1}), 16);
  REQUIRE(hq.fit);
  CHECK(hq.fit->is_zero());
  auto full_quot = h_invariant(make_special(ctx, SpecialBlock{{z.from_int(2)}, 1}), 24, ClassMode::Full);
  for (long h : {2L, 4L}) {
    auto hm = h_invariant(make_special(ctx, SpecialBlock{{z.from_int(2)}, h}), 24, ClassMode::Full);
    REQUIRE(hm.fit);
    LaurentPoly num = LaurentPoly::one_minus_t(h);
    RationalSeries factor{num, {1}};
    CHECK(hm.fit->times(factor).equals(*full_quot.fit));
  }
}

TEST_CASE("L-invariants") {
  for (long p : {2L, 3L}) {
    Ring zp = Ring::p_local(p);
    auto ctx = classical(zp);
    std::string fp = "[F_" + std::to_string(p) + "]";
    auto ld = l_invariant(PresentedModule(ctx, {0}), 8, 8);
    REQUIRE(ld.fit);
    CHECK(ld.fit->is_zero());
    auto lq = l_invariant(make_special(ctx, SpecialBlock{{zp.from_int(p)}, 1}), 10, 10);
    REQUIRE(lq.fit);
    CHECK(lq.fit->to_string() == fp + "/(1-t)");
    auto l0 = l_invariant(make_special(ctx, SpecialBlock{{zp.zero()}, 1}), 8, 8);
    REQUIRE(l0.fit);
    CHECK(l0.fit->is_zero());
  }
}

TEST_CASE("torsion class example") {
  for (long p : {2L, 3L}) {
    auto r = ktors_demo(p, p);
    CHECK(r.h_class_zero);
    CHECK(r.l_matches);
    CHECK(r.l_nonzero);
    REQUIRE(r.l_special.fit);
    CHECK(r.l_special.fit->to_string() == "[F_" + std::to_string(p) + "]/(1-t^" + std::to_string(p) + ")");
  }
  auto r1 = ktors_demo(2, 1);
  CHECK(r1.l_matches);
  CHECK(r1.note.find("h = 1") != std::string::npos);
  CHECK_THROWS_AS(ktors_demo(2, 3), PreconditionError);
}
