#include <doctest.h>

#include "gdpa/classes.hpp"

using namespace gdpa;

TEST_CASE("class vectors from invariants") {
  Ring z = Ring::integers();
  ModuleInvariants inv{1, {z.from_int(12)}};
  CHECK(to_string(class_of(inv, z, ClassMode::Full)) == "[Z/3]+[Z/4]+[Z]");
  CHECK(to_string(class_of(inv, z, ClassMode::Rank)) == "[Z]");
  CHECK(class_of(inv, z, ClassMode::Plus).empty());
  ModuleInvariants tors{0, {z.from_int(2), z.from_int(12)}};
  CHECK(to_string(class_of(tors, z, ClassMode::Plus)) == "3*[F_2]+[F_3]");
  Ring z4 = Ring::integers_mod(4);
  CHECK(to_string(class_of(ModuleInvariants{1, {z4.from_int(2)}}, z4, ClassMode::Full)) == "[Z/2]+[Z/4]");
  CHECK_THROWS_AS(class_of(ModuleInvariants{1, {}}, z4, ClassMode::Rank), UnsupportedRing);
}

TEST_CASE("Laurent polynomials and rational series") {
  LaurentPoly a = LaurentPoly::one_minus_t(2);
  CHECK(a.to_string() == "1-t^2");
  auto q = a.divide_one_minus_t(1);
  REQUIRE(q);
  CHECK(q->to_string() == "1+t");
  CHECK(!LaurentPoly::one_minus_t(3).divide_one_minus_t(2));
  RationalSeries s{LaurentPoly::one(), {2}};
  CHECK(s.expand(0, 5) == std::vector<long long>{1, 0, 1, 0, 1, 0});
  RationalSeries t{LaurentPoly::one() + LaurentPoly::monomial(1, 1), {2}};
  CHECK(t.equals(RationalSeries{LaurentPoly::one(), {1}}));
  CHECK(t.to_string() == "1/(1-t)");
  RationalSeries u{LaurentPoly::monomial(1, -1), {1, 3}};
  CHECK(u.expand(-1, 3) == std::vector<long long>{1, 1, 1, 2, 2});
  CHECK(u.to_string() == "t^-1/((1-t)(1-t^3))");
}

TEST_CASE("fitting eventually periodic class streams") {
  std::vector<ClassVector> data;
  for (int d = 0; d <= 12; ++d) data.push_back(d % 2 == 0 ? ClassVector{{"[Z/2]", 1}} : ClassVector{});
  auto fit = KClassExpr::fit(data, 0);
  REQUIRE(fit);
  CHECK(fit->to_string() == "[Z/2]/(1-t^2)");
  CHECK(fit->expand(0, 12) == data);
  std::vector<ClassVector> fin{{{"[Q]", 1}}, {{"[Q]", 2}}, {}, {}, {}, {}, {}, {}};
  auto f2 = KClassExpr::fit(fin, 0);
  REQUIRE(f2);
  CHECK(f2->to_string() == "(1+2*t)*[Q]");
  std::vector<ClassVector> two;
  for (int d = 0; d <= 12; ++d) two.push_back(d % 2 == 0 ? ClassVector{{"[Z/2]", 1}, {"[Z/3]", 1}} : ClassVector{});
  CHECK(KClassExpr::fit(two, 0)->to_string() == "([Z/2]+[Z/3])/(1-t^2)");
  std::vector<ClassVector> shifted;
  for (int d = 3; d <= 40; ++d) shifted.push_back(d % 8 == 3 ? ClassVector{{"[F_2]", 1}} : ClassVector{});
  auto f3 = KClassExpr::fit(shifted, 3);
  REQUIRE(f3);
  CHECK(f3->to_string() == "t^3*[F_2]/(1-t^8)");
  std::vector<ClassVector> too_short{{{"[Z]", 1}}, {{"[Z]", 2}}, {{"[Z]", 3}}};
  CHECK(!KClassExpr::fit(too_short, 0, 1));
}

TEST_CASE("class expression arithmetic") {
  KClassExpr m;
  m.add_term("[Z/2]", RationalSeries{LaurentPoly::one(), {4}});
  KClassExpr n;
  n.add_term("[Z/2]", RationalSeries{LaurentPoly::one(), {1}});
  RationalSeries f{LaurentPoly::one_minus_t(4), {1}};
  CHECK(m.times(f).equals(n));
  CHECK((m - m).is_zero());
  CHECK(!(m - n).is_zero());
  CHECK((m - n + n).equals(m));
  KClassExpr a;
  a.add_term("[Z/2]", RationalSeries{LaurentPoly::one(), {2}});
  a.add_term("[Z/3]", RationalSeries{LaurentPoly::monomial(-1, 0), {1}});
  CHECK(a.to_string() == "[Z/2]/(1-t^2) - [Z/3]/(1-t)");
}
