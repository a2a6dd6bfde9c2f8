#include <doctest.h>

#include <numeric>
#include <random>

#include "gdpa/pi.hpp"

using namespace gdpa;

namespace {

mpz_class binomial(long n, long m) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  return r;
}

// Gaussian binomials from the q-Pascal rule [n,m] = [n-1,m-1] + q^m [n-1,m].
std::vector<std::vector<IntPoly>> q_pascal(long N) {
  std::vector<std::vector<IntPoly>> t(N + 1);
  for (long n = 0; n <= N; ++n) {
    t[n].resize(n + 1);
    t[n][0] = t[n][n] = IntPoly::constant(1);
    for (long m = 1; m < n; ++m) t[n][m] = t[n - 1][m - 1] + IntPoly::monomial(1, m) * t[n - 1][m];
  }
  return t;
}

PiSequence random_never_zero(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> v(1, 12), sign(0, 1);
  std::map<long, RingElement> vals;
  Ring z = Ring::integers();
  for (long n = 2; n <= 130; ++n) vals[n] = z.from_int(v(rng) * (sign(rng) ? 1 : -1));
  return PiSequence::custom(z, vals, z.one());
}

}  // namespace

TEST_CASE("base representation and carries") {
  DivisibleSequence two{{1, 2}, 2};
  CHECK(base_rep(0, two).empty());
  CHECK(base_rep(13, two) == std::vector<long>{1, 0, 1, 1});
  CHECK(base_rep(10, DivisibleSequence{{1, 3, 6}, 0}) == std::vector<long>{1, 1, 1});
  CHECK(base_rep(20, DivisibleSequence{{1, 3, 6}, 0}) == std::vector<long>{2, 0, 3});
  CHECK(carry(2, 1, 1) == 1);
  CHECK(carry(3, 2, 2) == 1);
  CHECK(carry(5, 7, 0) == 0);
  CHECK_THROWS_AS(carry(0, 1, 1), PreconditionError);
  CHECK_THROWS_AS(base_rep(3, DivisibleSequence{{1, 4, 6}, 0}), PreconditionError);
  for (long k = 1; k <= 12; ++k)
    for (long n = 0; n <= 30; ++n)
      for (long m = 0; m <= 30; ++m) {
        int c = carry(k, n, m);
        CHECK((c == 0 || c == 1));
        CHECK(c == ((n % k + m % k) >= k ? 1 : 0));
      }
}

TEST_CASE("property: base representation reconstructs n within digit ranges") {
  DivisibleSequence b{{1, 2, 6, 12, 60}, 0};
  for (long n = 0; n <= 500; ++n) {
    auto d = base_rep(n, b);
    long s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      s += d[i] * b.terms[i];
      if (i + 1 < b.terms.size()) CHECK(d[i] < b.terms[i + 1] / b.terms[i]);
    }
    CHECK(s == n);
  }
}

TEST_CASE("classical invariants") {
  Ring z = Ring::integers();
  PiSequence pi = PiSequence::classical(z);
  CHECK(pi.pi(1) == z.zero());
  CHECK(pi.pi(8) == z.from_int(2));
  CHECK(pi.pi(6) == z.one());
  for (long n = 1; n <= 30; ++n) CHECK(pi.a(n) == z.from_int(n));
  CHECK(pi.A(0) == z.one());
  CHECK(pi.A(5) == z.from_int(120));
  CHECK(pi.C(4, 2) == z.from_int(6));
  for (long n = 0; n <= 60; ++n)
    for (long m = 0; m <= n; ++m) CHECK(pi.C(n, m).q == mpq_class(binomial(n, m)));
  CHECK_THROWS_AS(pi.C(2, 3), PreconditionError);
  PiSequence ones = PiSequence::all_ones(z);
  for (long n = 1; n <= 10; ++n) CHECK(ones.a(n) == z.one());
}

TEST_CASE("cyclotomic sequence gives Gaussian binomials") {
  PiSequence pi = PiSequence::cyclotomic_symbolic();
  CHECK(pi.a(3).poly == IntPoly::parse("1+q+q^2"));
  CHECK(pi.C(2, 1).poly == IntPoly::parse("1+q"));
  auto oracle = q_pascal(24);
  for (long n = 0; n <= 24; ++n)
    for (long m = 0; m <= n; ++m) CHECK(pi.C(n, m).poly == oracle[n][m]);
  PiSequence p2 = pi.h_transform(2);
  for (long n = 1; n <= 8; ++n) {
    std::vector<mpz_class> c(2 * n - 1, 0);
    for (long i = 0; i < n; ++i) c[2 * i] = 1;
    CHECK(p2.a(n).poly == IntPoly(c));
  }
  CHECK(admissible_check(pi, 40).admissible);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == IntPoly::parse("-1+q"));
  CHECK(cyclotomic_polynomial(6) == IntPoly::parse("1-q+q^2"));
  CHECK(cyclotomic_polynomial(12) == IntPoly::parse("1-q^2+q^4"));
  for (long n = 1; n <= 30; ++n) {
    IntPoly prod = IntPoly::constant(1);
    for (long d : divisors(n)) prod = prod * cyclotomic_polynomial(d);
    CHECK(prod == IntPoly::monomial(1, n) - IntPoly::constant(1));
  }
}

TEST_CASE("property: cocycle, factorial and symmetry identities for random never-zero sequences") {
  std::mt19937_64 rng(2024);
  Ring z = Ring::integers();
  for (int trial = 0; trial < 20; ++trial) {
    PiSequence pi = random_never_zero(rng);
    for (long n = 0; n <= 24; ++n)
      for (long m = 0; m <= n; ++m) {
        CHECK(pi.C(n, m) == pi.C(n, n - m));
        CHECK(z.mul(z.mul(pi.C(n, m), pi.A(n - m)), pi.A(m)) == pi.A(n));
        for (long l = 0; l <= m; l += 3)
          CHECK(z.mul(pi.C(n, m), pi.C(m, l)) == z.mul(pi.C(n - l, m - l), pi.C(n, l)));
      }
  }
}

TEST_CASE("property: h-transform laws") {
  std::mt19937_64 rng(99);
  Ring z = Ring::integers();
  for (int trial = 0; trial < 4; ++trial) {
    PiSequence pi = random_never_zero(rng);
    for (long h = 1; h <= 6; ++h) {
      PiSequence ph = pi.h_transform(h);
      for (long n = 1; n <= 20; ++n) CHECK(z.mul(ph.a(n), pi.a(h)) == pi.a(h * n));
      for (long h2 = 1; h2 <= 6; ++h2) {
        PiSequence twice = ph.h_transform(h2), once = pi.h_transform(h * h2);
        for (long n = 1; n <= 20; n += 3) CHECK(twice.a(n) == once.a(n));
      }
    }
  }
  PiSequence cl = PiSequence::classical(z);
  for (long h = 1; h <= 6; ++h)
    for (long n = 1; n <= 20; ++n) CHECK(cl.h_transform(h).a(n) == z.from_int(n));
  CHECK(cl.h_transform(1).describe() == "classical");
}

TEST_CASE("divisors of nh factor uniquely") {
  for (long n = 1; n <= 30; ++n)
    for (long h = 1; h <= 30; ++h)
      for (long m : divisors(n * h)) {
        int count = 0;
        for (long d : divisors(n))
          for (long dp : divisors(h))
            if (d * dp == m && std::gcd(h / dp, d) == 1) ++count;
        CHECK(count == 1);
      }
}

TEST_CASE("admissibility") {
  Ring z = Ring::integers();
  CHECK(admissible_check(PiSequence::classical(z), 100).admissible);
  auto bad = admissible_check(PiSequence::custom(z, {{2, z.from_int(2)}, {3, z.from_int(2)}}, z.one()), 10);
  CHECK(!bad.admissible);
  CHECK(bad.n == 2);
  CHECK(bad.m == 3);
  for (long h = 1; h <= 6; ++h) {
    CHECK(admissible_check(PiSequence::classical(z).h_transform(h), 60).admissible);
    CHECK(admissible_check(PiSequence::classical(Ring::p_local(3)).h_transform(h), 60).admissible);
  }
  CHECK(admissible_check(PiSequence::classical(Ring::integers_mod(12)), 60).admissible);
  CHECK(admissible_check(PiSequence::cyclotomic_at(Ring::prime_field(7), Ring::prime_field(7).from_int(2)), 60)
            .admissible);
}

TEST_CASE("gcd-morphic bridge") {
  PiSequence fib = pi_from_gcd_morphic([](long n) { return fibonacci_number(n); }, 60, "fibonacci");
  std::vector<long> expect{1, 2, 3, 5, 4, 13};
  for (long n = 2; n <= 7; ++n) CHECK(fib.pi(n).q == expect[n - 2]);
  for (long n = 1; n <= 30; ++n)
    for (long m = 1; m <= 30; ++m) CHECK(gcd(fibonacci_number(n), fibonacci_number(m)) == fibonacci_number(std::gcd(n, m)));
  CHECK(admissible_check(fib, 60).admissible);
  for (long n = 1; n <= 40; ++n) CHECK(fib.a(n).q == mpq_class(fibonacci_number(n)));
  PiSequence nat = pi_from_gcd_morphic([](long n) { return mpz_class(n); }, 60, "identity");
  PiSequence cl = PiSequence::classical(Ring::integers());
  for (long n = 2; n <= 60; ++n) CHECK(nat.pi(n) == cl.pi(n));
  PiSequence ones = pi_from_gcd_morphic([](long) { return mpz_class(1); }, 20, "ones");
  for (long n = 2; n <= 20; ++n) CHECK(ones.pi(n).q == 1);
  try {
    pi_from_gcd_morphic([](long n) { return mpz_class(n == 4 ? 6 : n); }, 10, "broken");
    FAIL("expected a gcd-morphic failure");
  } catch (const NotGcdMorphicError& e) {
    CHECK(e.n < e.m);
  }
}

TEST_CASE("b-sequences of ideals") {
  Ring z = Ring::integers();
  PiSequence cl = PiSequence::classical(z);
  CHECK(b_sequence_for_ideal(cl, {z.from_int(2)}, 32).terms == std::vector<long>{1, 2, 4, 8, 16, 32});
  CHECK(b_sequence_for_ideal(cl, {z.one()}, 32).terms == std::vector<long>{1});
  Ring z3 = Ring::p_local(3);
  CHECK(b_sequence_for_ideal(PiSequence::classical(z3), {z3.from_int(3)}, 27).terms ==
        std::vector<long>{1, 3, 9, 27});
  PiSequence bad = PiSequence::custom(z, {{2, z.from_int(2)}, {3, z.from_int(2)}}, z.one());
  CHECK_THROWS_AS(b_sequence_for_ideal(bad, {z.from_int(2)}, 10), PreconditionError);
}

TEST_CASE("nonunit locus classification") {
  Ring f2 = Ring::prime_field(2);
  CHECK(PiSequence::classical(f2).infinite_nonunit_locus() == Tri::Yes);
  CHECK(PiSequence::classical(Ring::rationals()).infinite_nonunit_locus() == Tri::No);
  CHECK(PiSequence::all_ones(Ring::rationals()).last_nonunit() == std::nullopt);
  Ring f5 = Ring::prime_field(5);
  PiSequence c = PiSequence::custom(f5, {{5, f5.zero()}, {25, f5.zero()}}, f5.one());
  CHECK(c.infinite_nonunit_locus() == Tri::No);
  CHECK(c.last_nonunit() == 25);
  CHECK(PiSequence::custom(f5, {}, f5.zero()).infinite_nonunit_locus() == Tri::Yes);
  CHECK(PiSequence::cyclotomic_at(f5, f5.from_int(2)).infinite_nonunit_locus() == Tri::Yes);
  CHECK(PiSequence::classical(Ring::p_local(2)).infinite_nonunit_locus() == Tri::Yes);
}
