#include <catch2/catch_amalgamated.hpp>

#include "trace_atlas/int_polynomial.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace trace_atlas;

TEST_CASE("construction strips trailing zeros", "[intpoly]") {
  IntPolynomial p(std::vector<zint>{zint(1), zint(2), zint(0), zint(0)});
  CHECK(p.degree() == 1);
  CHECK(p.coeff(1) == 2);
  CHECK(p.coeff(7) == 0);  // out of range reads as zero
  CHECK(IntPolynomial{}.is_zero());
  CHECK(IntPolynomial{0, 0}.is_zero());
  CHECK_THROWS_AS(IntPolynomial{}.leading(), std::domain_error);
}

TEST_CASE("arithmetic agrees with explicit expansion", "[intpoly]") {
  IntPolynomial p = oracles::from_roots({1, 2, 3});
  CHECK(p == IntPolynomial{-6, 11, -6, 1});
  CHECK(p.eval(zint(4)) == 6);
  CHECK(p.eval(zrat(1, 2)) == zrat(-15, 8));
  CHECK(p.derivative() == IntPolynomial{11, -12, 3});

  // ring identities on random small polynomials
  std::mt19937 rng(7);
  auto rnd = [&] {
    std::vector<zint> c(1 + rng() % 5);
    for (auto& x : c) x = int(rng() % 21) - 10;
    return IntPolynomial(std::move(c));
  };
  for (int it = 0; it < 200; ++it) {
    IntPolynomial a = rnd(), b = rnd(), c = rnd();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    zint x = int(rng() % 11) - 5;
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
  }
}

TEST_CASE("parse round trip and rejection", "[intpoly]") {
  IntPolynomial p = parse_polynomial("1,-3,1");
  CHECK(p == IntPolynomial{1, -3, 1});
  CHECK(parse_polynomial(" 2 , +4 ") == IntPolynomial{2, 4});
  CHECK(parse_polynomial(p.str()) == p);
  CHECK_THROWS_AS(parse_polynomial(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_polynomial("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_polynomial("1,2.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_polynomial("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_polynomial("0,0"), std::invalid_argument);
}

TEST_CASE("content, primitive part, gcd", "[intpoly]") {
  IntPolynomial p{6, -12, 18};
  CHECK(content(p) == 6);
  CHECK(primitive_part(p) == IntPolynomial{1, -2, 3});

  IntPolynomial a = oracles::from_roots({1, 2, 5});
  IntPolynomial b = oracles::from_roots({2, 5, 9});
  CHECK(gcd(a, b) == oracles::from_roots({2, 5}));
  CHECK(gcd(a, oracles::from_roots({11})) == IntPolynomial{1});
  // gcd is primitive with positive leading coefficient regardless of input sign
  CHECK(gcd(zint(-4) * a, zint(6) * b) == oracles::from_roots({2, 5}));
}

TEST_CASE("squarefree detection", "[intpoly]") {
  CHECK(is_squarefree(IntPolynomial{1, -3, 1}));
  CHECK(is_squarefree(oracles::from_roots({1, 2, 3})));
  CHECK_FALSE(is_squarefree(oracles::from_roots({1, 1})));
  CHECK_FALSE(is_squarefree(oracles::from_roots({2, 3, 3, 5})));
  CHECK_THROWS_AS(is_squarefree(IntPolynomial{5}), std::domain_error);
}

TEST_CASE("resultant equals product of evaluations at the roots", "[intpoly]") {
  std::mt19937 rng(11);
  for (int it = 0; it < 50; ++it) {
    std::vector<long> rs(1 + rng() % 4);
    for (auto& r : rs) r = long(rng() % 13) - 6;
    IntPolynomial f = oracles::from_roots(rs);
    std::vector<zint> gc(1 + rng() % 4);
    for (auto& x : gc) x = int(rng() % 15) - 7;
    IntPolynomial g(std::move(gc));
    if (g.is_zero() || g.degree() < 1) continue;
    // res(f, g) = lc(f)^{deg g} prod g(alpha_i), and lc(f) = 1 here
    zint expect = 1;
    for (long r : rs) expect *= g.eval(zint(r));
    CHECK(resultant(f, g) == expect);
  }
}

TEST_CASE("resultant is multiplicative in the first argument", "[intpoly]") {
  std::mt19937 rng(13);
  for (int it = 0; it < 40; ++it) {
    auto rnd = [&](int dmin) {
      std::vector<zint> c;
      do {
        c.assign(std::size_t(dmin + 1 + rng() % 3), 0);
        for (auto& x : c) x = int(rng() % 11) - 5;
      } while (c.back() == 0);
      return IntPolynomial(std::move(c));
    };
    IntPolynomial f = rnd(1), g = rnd(1), h = rnd(1);
    CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
  }
}

TEST_CASE("discriminant closed forms", "[intpoly]") {
  CHECK(discriminant(IntPolynomial{1, -3, 1}) == 5);   // b^2 - 4c
  CHECK(discriminant(IntPolynomial{1, -1, 1}) == -3);  // x^2 - x + 1
  CHECK(discriminant(IntPolynomial{1, -1, 0, 1}) == -23);  // -4p^3 - 27q^2 for x^3 + px + q
  CHECK(discriminant(oracles::from_roots({1, 2, 3, 4, 5})) == 82944);  // (1! 2! 3! 4!)^2
  CHECK(discriminant(oracles::from_roots({1, 1, 2})) == 0);
  // general quadratic ax^2 + bx + c
  std::mt19937 rng(17);
  for (int it = 0; it < 100; ++it) {
    zint a = int(rng() % 9) - 4, b = int(rng() % 9) - 4, c = int(rng() % 9) - 4;
    if (a == 0) continue;
    CHECK(discriminant(IntPolynomial(std::vector<zint>{c, b, a})) == b * b - 4 * a * c);
  }
  CHECK_THROWS_AS(discriminant(IntPolynomial{1, 1}), std::domain_error);
}

TEST_CASE("shifted Chebyshev family recurrence and special values", "[intpoly]") {
  CHECK(chebyshev_shifted(1) == IntPolynomial{-2, 1});
  CHECK(chebyshev_shifted(2) == IntPolynomial{2, -4, 1});
  IntPolynomial tprev = chebyshev_shifted(1), t = chebyshev_shifted(2);
  const IntPolynomial xm2{-2, 1};
  for (int n = 3; n <= 40; ++n) {
    IntPolynomial next = chebyshev_shifted(n);
    CHECK(next == xm2 * t - tprev);
    CHECK(next.monic());
    // x = 2 + 2cos(theta) maps t_n to 2cos(n theta): check theta = 0, pi/2, pi
    CHECK(next.eval(zint(4)) == 2);
    CHECK(next.eval(zint(0)) == (n & 1 ? -2 : 2));
    CHECK(next.eval(zint(2)) == ((n & 1) ? 0 : (n % 4 == 0 ? 2 : -2)));
    tprev = t;
    t = next;
  }
  CHECK_THROWS_AS(chebyshev_shifted(0), std::domain_error);
}

TEST_CASE("Cauchy bound dominates every root", "[intpoly]") {
  std::mt19937 rng(19);
  for (int it = 0; it < 50; ++it) {
    std::vector<long> rs(1 + rng() % 5);
    for (auto& r : rs) r = long(rng() % 41) - 20;
    IntPolynomial p = oracles::from_roots(rs);
    zrat bound = cauchy_root_bound(p);
    for (long r : rs) CHECK(zrat(r < 0 ? -r : r) < bound);
  }
}
