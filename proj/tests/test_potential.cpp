#include <catch2/catch_amalgamated.hpp>

#include "trace_atlas/potential.hpp"
#include "trace_atlas/root_finding.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

using namespace trace_atlas;

TEST_CASE("set models validate, print, and parse", "[potential]") {
  auto d = CompactSetModel::make_disk({1, -2}, 3);
  CHECK(d.capacity() == 3.0);
  CHECK(d.str() == "disk:1,-2,3");
  auto iv = CompactSetModel::make_interval(0, 4);
  CHECK(iv.capacity() == 1.0);
  CHECK(iv.str() == "interval:0,4");

  auto p = parse_set_model("disk:0.5,0,2");
  CHECK(p.kind == CompactSetModel::Kind::disk);
  CHECK(p.radius == 2.0);
  auto q = parse_set_model("interval:-2,2");
  CHECK(q.a == -2.0);
  CHECK(q.b == 2.0);

  CHECK_THROWS_AS(CompactSetModel::make_disk({0, 0}, 0), std::domain_error);
  CHECK_THROWS_AS(CompactSetModel::make_interval(1, 1), std::domain_error);
  CHECK_THROWS_AS(parse_set_model("triangle:0,0,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set_model("disk:0,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set_model("interval:one,2"), std::invalid_argument);
}

TEST_CASE("Green function closed forms", "[potential]") {
  auto d = CompactSetModel::make_disk({0, 0}, 2);
  CHECK(green(d, {1, 0}) == 0.0);
  CHECK(green(d, {2, 0}) == 0.0);
  CHECK(green(d, {4, 0}) == Catch::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(green(d, {0, -6}) == Catch::Approx(std::log(3.0)).epsilon(1e-14));

  auto iv = CompactSetModel::make_interval(0, 4);
  CHECK(green(iv, {2, 0}) == 0.0);
  CHECK(green(iv, {0, 0}) == 0.0);
  CHECK(green(iv, {4, 0}) == 0.0);
  // real z > b: g = arccosh((2z-a-b)/(b-a))
  CHECK(green(iv, {5, 0}) == Catch::Approx(std::acosh(1.5)).epsilon(1e-12));
  CHECK(green(iv, {-1, 0}) == Catch::Approx(std::acosh(1.5)).epsilon(1e-12));
  // conjugation symmetry off the axis
  for (double x : {-3.0, 1.0, 5.5}) {
    CHECK(green(iv, {x, 0.7}) == Catch::Approx(green(iv, {x, -0.7})).epsilon(1e-14));
    CHECK(green(iv, {x, 0.7}) > 0.0);
  }
}

TEST_CASE("Green function has the capacity asymptotic at infinity", "[potential]") {
  // g(z) - log|z| -> -log cap(E)
  for (double th : {0.0, 1.0, 2.5}) {
    std::complex<double> z = 1e8 * std::complex<double>(std::cos(th), std::sin(th));
    auto d = CompactSetModel::make_disk({0.3, -0.1}, 2);
    CHECK(green(d, z) - std::log(1e8) == Catch::Approx(-std::log(2.0)).margin(1e-6));
    auto iv = CompactSetModel::make_interval(-2, 6);  // capacity 2
    CHECK(green(iv, z) - std::log(1e8) == Catch::Approx(-std::log(2.0)).margin(1e-6));
    auto unit = CompactSetModel::make_interval(0, 4);  // capacity 1
    CHECK(green(unit, z) - std::log(1e8) == Catch::Approx(0.0).margin(1e-6));
  }
}

TEST_CASE("Mahler measure on documented polynomials", "[potential]") {
  auto M = [](const IntPolynomial& p) {
    RootMultiset rm = all_roots(p, 1e-12);
    return mahler(p, rm);
  };
  Measured golden = M(IntPolynomial{1, -3, 1});
  CHECK(golden.value == Catch::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-13));
  CHECK(golden.error < 1e-10);

  CHECK(M(IntPolynomial{1, 1, 1}).value == Catch::Approx(1.0).epsilon(1e-13));  // cyclotomic
  CHECK(M(IntPolynomial{-2, 0, 2}).value == Catch::Approx(2.0).epsilon(1e-13)); // 2(x^2-1)
  CHECK(M(IntPolynomial{-4, 0, 1}).value == Catch::Approx(4.0).epsilon(1e-13)); // roots +-2

  // smallest known Salem-type measure above 1
  IntPolynomial lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
  CHECK(M(lehmer).value == Catch::Approx(1.17628081825991750).epsilon(1e-12));

  zint f = 1;
  for (int i = 2; i <= 11; ++i) f *= i;
  std::vector<zint> c(12, 0);
  c[0] = -f;
  c[11] = 1;
  CHECK(M(IntPolynomial(std::move(c))).value == Catch::Approx(39916800.0).epsilon(1e-10));
}

TEST_CASE("generalized Mahler over the unit disk is the classical measure", "[potential]") {
  auto unit = CompactSetModel::make_disk({0, 0}, 1);
  std::mt19937 rng(47);
  for (int it = 0; it < 60; ++it) {
    std::vector<zint> c(2 + rng() % 7, 0);
    for (auto& x : c) x = int(rng() % 21) - 10;
    IntPolynomial p(std::move(c));
    if (p.degree() < 1) continue;
    RootMultiset rm = all_roots(p, 1e-12);
    Measured a = mahler(p, rm);
    Measured b = generalized_mahler(p, rm, unit);
    CHECK(std::fabs(a.value - b.value) <= 1e-10 * (1 + std::fabs(a.value)));
  }
}

TEST_CASE("generalized Mahler with interval data", "[potential]") {
  auto iv = CompactSetModel::make_interval(0, 4);
  // all roots certified inside [0,4]: empty Green sum, exactly |a_n| * 1
  for (int n : {1, 2, 8, 16}) {
    IntPolynomial t = chebyshev_shifted(n);
    Measured m = generalized_mahler(t, all_roots(t, 1e-12), iv);
    CHECK(m.value == 1.0);  // exact, not approximate
  }
  // single root outside at x = 5: M = exp g(5) = (golden ratio)^2
  IntPolynomial p{-5, 1};
  Measured m = generalized_mahler(p, all_roots(p, 1e-13), iv);
  CHECK(m.value == Catch::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-11));

  // capacity-one precondition
  auto small = CompactSetModel::make_interval(0, 2);
  CHECK_THROWS_AS(generalized_mahler(p, all_roots(p, 1e-13), small), std::domain_error);
  CHECK(generalized_mahler(p, all_roots(p, 1e-13), small, false).value > 0);
}

TEST_CASE("equilibrium moments: closed form and quadrature", "[potential]") {
  auto iv = CompactSetModel::make_interval(0, 4);
  const double expect[] = {1, 2, 6, 20, 70, 252, 924};
  for (int m = 0; m <= 6; ++m) CHECK(equilibrium_moment(iv, m) == expect[m]);

  auto sym = CompactSetModel::make_interval(-2, 2);
  CHECK(equilibrium_moment(sym, 1) == 0.0);
  CHECK(equilibrium_moment(sym, 3) == 0.0);
  CHECK(equilibrium_moment(sym, 2) == 2.0);
  CHECK(equilibrium_moment(sym, 4) == 6.0);
  CHECK(equilibrium_moment(sym, 6) == 20.0);

  auto dk = CompactSetModel::make_disk({1, 2}, 3);
  CHECK(equilibrium_moment(dk, 1) == 1.0);
  CHECK(equilibrium_moment(dk, 2) == -3.0);   // Re (1+2i)^2
  CHECK(equilibrium_moment(dk, 3) == -11.0);  // Re (1+2i)^3

  std::mt19937 rng(53);
  for (int it = 0; it < 20; ++it) {
    double a = double(rng() % 9) - 4, w = 0.5 + double(rng() % 8);
    auto s = CompactSetModel::make_interval(a, a + w);
    auto d2 = CompactSetModel::make_disk({double(rng() % 5) - 2, double(rng() % 5) - 2},
                                         0.5 + double(rng() % 3));
    for (int m = 0; m <= 8; ++m) {
      CHECK(equilibrium_moment(s, m) ==
            Catch::Approx(oracles::quad_moment(s, m)).margin(1e-9 * (1 + std::pow(std::fabs(a) + w, m))));
      CHECK(equilibrium_moment(d2, m) ==
            Catch::Approx(oracles::quad_moment(d2, m)).margin(1e-9 * (1 + std::pow(4.0, m))));
    }
  }
  CHECK_THROWS_AS(equilibrium_moment(iv, -1), std::domain_error);
}

TEST_CASE("measure mass helpers", "[potential]") {
  IntPolynomial t = chebyshev_shifted(2);  // roots 2 +- sqrt 2
  CountingMeasure mu;
  RootMultiset rm = all_roots(t, 1e-12);
  for (const auto& z : rm.roots) mu.atoms.push_back({z, 0.5});
  mu.total_mass = 1;
  CHECK(measure_mass_in_disk(mu, 2.0) == 0.5);
  CHECK(measure_mass_in_disk(mu, 4.0) == 1.0);
  CHECK(measure_mass_in_disk(mu, 0.1) == 0.0);
  CHECK(logplus_mass(mu) == Catch::Approx(0.5 * std::log(2 + std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("discrete energy on hand-checked configurations", "[potential]") {
  CountingMeasure mu;
  mu.atoms = {{{0, 0}, 0.5}, {{0.5, 0}, 0.5}};
  mu.total_mass = 1;
  CHECK(discrete_energy(mu, 2.0) == Catch::Approx(0.5 * std::log(2.0)).epsilon(1e-14));

  // unit-separated pair has zero energy
  CountingMeasure unitpair;
  unitpair.atoms = {{{1, 0}, 0.5}, {{2, 0}, 0.5}};
  unitpair.total_mass = 1;
  CHECK(discrete_energy(unitpair, 3.0) == 0.0);

  // atoms outside the window contribute no pairs
  CountingMeasure outside;
  outside.atoms = {{{0, 0}, 0.5}, {{10, 0}, 0.5}};
  outside.total_mass = 1;
  CHECK(discrete_energy(outside, 3.0) == 0.0);

  // equilateral triangle, side s: energy = -3 * 2 w^2 log s with w = 1/3
  CountingMeasure tri;
  const double s = 0.25;
  for (int k = 0; k < 3; ++k) {
    double th = 2 * std::acos(-1.0) * k / 3;
    tri.atoms.push_back({s / std::sqrt(3.0) * std::complex<double>(std::cos(th), std::sin(th)), 1.0 / 3});
  }
  tri.total_mass = 1;
  CHECK(discrete_energy(tri, 1.0) == Catch::Approx(-(2.0 / 3) * std::log(s)).epsilon(1e-12));
}

TEST_CASE("discrete energy rejects degenerate configurations", "[potential]") {
  CountingMeasure coincident;
  coincident.atoms = {{{1, 0}, 0.5}, {{1, 0}, 0.5}};
  coincident.total_mass = 1;
  CHECK_THROWS_AS(discrete_energy(coincident, 2.0), std::domain_error);

  CountingMeasure nearR;
  nearR.atoms = {{{2.0 - 1e-10, 0}, 0.5}, {{1, 0}, 0.5}};
  nearR.total_mass = 1;
  CHECK_THROWS_AS(discrete_energy(nearR, 2.0), std::domain_error);  // exceptional radius

  CountingMeasure ok;
  ok.atoms = {{{1.5, 0}, 0.5}, {{1, 0}, 0.5}};
  ok.total_mass = 1;
  CHECK_THROWS_AS(discrete_energy(ok, 0.0), std::domain_error);
  CHECK_NOTHROW(discrete_energy(ok, 2.0));
}

TEST_CASE("blocked energy reduction matches a naive loop and is thread-stable", "[potential]") {
  IntPolynomial t = chebyshev_shifted(32);
  RootMultiset rm = all_roots(t, 1e-12);
  CountingMeasure mu;
  for (const auto& z : rm.roots) mu.atoms.push_back({z, 1.0 / 32});
  mu.total_mass = 1;

  double naive = 0;
  for (std::size_t j = 0; j < mu.atoms.size(); ++j)
    for (std::size_t k = j + 1; k < mu.atoms.size(); ++k)
      naive -= 2 * mu.atoms[j].w * mu.atoms[k].w * std::log(std::abs(mu.atoms[j].z - mu.atoms[k].z));

  double lib = discrete_energy(mu, 5.0);
  CHECK(lib == Catch::Approx(naive).margin(1e-12));

  setenv("TRACE_ATLAS_THREADS", "3", 1);
  double threaded = discrete_energy(mu, 5.0);
  setenv("TRACE_ATLAS_THREADS", "1", 1);
  double serial = discrete_energy(mu, 5.0);
  unsetenv("TRACE_ATLAS_THREADS");
  CHECK(threaded == serial);  // bit-identical by the block reduction contract
  CHECK(serial == lib);
}

TEST_CASE("energy sandwich brackets the Chebyshev family", "[potential]") {
  IntPolynomial t = chebyshev_shifted(64);
  RootMultiset rm = all_roots(t, 1e-12);
  for (double R : {2.0, 5.0}) {
    EnergySandwich es = energy_sandwich({{t, rm}}, R);
    CHECK(es.holds);
    CHECK(es.lower <= es.energy);
    CHECK(es.energy <= es.upper);
    CHECK(es.height >= 1.0);
  }
  EnergySandwich far = energy_sandwich({{t, rm}}, 5.0);
  CHECK(far.tau == 1.0);  // every root inside |z| <= 5
  CHECK_THROWS_AS(energy_sandwich({{t, rm}}, 1.0), std::domain_error);
  CHECK_THROWS_AS(energy_sandwich({}, 2.0), std::domain_error);
}

TEST_CASE("energy error propagation is nonnegative and small", "[potential]") {
  IntPolynomial t = chebyshev_shifted(16);
  RootMultiset rm = all_roots(t, 1e-12);
  double err = discrete_energy_error(rm, 5.0);
  CHECK(err >= 0.0);
  CHECK(err < 1e-8);
}
