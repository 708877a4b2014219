#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "extremal_length.hpp"
#include "grid_oracle.hpp"
#include "rayland/errors.hpp"
#include "rayland/geometry.hpp"

using namespace rayland;
using std::numbers::pi;

namespace {

// circle through three points
Disk circle_through(cplx a, cplx b, cplx c) {
  const cplx ab = b - a, ac = c - a;
  const double dd = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
  const double nb = std::norm(ab), nc = std::norm(ac);
  const cplx o = a + cplx((ac.imag() * nb - ab.imag() * nc) / dd, (ab.real() * nc - ac.real() * nb) / dd);
  return {o, std::abs(a - o)};
}

Disk mobius_image(const Disk& d, cplx a, cplx b, cplx c, cplx e) {
  auto m = [&](cplx z) { return (a * z + b) / (c * z + e); };
  return circle_through(m(d.center + d.radius), m(d.center + cplx(0, d.radius)), m(d.center - d.radius));
}

std::vector<cplx> random_star(std::mt19937_64& rng, cplx z, int n) {
  std::uniform_real_distribution<double> r(0.3, 1.0);
  std::vector<cplx> v;
  for (int k = 0; k < n; ++k) v.push_back(z + std::polar(r(rng), 2 * pi * k / n));
  return v;
}

}  // namespace

TEST_CASE("shape of disks and squares") {
  auto disk = Region::circle({1, 2}, 3.0, 4096);
  CHECK(shape(disk, {1, 2}) == doctest::Approx(1.0).epsilon(1e-6));
  const double R = 3.0, a = 1.2;
  CHECK(shape(disk, cplx(1 + a, 2)) == doctest::Approx((R + a) / (R - a)).epsilon(1e-5));
  auto sq = Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(shape(sq, {0.5, 0.5}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(shape(sq, {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(shape(sq, {2.0, 0.5}), DomainError);
}

TEST_CASE("euclidean area-shape upper bound on random polygons") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto v = random_star(rng, {0.1, -0.2}, 12);
    auto R = Region::polygon(v);
    const double s = shape(R, {0.1, -0.2}), dm = diameter(v);
    CHECK(std::abs(polygon_area(R.boundary)) <= pi / 4 * s * s * dm * dm);
  }
}

TEST_CASE("modulus") {
  CHECK(modulus(AnnulusSpec::concentric(0, 1, std::exp(2 * pi))) == doctest::Approx(1.0));
  CHECK(modulus(AnnulusSpec::concentric(0, 1, std::exp(1.0))) == doctest::Approx(1 / (2 * pi)));
  CHECK(modulus(AnnulusSpec::circle_pair({0, 1}, {0, 0.5})) ==
        doctest::Approx(std::log(2.0) / (2 * pi)));
  CHECK_THROWS_AS(modulus(AnnulusSpec::circle_pair({0, 1}, {0.5, 0.5})), DomainError);
  CHECK_THROWS_AS(modulus(AnnulusSpec::concentric(0, 2, 1)), DomainError);

  const double m = modulus(AnnulusSpec::circle_pair({0, 1}, {0.3, 0.2}));
  CHECK(std::abs(m - oracle::circle_pair_modulus_fd(0, 1, 0.3, 0.2, 300)) < 0.02 * m);
}

TEST_CASE("circle-pair modulus is Moebius invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const Disk outer{0, 1}, inner{{0.25, -0.3}, 0.35};
  const double m0 = modulus(AnnulusSpec::circle_pair(outer, inner));
  int done = 0;
  while (done < 50) {
    // pole well outside the outer disk keeps the nesting
    const cplx c{u(rng), u(rng)}, a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const cplx e = 2.0 + std::abs(c) * 2.0;
    if (std::abs(a * e - b * c) < 0.1) continue;
    const Disk o = mobius_image(outer, a, b, c, e), i = mobius_image(inner, a, b, c, e);
    CHECK(std::abs(modulus(AnnulusSpec::circle_pair(o, i)) - m0) < 1e-9);
    ++done;
  }
}

TEST_CASE("rho-star areas") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int t = 0; t < 20; ++t) {
    const double r1 = u(rng), r2 = r1 * (1.0 + u(rng));
    const double want = std::log(r2 / r1) / (2 * pi);
    CHECK(std::abs(area_rho_star(AnnulusSpec::concentric(0, r1, r2)) - want) < 1e-6 * want);
  }
  const double eps = 1e-2, R = 10.0;
  CHECK(area_rho_star(Disk{R, eps}) == doctest::Approx(pi * eps * eps / (4 * pi * pi * R * R)).epsilon(1e-4));
  // polygonal circle approximates the disk
  CHECK(area_rho_star(Region::circle({3, 1}, 0.5, 4096)) ==
        doctest::Approx(area_rho_star(Disk{{3, 1}, 0.5})).epsilon(1e-5));
  // eccentric pair around the origin hole
  CHECK(area_rho_star(AnnulusSpec::circle_pair({0, 2}, {{0.1, 0}, 0.5})) > 0);
  CHECK_THROWS_AS(area_rho_star(Disk{0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(area_rho_star(AnnulusSpec::concentric(1.5, 1, 2)), DomainError);
  CHECK_THROWS_AS(area_rho_star(Region::circle(0, 1)), DomainError);
}

TEST_CASE("rho-star area ratio bounded below for shape-controlled pairs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (double C : {2.0, 4.0}) {
    double worst = 1.0;
    for (int t = 0; t < 100; ++t) {
      const cplx x = std::polar(20.0, 2 * pi * u(rng));
      const double rE = 0.2 + 0.8 * u(rng);
      // x at distance a from E's centre gives Shape (rE + a)/(rE - a) <= C
      const double a = rE * (C - 1) / (C + 1) * u(rng);
      const double rU = (rE + a) + (C * rE - rE - a) * u(rng);
      const cplx off = std::polar(a, 2 * pi * u(rng));
      const Disk E{x + off, rE}, U{x, rU};
      REQUIRE(shape(Region::circle(E.center, E.radius, 64), x) <= C + 1e-9);
      worst = std::min(worst, area_rho_star(E) / area_rho_star(U));
    }
    CHECK(worst > 0.5 / (C * C));
  }
}

TEST_CASE("m-nested validation") {
  const double m = 0.5;
  NestedDiskSystem one{{{0.0, {0, 1}, {0, 2}, {0, 2 * std::exp(2 * pi * m) * 1.01}}}};
  one.triples[0].label = 10.0;
  for (auto& t : one.triples) {
    t.inner.center = t.mid.center = t.outer.center = 10.0;
  }
  auto rep = validate_m_nested(one, m);
  CHECK(rep.pass);
  CHECK(rep.min_modulus > m);

  // clause 2: D_y inside D_x meets D''_x but not inside D'_x
  NestedDiskSystem two;
  two.triples.push_back({10.0, {10.0, 1}, {10.0, 2}, {10.0, 200}});
  two.triples.push_back({12.5, {12.5, 0.1}, {12.5, 0.2}, {12.5, 1.6}});
  rep = validate_m_nested(two, 0.1);
  CHECK_FALSE(rep.pass);
  bool clause2 = false;
  for (auto& v : rep.violations) clause2 = clause2 || v.clause == 2;
  CHECK(clause2);

  NestedDiskSystem weak{{{10.0, {10.0, 1}, {10.0, 2}, {10.0, 2 * std::exp(2 * pi * m / 2)}}}};
  rep = validate_m_nested(weak, m);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].clause == 3);
  CHECK(rep.min_modulus == doctest::Approx(m / 2));

  NestedDiskSystem overlap;
  overlap.triples.push_back({10.0, {10.0, 0.1}, {10.0, 0.2}, {10.0, 1}});
  overlap.triples.push_back({11.5, {11.5, 0.1}, {11.5, 0.2}, {11.5, 1}});
  rep = validate_m_nested(overlap, 0.01);
  CHECK(rep.violations.front().clause == 0);
}

TEST_CASE("lambda-scattered validation") {
  NestedDiskSystem sys;
  sys.triples.push_back({20.0, {20.0, 0.1}, {20.0, 0.5}, {20.0, 1.0}});
  auto rep = validate_scattered(sys, {TestMap::identity()}, 0.01);
  CHECK(rep.pass);
  CHECK(rep.entries[0].worst_ratio == 0.0);

  sys.triples.push_back({20.0 + 0.0001, {20.0001, 0.01}, {20.0001, 0.02}, {20.0, 0.5}});
  rep = validate_scattered(sys, {TestMap::identity()}, 0.5);
  CHECK(rep.pass);
  CHECK(rep.entries[0].worst_ratio == doctest::Approx(0.25).epsilon(1e-2));
  rep = validate_scattered(sys, {TestMap::inversion(0.0)}, 0.5);
  CHECK(rep.entries[0].worst_ratio == doctest::Approx(0.25).epsilon(1e-2));
  rep = validate_scattered(sys, {TestMap::affine({0, 2}, 1.0), TestMap::exp_poly({0.0, 0.1})}, 0.2);
  CHECK_FALSE(rep.pass);
  CHECK_THROWS_AS(validate_scattered(sys, {TestMap::inversion(20.0)}, 0.5), DomainError);
  CHECK_THROWS_AS(validate_scattered(sys, {TestMap::affine(1.0, -20.0)}, 0.5), DomainError);
}

TEST_CASE("preimage components: elementary cases") {
  auto sq = MonicPolynomial::power(2);
  auto lv = preimage_components(sq, Region::circle(4.0, 1.0), 1);
  REQUIRE(lv[0].size() == 2);
  double xs[2] = {lv[0][0].boundary[0].real(), lv[0][1].boundary[0].real()};
  CHECK(std::min(xs[0], xs[1]) < -1.5);
  CHECK(std::max(xs[0], xs[1]) > 1.5);
  CHECK(lv[0][0].degree == 1);

  lv = preimage_components(sq, Region::circle(0.0, 1.0), 1);
  REQUIRE(lv[0].size() == 1);
  CHECK(lv[0][0].degree == 2);

  CHECK_THROWS_AS(preimage_components(sq, Region::circle(1.0, 1.0), 1), NumericError);
}

TEST_CASE("preimage components agree with the grid oracle") {
  auto f = MonicPolynomial::quadratic({0, 1});
  auto lv = preimage_components(f, Region::circle({0, -1}, 0.05), 3);
  auto grid = oracle::grid_components(f, {0, -1}, 0.05, 3, 2048);
  for (int k = 0; k < 3; ++k) {
    CHECK(lv[k].size() == grid.levels[k].size());
    unsigned long long sum = 0;
    for (auto& c : lv[k]) sum += c.degree;
    CHECK(sum == (1ull << (k + 1)));
  }
}

TEST_CASE("z^d preimage of concentric annuli divides the modulus by d") {
  for (unsigned d : {2u, 3u, 5u}) {
    auto f = MonicPolynomial::power(d);
    const double r1 = 0.7, r2 = 3.1;
    auto mean_radius = [&](double r) {
      auto lv = preimage_components(f, Region::circle(0.0, r, 512), 1);
      REQUIRE(lv[0].size() == 1);
      CHECK(lv[0][0].degree == d);
      double s = 0;
      for (auto z : lv[0][0].boundary) s += std::abs(z);
      return s / lv[0][0].boundary.size();
    };
    const double m2 = modulus(AnnulusSpec::concentric(0, r1, r2));
    const double m1 = modulus(AnnulusSpec::concentric(0, mean_radius(r1), mean_radius(r2)));
    CHECK(std::abs(m1 / m2 - 1.0 / d) < 1e-9);
    CHECK(m1 <= m2);
    CHECK(m2 <= d * m1 * (1 + 1e-12));
  }
}

TEST_CASE("backward stability probe examples") {
  auto rep = backward_stability_probe(MonicPolynomial::power(2), Region::circle(1.0, 0.1), 8, 0, 1);
  for (std::size_t k = 1; k < rep.levels.size(); ++k)
    CHECK(rep.levels[k].max_diameter / rep.levels[k - 1].max_diameter == doctest::Approx(0.5).epsilon(0.01));
  CHECK(rep.degree_bounded);
  CHECK(rep.degree_sums_ok);

  // the 0-component appears at level 2 since f(0) = -2 and f(-2) = 2
  rep = backward_stability_probe(MonicPolynomial::quadratic(-2.0), Region::circle(2.0, 0.1), 10, 2, 2);
  CHECK(rep.diameters_decreasing);
  CHECK(rep.degree_bounded);
  CHECK(rep.levels[0].max_degree == 1);
  CHECK(rep.levels[1].max_degree == 2);
}
