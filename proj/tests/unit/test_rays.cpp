#include <doctest.h>

#include <cmath>

#include "rayland/errors.hpp"
#include "rayland/potential.hpp"
#include "rayland/rays.hpp"

using namespace rayland;

TEST_CASE("trace_ray on z^2 follows the real axis") {
  const auto f = MonicPolynomial::power(2);
  const auto path = trace_ray(f, Angle(0, 1), 1.0, 0.01);
  CHECK(path.terminal == RayTerminal::Truncated);
  REQUIRE(path.samples.size() > 5);
  CHECK(path.samples.front().potential == doctest::Approx(1.0));
  CHECK(path.samples.back().potential == doctest::Approx(0.01));
  double prev = 1e9;
  for (const auto& s : path.samples) {
    CHECK(std::abs(s.point.imag()) < 1e-12);
    CHECK(std::abs(s.point.real() - std::exp(s.potential)) < 1e-12);
    CHECK(s.green_residual < 1e-9);
    CHECK(s.potential < prev);
    prev = s.potential;
  }
}

TEST_CASE("landing examples") {
  CHECK(std::abs(landing_point(MonicPolynomial::power(2), Angle(0, 1)).point - 1.0) < 1e-8);
  CHECK(std::abs(landing_point(MonicPolynomial::quadratic(-2.0), Angle(0, 1)).point - 2.0) < 1e-8);
  const auto f = MonicPolynomial::quadratic({0, 1});
  const auto l = landing_point(f, Angle(1, 6), 1e-9);
  CHECK(std::abs(l.point - cplx(0, 1)) < 1e-7);
  CHECK(l.decay_ratio < 1.0);
  // rays 1/3 and 2/3 land on the cycle -1+i, -i reached from i
  CHECK(std::abs(landing_point(f, Angle(1, 3)).point - cplx(-1, 1)) < 1e-7);
  CHECK(std::abs(landing_point(f, Angle(2, 3)).point - cplx(0, -1)) < 1e-7);
  CHECK_THROWS_AS(landing_point(MonicPolynomial::quadratic(-6.0), Angle(0, 1)), DomainError);
}

TEST_CASE("periodic landing for odd denominators") {
  for (cplx c : {cplx(-0.5, 0.0), cplx(0.0, 1.0), cplx(0.1, 0.3)}) {
    const auto f = MonicPolynomial::quadratic(c);
    for (auto [p, q, period] : {std::tuple{1, 7, 3}, std::tuple{0, 1, 1}, std::tuple{1, 3, 2},
                                std::tuple{3, 5, 4}}) {
      const auto l = landing_point(f, Angle(p, q), 1e-10);
      cplx z = l.point;
      for (int k = 0; k < period; ++k) z = f(z);
      CHECK(std::abs(z - l.point) < 1e-8);
    }
  }
}

TEST_CASE("bifurcation for z^2 - 6") {
  const auto f = MonicPolynomial::quadratic(-6.0);
  const double rate = critical_value_rates(f)[0].rate;
  for (auto q : {Angle(1, 4), Angle(3, 4)}) {
    const auto path = trace_ray(f, q, 3.0, 1e-3);
    CHECK(path.terminal == RayTerminal::Bifurcated);
    CHECK(std::abs(path.terminal_point) < 1e-8);
    CHECK(path.bifurcation_potential == doctest::Approx(rate / 2).epsilon(1e-12));
  }
  const auto half = trace_ray(f, Angle(1, 2), 3.0, 1e-4);
  CHECK(half.terminal != RayTerminal::Bifurcated);
  for (const auto& s : half.samples) CHECK(std::abs(s.point.imag()) < 1e-9);
  CHECK(half.samples.back().point.real() == doctest::Approx(-3.0).epsilon(1e-3));
  CHECK_THROWS_AS(ray_point(f, Angle(1, 4), 0.5), DomainError);
  CHECK_THROWS_AS(trace_ray(f, Angle(1, 4), 1.0, 0.5), DomainError);
}

TEST_CASE("ray functoriality") {
  CHECK(ray_functoriality_check(MonicPolynomial::power(2), Angle(1, 3), {0.5, 1.0}) < 1e-9);
  CHECK(ray_functoriality_check(MonicPolynomial::power(3), Angle(0, 1), {0.5, 1.0}) < 1e-12);
  CHECK(ray_functoriality_check(MonicPolynomial::quadratic({0, 1}), Angle(1, 6), {0.25, 0.5}) < 1e-8);
  CHECK(ray_functoriality_check(MonicPolynomial(3, {0.2, -0.5}), Angle(2, 7), {0.25, 0.5, 1.0}) < 1e-8);
}

TEST_CASE("rays of a Cantor Julia set land on the real line") {
  // level probes approach precritical levels geometrically and must not pass for landing
  const auto f = MonicPolynomial::quadratic(-6.0);
  auto p = trace_ray(f, Angle(1, 2), default_top_potential(f), 1e-12);
  REQUIRE(p.terminal == RayTerminal::Landed);
  CHECK(std::abs(p.terminal_point - cplx(-3.0)) < 1e-8);
  p = trace_ray(f, Angle(1, 3), default_top_potential(f), 1e-12);
  REQUIRE(p.terminal == RayTerminal::Landed);
  CHECK(std::abs(p.terminal_point - cplx(-2.0)) < 1e-6);
}

TEST_CASE("rays landing on the critical point") {
  // z^2 + i: rays 1/12 and 7/12 land at 0, where f loses half the digits
  const auto f = MonicPolynomial::quadratic({0.0, 1.0});
  for (auto t : {Angle(1, 12), Angle(7, 12)}) CHECK(std::abs(landing_point(f, t).point) < 1e-6);
}
