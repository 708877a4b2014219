#include <doctest.h>

#include <cmath>

#include "rayland/errors.hpp"
#include "rayland/potential.hpp"
#include "rayland/shift_locus.hpp"

using namespace rayland;

namespace {

CriticalPortrait quad(std::int64_t p, std::int64_t q) { return quadratic_portrait(Angle(p, q)); }

cplx param(const ParamRayPoint& pt) { return pt.poly.lower()[0]; }

// real c on (lo, hi) with G_c(c) = r, by bisection; G_c(c) is monotone in |c| there
double bisect_real(double r, double lo, double hi) {
  auto g = [&](double c) { return green(MonicPolynomial::quadratic(c), c).green - r; };
  const bool increasing = g(hi) > g(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((g(mid) > 0) == increasing ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("theta = 1/2 matches real bisection") {
  const auto P = quad(1, 2);
  auto path = continue_param_ray(P, 10.0, 0.05, 0.5);
  for (const auto& pt : path) {
    const double r = pt.r;
    const double want = bisect_real(r, -2.0 - 20.0 * std::exp(2 * r), -2.0);
    CHECK(std::abs(param(pt).imag()) < 1e-12);
    CHECK(param(pt).real() == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("theta = 0 matches real bisection") {
  const auto P = quad(0, 1);
  auto path = continue_param_ray(P, 10.0, 0.05, 0.5);
  for (const auto& pt : path) CHECK(std::abs(param(pt).imag()) < 1e-10);
  const auto& last = path.back();
  CHECK(last.r == doctest::Approx(0.05));
  CHECK(param(last).real() ==
        doctest::Approx(bisect_real(0.05, 0.25, 0.25 + 20.0 * std::exp(0.1))).epsilon(1e-10));
}

TEST_CASE("critical value sits at the prescribed escape rate and angle") {
  for (auto [p, q] : {std::pair{1, 6}, {1, 3}, {2, 7}, {3, 5}}) {
    const auto P = quad(p, q);
    const double theta = double(p) / q;
    auto path = continue_param_ray(P, 10.0, 0.5);
    const auto& pt = path.back();
    CHECK(pt.residual < 1e-9);
    const cplx c = param(pt);
    CHECK(green(pt.poly, c).green == doctest::Approx(0.5).epsilon(1e-10));
    auto ang = portrait_angles(pt.poly);
    REQUIRE(ang.size() == 1);
    REQUIRE(ang[0].size() == 2);
    CHECK(ang[0][0] == doctest::Approx(theta / 2).epsilon(1e-9));
    CHECK(ang[0][1] == doctest::Approx(theta / 2 + 0.5).epsilon(1e-9));
    CHECK(portrait_of(pt.poly) == P);
  }
}

TEST_CASE("conjugate portraits give conjugate polynomials") {
  auto a = continue_param_ray(quad(1, 6), 10.0, 0.3).back();
  auto b = continue_param_ray(quad(5, 6), 10.0, 0.3).back();
  CHECK(std::abs(param(a) - std::conj(param(b))) < 1e-10);
}

TEST_CASE("distinct portraits give distinct polynomials") {
  std::vector<cplx> cs;
  for (auto [p, q] : {std::pair{1, 6}, {1, 3}, {1, 2}, {0, 1}, {2, 3}, {1, 5}})
    cs.push_back(param(continue_param_ray(quad(p, q), 10.0, 1.0).back()));
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) CHECK(std::abs(cs[i] - cs[j]) > 1e-3);
}

TEST_CASE("cubic portraits round trip") {
  CriticalPortrait P{3, {{{Angle(1, 9), Angle(4, 9), Angle(7, 9)}}}};
  P.canonicalize();
  auto path = continue_param_ray(P, 10.0, 0.5, 0.5);
  for (const auto& pt : path) {
    CHECK(pt.residual < 1e-9);
    CHECK(portrait_of(pt.poly) == P);
  }
  CriticalPortrait Q{3, {{{Angle(0, 1), Angle(1, 3)}}, {{Angle(1, 2), Angle(5, 6)}}}};
  Q.canonicalize();
  auto pt = solve_f_r(Q, 1.0, initial_guess(Q, 1.0));
  CHECK(portrait_of(pt.poly) == Q);
  for (const auto& cr : critical_value_rates(pt.poly)) CHECK(cr.rate == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solver errors") {
  CriticalPortrait bad{3, {{{Angle(0, 1), Angle(1, 2)}}}};
  CHECK_THROWS_AS(solve_f_r(bad, 1.0, ShiftState{{0.0}, 1.0}), DomainError);
  CHECK_THROWS_AS(continue_param_ray(quad(1, 6), 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(solve_f_r(quad(1, 6), -1.0, ShiftState{{0.0}, 1.0}), DomainError);
}

TEST_CASE("landing probe on the real tip") {
  auto diag = landing_probe(quad(1, 2), 1e-4, 1e-4);
  CHECK(diag.verdict == "landed");
  CHECK(std::abs(diag.extrapolated_limit.lower()[0] - cplx(-2.0)) < 1e-4);
}

TEST_CASE("portrait_of outside the shift locus") {
  CHECK_THROWS_AS(portrait_of(MonicPolynomial::quadratic(-1.0)), DomainError);
  CHECK_THROWS_AS(portrait_of(MonicPolynomial(3, {cplx(0.0), cplx(-3.0)})), DomainError);
}
