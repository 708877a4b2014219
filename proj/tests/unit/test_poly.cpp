#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "rayland/errors.hpp"
#include "rayland/polynomial.hpp"
#include "rayland/roots.hpp"

using namespace rayland;

namespace {

// Eigenvalues of the companion matrix of a monic polynomial (low to high).
std::vector<cplx> companion_roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

MonicPolynomial random_poly(unsigned d, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<cplx> a(d - 1);
  for (auto& x : a) x = {N(rng), N(rng)};
  return MonicPolynomial(d, a);
}

}  // namespace

TEST_CASE("evaluate examples") {
  CHECK(evaluate(MonicPolynomial::power(2), {1, 1}) == cplx(0, 2));
  CHECK(evaluate(MonicPolynomial::quadratic({0, 1}), 0.0) == cplx(0, 1));
  CHECK(evaluate(MonicPolynomial::power(3), 2.0) == cplx(8, 0));
  MonicPolynomial f(3, {1.0, -3.0});
  CHECK(f(2.0) == cplx(3.0));
  CHECK(f.derivative(2.0) == cplx(9.0));
  CHECK(f.taylor(2.0, 2) == cplx(6.0));
  CHECK(f.taylor(2.0, 3) == cplx(1.0));
  CHECK_THROWS_AS(MonicPolynomial(1, {}), DomainError);
  CHECK_THROWS_AS(MonicPolynomial(3, {1.0}), DomainError);
}

TEST_CASE("conjugate symmetry and derivative consistency") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  MonicPolynomial real(4, {1.5, -0.25, 2.0});
  for (int i = 0; i < 100; ++i) {
    const cplx z{N(rng), N(rng)};
    const cplx a = real(std::conj(z)), b = std::conj(real(z));
    CHECK(std::abs(a - b) <= 1e-13 * (1 + std::abs(a)));
  }
  for (unsigned d = 2; d <= 6; ++d) {
    const auto f = random_poly(d, rng);
    for (int i = 0; i < 20; ++i) {
      const cplx z{N(rng), N(rng)};
      const double h = 1e-5;
      const cplx fd = (f(z + h) - f(z - h)) / (2 * h);
      CHECK(std::abs(fd - f.derivative(z)) <= 1e-7 * (1 + std::abs(f.derivative(z))));
    }
  }
}

TEST_CASE("critical_points examples") {
  auto q = critical_points(MonicPolynomial::quadratic({0.3, -2}));
  REQUIRE(q.size() == 1);
  CHECK(std::abs(q[0].location) < 1e-12);
  auto cube = critical_points(MonicPolynomial::power(3));
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].multiplicity == 2);
  auto two = critical_points(MonicPolynomial(3, {0.0, -3.0}));
  REQUIRE(two.size() == 2);
  std::sort(two.begin(), two.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.location.real() < b.location.real(); });
  CHECK(std::abs(two[0].location + 1.0) < 1e-12);
  CHECK(std::abs(two[1].location - 1.0) < 1e-12);
  auto quint = critical_points(MonicPolynomial::power(5));
  REQUIRE(quint.size() == 1);
  CHECK(quint[0].multiplicity == 4);
}

TEST_CASE("critical_points agree with a companion-matrix oracle") {
  std::mt19937_64 rng(11);
  for (unsigned d = 2; d <= 6; ++d)
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_poly(d, rng);
      const auto c = f.coefficients();
      std::vector<cplx> dc;
      for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(static_cast<double>(k) * c[k]);
      const auto oracle = companion_roots(dc);
      const auto got = critical_points(f);
      unsigned total = 0;
      for (const auto& g : got) total += g.multiplicity;
      CHECK(total == d - 1);
      for (const auto& o : oracle) {
        double best = 1e300;
        for (const auto& g : got) best = std::min(best, std::abs(g.location - o));
        CHECK(best < 1e-10);
      }
    }
}

TEST_CASE("aberth_roots handles zeros and clusters") {
  std::vector<cplx> c{0.0, 0.0, -1.0, 0.0, 1.0};  // z^4 - z^2
  auto r = aberth_roots(c);
  CHECK(r.size() == 4);
  int zeros = 0;
  for (auto z : r) zeros += std::abs(z) < 1e-12;
  CHECK(zeros == 2);
}

TEST_CASE("orbit examples") {
  auto o = orbit(MonicPolynomial::quadratic({0, 1}), 0.0, 5, 100.0);
  REQUIRE(o.points.size() == 6);
  const cplx expect[] = {0.0, {0, 1}, {-1, 1}, {0, -1}, {-1, 1}, {0, -1}};
  for (int k = 0; k < 6; ++k) CHECK(o.points[static_cast<std::size_t>(k)] == expect[k]);
  CHECK_FALSE(o.escaped);
  auto e = orbit(MonicPolynomial::power(2), 2.0, 3, 100.0);
  CHECK(e.escaped);
  REQUIRE(e.points.size() == 3);
  CHECK(e.points[2] == cplx(16.0));
  auto fixed = orbit(MonicPolynomial::quadratic(-2.0), 2.0, 4, 100.0);
  CHECK(fixed.points.size() == 5);
  for (auto z : fixed.points) CHECK(z == cplx(2.0));
}
