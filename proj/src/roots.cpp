#include "rayland/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rayland/errors.hpp"

namespace rayland {

namespace {

using cplx = std::complex<double>;

struct Eval {
  cplx p, dp;
  double bound;  // sum |c_k| |z|^k, the rounding scale of p(z)
};

Eval horner(std::span<const cplx> c, cplx z) {
  cplx p = c.back(), dp = 0.0;
  double b = std::abs(c.back());
  const double az = std::abs(z);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
    b = b * az + std::abs(c[k]);
  }
  return {p, dp, b};
}

}  // namespace

std::vector<cplx> aberth_roots(std::span<const cplx> coeffs, const AberthOptions& opts) {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == cplx(0.0)) --n;
  if (n < 2) return {};
  std::vector<cplx> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n));
  const std::size_t deg = n - 1;

  // Strip roots at the origin exactly; Aberth handles them poorly when the
  // constant term underflows.
  std::size_t zeros = 0;
  while (zeros < deg && c[zeros] == cplx(0.0)) ++zeros;
  std::vector<cplx> roots(zeros, cplx(0.0));
  if (zeros == deg) return roots;
  std::vector<cplx> q(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  const std::size_t m = q.size() - 1;

  // Cauchy-type radius for the initial circle.
  double radius = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    radius = std::max(radius, std::pow(std::abs(q[k] / q[m]), 1.0 / static_cast<double>(m - k)));
  radius = std::max(radius, 1e-3);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  constexpr double eps = 2.220446049250313e-16;

  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    std::vector<cplx> z(m);
    const double offset = 0.4 + 0.37 * attempt;
    for (std::size_t i = 0; i < m; ++i) {
      double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m) + offset;
      double rad = radius * (1.0 + (attempt ? 0.1 * jitter(rng) : 0.0));
      z[i] = std::polar(rad, ang);
    }
    std::vector<bool> done(m, false);
    bool converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
      std::size_t n_done = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (done[i]) {
          ++n_done;
          continue;
        }
        Eval e = horner(q, z[i]);
        if (std::abs(e.p) <= 8.0 * eps * e.bound) {
          done[i] = true;
          ++n_done;
          continue;
        }
        if (e.dp == cplx(0.0)) {
          z[i] += cplx(radius * 1e-3 * jitter(rng), radius * 1e-3 * jitter(rng));
          continue;
        }
        cplx w = e.p / e.dp;
        cplx s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
          if (j != i) {
            cplx diff = z[i] - z[j];
            if (diff != cplx(0.0)) s += 1.0 / diff;
          }
        cplx denom = 1.0 - w * s;
        cplx step = denom == cplx(0.0) ? w : w / denom;
        z[i] -= step;
        if (std::abs(step) <= opts.tol * std::abs(z[i])) done[i] = true;
      }
      if (n_done == m) {
        converged = true;
        break;
      }
    }
    if (converged) {
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
  }
  throw NumericError("Aberth iteration did not converge");
}

}  // namespace rayland
