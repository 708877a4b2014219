#pragma once
// Discrete extremal-length estimate for the region between two circles:
// finite-difference Dirichlet problem (u = 0 on the inner circle, 1 on the
// outer) with Shortley-Weller cut-edge weights, then mod = 1 / energy.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

namespace oracle {

inline double circle_pair_modulus_fd(std::complex<double> c_out, double r_out,
                                     std::complex<double> c_in, double r_in, int n = 400) {
  const double lo_x = c_out.real() - r_out, lo_y = c_out.imag() - r_out;
  const double h = 2.0 * r_out / n;
  auto pt = [&](int i, int j) { return std::complex<double>(lo_x + i * h, lo_y + j * h); };
  // signed level functions: > 0 inside the domain
  auto phi_out = [&](std::complex<double> z) { return r_out - std::abs(z - c_out); };
  auto phi_in = [&](std::complex<double> z) { return std::abs(z - c_in) - r_in; };
  auto inside = [&](std::complex<double> z) { return phi_out(z) > 0 && phi_in(z) > 0; };

  const int m = n + 1;
  std::vector<int> idx(std::size_t(m) * m, -1);
  int count = 0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (inside(pt(i, j))) idx[std::size_t(j) * m + i] = count++;

  // fraction along the edge p->q at which the boundary is crossed, and its value
  auto cut = [&](std::complex<double> p, std::complex<double> q, double& value) {
    double a = 0.0, b = 1.0;
    const bool outer = phi_out(q) <= 0;
    auto g = [&](double t) { return outer ? phi_out(p + t * (q - p)) : phi_in(p + t * (q - p)); };
    for (int it = 0; it < 60; ++it) {
      const double c = 0.5 * (a + b);
      (g(c) > 0 ? a : b) = c;
    }
    value = outer ? 1.0 : 0.0;
    return std::max(0.5 * (a + b), 1e-3);
  };

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const int r = idx[std::size_t(j) * m + i];
      if (r < 0) continue;
      double diag = 0.0;
      for (int e = 0; e < 4; ++e) {
        const int ni = i + di[e], nj = j + dj[e];
        const int c = (ni >= 0 && nj >= 0 && ni < m && nj < m) ? idx[std::size_t(nj) * m + ni] : -1;
        if (c >= 0) {
          diag += 1.0;
          trip.emplace_back(r, c, -1.0);
        } else {
          double val = 0.0;
          const double theta = cut(pt(i, j), pt(ni, nj), val);
          diag += 1.0 / theta;
          rhs[r] += val / theta;
        }
      }
      trip.emplace_back(r, r, diag);
    }
  Eigen::SparseMatrix<double> A(count, count);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-10);
  cg.setMaxIterations(20000);
  cg.compute(A);
  Eigen::VectorXd u = cg.solve(rhs);

  // energy = u^T A u - 2 u^T b + sum over cut edges of value^2 / theta
  double boundary_term = 0.0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      if (idx[std::size_t(j) * m + i] < 0) continue;
      for (int e = 0; e < 4; ++e) {
        const int ni = i + di[e], nj = j + dj[e];
        const int c = (ni >= 0 && nj >= 0 && ni < m && nj < m) ? idx[std::size_t(nj) * m + ni] : -1;
        if (c >= 0) continue;
        double val = 0.0;
        const double theta = cut(pt(i, j), pt(ni, nj), val);
        boundary_term += val * val / theta;
      }
    }
  const double energy = u.dot(A * u) - 2.0 * u.dot(rhs) + boundary_term;
  return 1.0 / energy;
}

}  // namespace oracle
