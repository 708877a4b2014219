#pragma once
// Brute-force pixel oracle for preimage components: marks pixels whose
// centre lands in the disk after k steps and counts 8-connected blobs.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "rayland/polynomial.hpp"

namespace oracle {

struct Blob {
  double xmin, xmax, ymin, ymax;
  double extent() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

struct GridCount {
  std::vector<std::vector<Blob>> levels;  // per k = 1..depth
};

inline GridCount grid_components(const rayland::MonicPolynomial& f, std::complex<double> center,
                                 double radius, int depth, int res, double lo = -2.0,
                                 double hi = 2.0) {
  const double h = (hi - lo) / res;
  const std::size_t N = static_cast<std::size_t>(res) * res;
  std::vector<std::complex<double>> z(N);
  for (int j = 0; j < res; ++j)
    for (int i = 0; i < res; ++i) z[std::size_t(j) * res + i] = {lo + (i + 0.5) * h, lo + (j + 0.5) * h};
  GridCount out;
  std::vector<std::uint8_t> mask(N);
  std::vector<std::int32_t> stack;
  for (int k = 1; k <= depth; ++k) {
    for (std::size_t p = 0; p < N; ++p) {
      if (std::abs(z[p]) < 1e6) z[p] = f(z[p]);
      mask[p] = std::abs(z[p] - center) < radius;
    }
    std::vector<Blob> blobs;
    for (std::size_t p = 0; p < N; ++p) {
      if (!mask[p]) continue;
      Blob b{1e9, -1e9, 1e9, -1e9};
      mask[p] = 0;
      stack.assign(1, static_cast<std::int32_t>(p));
      while (!stack.empty()) {
        const std::int32_t q = stack.back();
        stack.pop_back();
        const int qi = q % res, qj = q / res;
        b.xmin = std::min(b.xmin, lo + qi * h);
        b.xmax = std::max(b.xmax, lo + (qi + 1) * h);
        b.ymin = std::min(b.ymin, lo + qj * h);
        b.ymax = std::max(b.ymax, lo + (qj + 1) * h);
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            const int ni = qi + di, nj = qj + dj;
            if (ni < 0 || nj < 0 || ni >= res || nj >= res) continue;
            const std::size_t r = std::size_t(nj) * res + ni;
            if (mask[r]) {
              mask[r] = 0;
              stack.push_back(static_cast<std::int32_t>(r));
            }
          }
      }
      blobs.push_back(b);
    }
    out.levels.push_back(std::move(blobs));
  }
  return out;
}

}  // namespace oracle
