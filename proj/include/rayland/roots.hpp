#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace rayland {

struct AberthOptions {
  int max_iterations = 800;
  int restarts = 6;
  double tol = 4e-16;
  std::uint64_t seed = 0x5eed;
};

/// All roots of sum_k coeffs[k] z^k (leading coefficient nonzero) by
/// Aberth-Ehrlich iteration. Throws NumericError when no restart converges.
std::vector<std::complex<double>> aberth_roots(std::span<const std::complex<double>> coeffs,
                                               const AberthOptions& opts = {});

}  // namespace rayland
