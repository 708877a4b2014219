#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rayland/polynomial.hpp"

namespace rayland {

struct PotentialOptions {
  double big_radius = 1e12;  ///< orbit is followed until |f^N(z)| exceeds this
  int max_iterations = 2048;
};

struct PotentialSample {
  cplx point;
  double green = 0.0;
  int iterations_used = 0;
  cplx gradient{0.0};   ///< dG/dx + i dG/dy
  bool escaping = false;  ///< false means bounded up to the iteration cap; green is then 0
};

/// G_f(z). `tol` bounds the truncation error of the escape-region product and
/// raises big_radius when needed.
PotentialSample green(const MonicPolynomial& f, cplx z, double tol = 1e-14,
                      const PotentialOptions& opts = {});

/// Gradient of G as a complex number. Throws DomainError at non-escaping points.
cplx green_gradient(const MonicPolynomial& f, cplx z);

struct BottcherValue {
  cplx point;
  cplx value;                 ///< psi_f(point)
  cplx log_value;             ///< a logarithm of value: Re = G, Im continuous along witnesses
  std::optional<cplx> branch_witness;
};

/// psi_f(z). With a witness the d^n-th root branch nearest to it is taken.
/// Without one the branch is found by following the gradient line of G up to
/// the near-identity region, which is only accepted when G(z) exceeds every
/// critical-value rate; below that a BranchError is thrown.
BottcherValue bottcher(const MonicPolynomial& f, cplx z,
                       std::optional<cplx> branch_witness = std::nullopt);

/// log psi_f(z) with imaginary part in [0, 2pi), branch found by climbing the
/// external ray through z. No domain restriction beyond escape; used for
/// recovering ray angles below critical levels.
cplx log_bottcher_by_climb(const MonicPolynomial& f, cplx z);

/// Level set G = r as n_samples points at external angles k/n_samples.
/// Requires r above every critical-value rate.
std::vector<cplx> equipotential(const MonicPolynomial& f, double r, int n_samples);

struct CriticalValueRate {
  cplx value;
  double rate = 0.0;
};

/// G at every distinct critical value.
std::vector<CriticalValueRate> critical_value_rates(const MonicPolynomial& f);

/// Largest critical-value rate (0 for connected Julia sets).
double max_critical_rate(const MonicPolynomial& f);

}  // namespace rayland
