#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rayland/errors.hpp"
#include "rayland/polynomial.hpp"
#include "rayland/portrait.hpp"

namespace rayland {

/// Solver unknowns: one critical point per portrait block (same order as the
/// canonical blocks) and the constant term.
struct ShiftState {
  std::vector<cplx> critical_points;
  cplx a0{0.0};
};

struct ParamRayPoint {
  double r = 0.0;
  MonicPolynomial poly = MonicPolynomial::power(2);
  double residual = 0.0;   ///< max-norm of the Newton system at the solution
  int newton_steps = 0;
  ShiftState state;        ///< doubles as the branch witness for the next solve
  std::vector<cplx> log_psi_values;  ///< log psi at each critical value, Im in [0, 2pi)
};

struct SolverOptions {
  double tol = 1e-11;        ///< accepted residual
  int max_iterations = 80;
  bool verify_branch = true;  ///< confirm critical-value angles by climbing rays
  double angle_tol = 1e-8;
};

/// f_r(Theta) from a seed state. Throws NumericError on divergence or
/// critical-point collision and BranchError when a critical value lands on a
/// sibling ray.
ParamRayPoint solve_f_r(const CriticalPortrait& portrait, double r, const ShiftState& guess,
                        const SolverOptions& opts = {});

/// Same with a polynomial seed; its critical points are matched to blocks by
/// multiplicity and critical-value angle.
ParamRayPoint solve_f_r(const CriticalPortrait& portrait, double r, const MonicPolynomial& guess,
                        const SolverOptions& opts = {});

/// Seed state at large r: critical values at e^{r + 2 pi i m_d(theta_j)}.
/// Several critical-point configurations share those values when there is more
/// than one block; the one reproducing the portrait is selected.
ShiftState initial_guess(const CriticalPortrait& portrait, double r_large = 10.0);

/// Polynomial for a state (drops the vanishing z^{d-1} coefficient).
MonicPolynomial polynomial_from_state(const CriticalPortrait& portrait, const ShiftState& s);

class ContinuationError : public NumericError {
 public:
  ContinuationError(const std::string& what, std::vector<ParamRayPoint> partial)
      : NumericError(what), partial_(std::move(partial)) {}
  const std::vector<ParamRayPoint>& partial() const { return partial_; }
  double last_good_r() const { return partial_.empty() ? 0.0 : partial_.back().r; }

 private:
  std::vector<ParamRayPoint> partial_;
};

struct ContinuationOptions {
  double r_start = 10.0;   ///< where the ray is entered when r_from is smaller
  int max_refinements = 10;
  SolverOptions solver;
};

/// Points r_k = r_from rho^k down to r_to (the last one exactly r_to).
std::vector<ParamRayPoint> continue_param_ray(const CriticalPortrait& portrait, double r_from,
                                              double r_to, double rho = 0.5,
                                              const ContinuationOptions& opts = {});

struct LandingDiagnostics {
  std::vector<double> r_schedule;
  std::vector<MonicPolynomial> limits;
  std::vector<double> cauchy_increments;
  MonicPolynomial extrapolated_limit = MonicPolynomial::power(2);
  double decay_ratio = 1.0;
  bool geometric = false;       ///< false flags sub-geometric (parabolic-type) decay
  double error_estimate = 0.0;  ///< size of the extrapolation correction
  std::string verdict;          ///< "landed" or "inconclusive"
  std::string method;           ///< extrapolation used
};

struct LandingOptions {
  double r_from = 10.0;
  double rho = 0.9;  // fine enough that parabolic decay shows ratios near 1
  double geometric_threshold = 0.95;
  ContinuationOptions continuation;
};

LandingDiagnostics landing_probe(const CriticalPortrait& portrait, double r_min, double tol = 1e-3,
                                 const LandingOptions& opts = {});

/// Angles whose rays bifurcate at each critical point, as raw reals.
std::vector<std::vector<double>> portrait_angles(const MonicPolynomial& f);

/// Critical portrait of a shift-locus polynomial with equal critical escape
/// rates. r_hint > 0 additionally checks the common rate. Angles are snapped
/// to rationals with denominator <= max_den inside `window`.
CriticalPortrait portrait_of(const MonicPolynomial& f, double r_hint = 0.0,
                             std::int64_t max_den = 1000000, double window = 1e-7);

}  // namespace rayland
