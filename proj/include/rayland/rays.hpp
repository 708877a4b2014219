#pragma once

#include <limits>
#include <string>
#include <vector>

#include "rayland/angle.hpp"
#include "rayland/errors.hpp"
#include "rayland/polynomial.hpp"

namespace rayland {

struct StepControl {
  double rho = 0.85;          ///< potential ratio between samples
  double rho_fine = 0.95;     ///< ratio used below fine_below
  double fine_below = 1e-2;
  double min_step = 1e-12;    ///< smallest relative potential decrement before giving up
  int max_newton = 40;
  double landing_tol = 1e-9;  ///< agreement needed between consecutive Aitken estimates
  bool detect_landing = true;
  bool detect_bifurcation = true;
  std::size_t max_samples = 200000;
};

struct RaySample {
  double potential = 0.0;
  cplx point;
  double green_residual = 0.0;  ///< |G(point) - potential|
};

enum class RayTerminal { Landed, Bifurcated, Truncated };
const char* to_string(RayTerminal t);

struct RayPath {
  Angle angle;
  std::vector<RaySample> samples;
  RayTerminal terminal = RayTerminal::Truncated;
  cplx terminal_point{std::numeric_limits<double>::quiet_NaN(), 0.0};
  double bifurcation_potential = 0.0;  ///< r_f(theta) when Bifurcated
  double decay_ratio = std::numeric_limits<double>::quiet_NaN();
  std::string reason;
};

/// Thrown when the corrector cannot make progress; carries the samples traced so far.
class TraceError : public NumericError {
 public:
  TraceError(const std::string& what, RayPath partial)
      : NumericError(what), partial_(std::move(partial)) {}
  const RayPath& partial() const { return partial_; }

 private:
  RayPath partial_;
};

/// Potential at which tracing starts by default: the orbit of e^{s} is in the
/// near-identity region from the first step.
double default_top_potential(const MonicPolynomial& f);

/// Samples of R_f(theta) for potentials from s_start down to s_end. Tracing
/// starts at max(s_start, default_top_potential) and only samples at or below
/// s_start are recorded. Stops early on landing or bifurcation.
RayPath trace_ray(const MonicPolynomial& f, const Angle& theta, double s_start, double s_end,
                  const StepControl& ctrl = {});

/// The point of R_f(theta) at potential s. Throws DomainError when the ray
/// bifurcates above s.
cplx ray_point(const MonicPolynomial& f, const Angle& theta, double s);

struct LandingResult {
  cplx point;
  double decay_ratio = 0.0;
  double final_potential = 0.0;
  std::size_t samples = 0;
  double last_increment = 0.0;
};

/// Landing point of R_f(theta) for f with connected Julia set.
LandingResult landing_point(const MonicPolynomial& f, const Angle& theta, double tol = 1e-9,
                            StepControl ctrl = {});

/// max_s |f(R_f(theta)(s)) - R_f(d theta)(d s)|.
double ray_functoriality_check(const MonicPolynomial& f, const Angle& theta,
                               const std::vector<double>& s_grid);

}  // namespace rayland
