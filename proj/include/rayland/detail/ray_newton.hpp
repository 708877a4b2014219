#pragma once

// Newton machinery shared by the potential, ray and shift-locus code.

#include <complex>
#include <functional>
#include <vector>

#include "rayland/angle.hpp"
#include "rayland/detail/lift.hpp"
#include "rayland/polynomial.hpp"

namespace rayland::detail {

/// Coefficients in the form the lift wants, plus the near-identity radius.
struct LiftedPoly {
  explicit LiftedPoly(const MonicPolynomial& f, const LiftConfig& cfg = {});
  std::vector<cplx> c;
  unsigned d;
  double near_radius;
  LiftConfig cfg;

  Lift<cplx> operator()(cplx z) const {
    return lift<cplx>(std::span<const cplx>(c), z, near_radius, cfg);
  }
};

/// Wraps Im into [-pi, pi].
inline cplx wrap_im(cplx w) {
  return {w.real(), std::remainder(w.imag(), 2.0 * std::numbers::pi)};
}

/// Lifted ray residual (log psi(z) - s - 2 pi i theta) on the branch closest to
/// the target, using frac(d^n theta) for the lift depth n.
cplx ray_residual(const Lift<cplx>& l, unsigned d, double s, double frac_dn_theta);

/// Caches frac(d^n theta) exactly.
class AngleTargets {
 public:
  AngleTargets(Angle theta, unsigned d) : theta_(std::move(theta)), d_(d) {}
  double operator()(int n);
  const Angle& angle() const { return theta_; }

 private:
  Angle theta_;
  unsigned d_;
  std::vector<double> cache_;
};

struct NewtonResult {
  cplx z;
  bool converged = false;
  int iterations = 0;
  Lift<cplx> lift;
  double residual = 0.0;  ///< |log psi(z) - target| on the nearest branch
};

/// Solves log psi(z) = s + 2 pi i theta starting at z0.
NewtonResult ray_newton(const LiftedPoly& P, cplx z0, double s, AngleTargets& theta,
                        int max_iter = 40);

/// Same, with the angle known only as frac(d^m theta) for a fixed depth m.
/// Points whose lift depth exceeds m are rejected.
NewtonResult ray_newton_at_depth(const LiftedPoly& P, cplx z0, double s, int m, double frac_m,
                                 int max_iter = 40);

/// Convergence floor for a Newton residual at this lift.
double residual_floor(const Lift<cplx>& l, cplx z);
/// Size of the displacement of z that roundoff in evaluating log psi can fake.
double evaluation_noise(const Lift<cplx>& l, cplx z);

}  // namespace rayland::detail
