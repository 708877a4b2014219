#include "rayland/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <optional>

#include "rayland/detail/ray_newton.hpp"
#include "rayland/potential.hpp"

namespace rayland {

const char* to_string(RayTerminal t) {
  switch (t) {
    case RayTerminal::Landed: return "landed";
    case RayTerminal::Bifurcated: return "bifurcated";
    case RayTerminal::Truncated: return "truncated";
  }
  return "?";
}

double default_top_potential(const MonicPolynomial& f) {
  const detail::LiftedPoly P(f);
  return std::log(4.0 * P.near_radius);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// (f^k)'(z) and (f^k)''(z).
std::pair<cplx, cplx> iterate_derivatives(const MonicPolynomial& f, cplx z, int k) {
  cplx F = z, F1 = 1.0, F2 = 0.0;
  for (int i = 0; i < k; ++i) {
    const cplx d1 = f.derivative(F);
    const cplx d2 = 2.0 * f.taylor(F, 2);
    F2 = d2 * F1 * F1 + d1 * F2;
    F1 = d1 * F1;
    F = f(F);
  }
  return {F1, F2};
}

struct Level {
  double potential;
  int k;  ///< f^{k-1} of the precritical point is critical
};

class Tracer {
 public:
  Tracer(const MonicPolynomial& f, const Angle& theta, const StepControl& ctrl)
      : f_(f), P_(f), T_(theta, f.degree()), ctrl_(ctrl) {
    if (ctrl_.detect_bifurcation) {
      const double d = f.degree();
      for (const auto& cv : critical_value_rates(f)) {
        if (cv.rate <= 0.0) continue;
        double lam = cv.rate / d;
        for (int k = 1; k < 4000 && lam > 1e-300; ++k, lam /= d) levels_.push_back({lam, k});
      }
      std::sort(levels_.begin(), levels_.end(),
                [](const Level& a, const Level& b) { return a.potential > b.potential; });
    }
  }

  void start(double s_top) {
    const cplx guess = std::exp(cplx(s_top, kTwoPi * T_.angle().to_double()));
    const auto r = detail::ray_newton(P_, guess, s_top, T_, 60);
    if (!r.converged) throw NumericError("trace_ray: Newton failed at the starting potential");
    z_ = r.z;
    s_ = s_top;
    lift_ = r.lift;
    while (next_level_ < levels_.size() && levels_[next_level_].potential >= s_) ++next_level_;
  }

  double s() const { return s_; }
  cplx z() const { return z_; }
  double gradient_norm() const { return std::abs(lift_.dlog); }
  double green_residual() const { return std::abs(lift_.green - s_); }

  /// One predictor-corrector step to exactly s_next. State is untouched on failure.
  bool step_to(double s_next) {
    const double ds = s_next - s_;
    const cplx pred = z_ + ds / lift_.dlog;
    const auto r = detail::ray_newton(P_, pred, s_next, T_, ctrl_.max_newton);
    if (!r.converged) return false;
    // A large correction means the predictor left the basin of this ray and
    // Newton may have settled on a sibling with the same d^n-fold angle.
    // Corrections inside the evaluation noise radius say nothing about that.
    const double noise = 1e3 * detail::evaluation_noise(r.lift, r.z);
    if (std::abs(r.z - pred) > std::max(0.25 * std::abs(pred - z_), noise)) return false;
    z_ = r.z;
    s_ = s_next;
    lift_ = r.lift;
    return true;
  }

  /// Robust descent to s_target, with step halving.
  void reach(double s_target) {
    double frac = 1.0;
    while (s_ > s_target) {
      const double full = std::max(s_ * rho(), s_target);
      double s_next = s_ - frac * (s_ - full);
      while (!step_to(s_next)) {
        frac *= 0.5;
        s_next = s_ - frac * (s_ - full);
        if (s_ - s_next < ctrl_.min_step * s_) throw NumericError("trace_ray: step size underflow");
      }
      frac = std::min(1.0, frac * 2.0);
      if (on_sample) on_sample();
    }
  }

  double rho() const { return s_ > ctrl_.fine_below ? ctrl_.rho : ctrl_.rho_fine; }

  /// Next bifurcation level strictly below s and at or above s_next.
  std::optional<Level> level_crossed(double s_next) {
    while (next_level_ < levels_.size() && levels_[next_level_].potential >= s_) ++next_level_;
    if (next_level_ < levels_.size() && levels_[next_level_].potential >= s_next)
      return levels_[next_level_];
    return std::nullopt;
  }
  void consume_level() { ++next_level_; }

  /// Walks toward the level and reports the precritical point if the ray runs into it.
  std::optional<cplx> probe_level(const Level& lv) {
    // Along a ray running into a precritical point of local degree m+1 the
    // gradient behaves like (s - level)^{m/(m+1)}; elsewhere it stays put.
    const double s0 = s_, g0 = gradient_norm();
    for (int j = 1; j <= 6; ++j) {
      const double sj = lv.potential * (1.0 + std::pow(10.0, -j));
      if (sj >= s_) continue;
      try {
        reach(sj);
      } catch (const NumericError&) {
        break;
      }
    }
    if (s_ >= s0 || !(s0 > lv.potential)) return std::nullopt;
    const double span = std::log((s0 - lv.potential) / (s_ - lv.potential));
    if (span < std::log(100.0)) return std::nullopt;
    const double beta = std::log(g0 / gradient_norm()) / span;
    if (!(beta > 0.25)) return std::nullopt;
    cplx p = z_;
    for (int it = 0; it < 100; ++it) {
      const auto [h, dh] = iterate_derivatives(f_, p, lv.k);
      if (dh == cplx(0.0)) break;
      const cplx step = h / dh;
      p -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(p))) break;
    }
    return p;
  }

  std::function<void()> on_sample;

 private:
  const MonicPolynomial& f_;
  detail::LiftedPoly P_;
  detail::AngleTargets T_;
  StepControl ctrl_;
  cplx z_;
  double s_ = 0.0;
  detail::Lift<cplx> lift_;
  std::vector<Level> levels_;
  std::size_t next_level_ = 0;
};

cplx aitken(cplx x0, cplx x1, cplx x2) {
  const cplx d1 = x1 - x0, d2 = x2 - x1;
  const cplx den = d2 - d1;
  if (std::abs(den) <= 1e-300) return x2;
  return x2 - d2 * d2 / den;
}

}  // namespace

RayPath trace_ray(const MonicPolynomial& f, const Angle& theta, double s_start, double s_end,
                  const StepControl& ctrl) {
  if (!(s_start > s_end) || s_end < 0.0) throw DomainError("trace_ray: need s_start > s_end >= 0");
  if (s_start <= max_critical_rate(f))
    throw DomainError("trace_ray: s_start must lie above every critical-value rate");

  RayPath path;
  path.angle = theta;
  Tracer tr(f, theta, ctrl);
  tr.start(std::max(s_start, default_top_potential(f)));

  std::vector<cplx> estimates;
  bool done = false;
  bool probing = false;
  std::size_t regular = 0;  // consecutive samples taken outside level probes
  auto record = [&] {
    path.samples.push_back({tr.s(), tr.z(), tr.green_residual()});
    regular = probing ? 0 : regular + 1;
    const auto& sm = path.samples;
    if (!ctrl.detect_landing || regular < 3) return;
    const std::size_t n = sm.size();
    estimates.push_back(aitken(sm[n - 3].point, sm[n - 2].point, sm[n - 1].point));
    const double inc = std::abs(sm[n - 1].point - sm[n - 2].point);
    const double prev = std::abs(sm[n - 2].point - sm[n - 3].point);
    path.decay_ratio = prev > 0.0 ? inc / prev : 0.0;
    const std::size_t m = estimates.size();
    // the last sample must itself be close, so that slowly modulated tails
    // (rotation around a periodic landing point) cannot fake agreement
    if (m >= 3 && path.decay_ratio < 1.0 &&
        std::abs(sm[n - 1].point - estimates[m - 1]) < 100.0 * ctrl.landing_tol &&
        std::abs(estimates[m - 1] - estimates[m - 2]) < ctrl.landing_tol &&
        std::abs(estimates[m - 2] - estimates[m - 3]) < ctrl.landing_tol) {
      path.terminal = RayTerminal::Landed;
      path.terminal_point = estimates[m - 1];
      done = true;
    }
  };

  auto snapshot_error = [&](const NumericError& e) {
    path.terminal = RayTerminal::Truncated;
    path.reason = e.what();
    return TraceError(e.what(), path);
  };

  try {
    tr.reach(s_start);
    record();
    tr.on_sample = [&] { record(); };
    while (!done && tr.s() > s_end) {
      if (path.samples.size() >= ctrl.max_samples) {
        path.reason = "sample cap reached";
        return path;
      }
      const double s_next = std::max(tr.s() * tr.rho(), s_end);
      if (auto lv = tr.level_crossed(s_next)) {
        probing = true;
        auto p = tr.probe_level(*lv);
        probing = false;
        if (p) {
          path.terminal = RayTerminal::Bifurcated;
          path.terminal_point = *p;
          path.bifurcation_potential = lv->potential;
          path.reason = "ray meets a precritical point";
          return path;
        }
        tr.consume_level();
        estimates.clear();  // probe samples crowd the level and would fake convergence
        continue;
      }
      tr.reach(s_next);
    }
  } catch (const NumericError& e) {
    throw snapshot_error(e);
  }
  if (path.terminal != RayTerminal::Landed) path.reason = "reached s_end";
  return path;
}

cplx ray_point(const MonicPolynomial& f, const Angle& theta, double s) {
  if (!(s > 0.0)) throw DomainError("ray_point: potential must be positive");
  StepControl ctrl;
  Tracer tr(f, theta, ctrl);
  tr.start(std::max(s, default_top_potential(f)));
  while (tr.s() > s) {
    const double s_next = std::max(tr.s() * tr.rho(), s);
    if (auto lv = tr.level_crossed(s_next)) {
      if (tr.probe_level(*lv))
        throw DomainError("ray_point: the ray bifurcates above the requested potential");
      tr.consume_level();
      continue;
    }
    tr.reach(s_next);
  }
  return tr.z();
}

LandingResult landing_point(const MonicPolynomial& f, const Angle& theta, double tol,
                            StepControl ctrl) {
  if (max_critical_rate(f) > 0.0)
    throw DomainError("landing_point: the Julia set is not connected");
  ctrl.landing_tol = tol;
  ctrl.detect_landing = true;
  const auto path = trace_ray(f, theta, default_top_potential(f), 1e-30, ctrl);
  if (path.terminal != RayTerminal::Landed)
    throw NumericError("landing_point: increments did not settle (" + path.reason + ")");
  LandingResult out;
  out.point = path.terminal_point;
  out.decay_ratio = path.decay_ratio;
  out.final_potential = path.samples.back().potential;
  out.samples = path.samples.size();
  const auto n = path.samples.size();
  out.last_increment = std::abs(path.samples[n - 1].point - path.samples[n - 2].point);
  return out;
}

double ray_functoriality_check(const MonicPolynomial& f, const Angle& theta,
                               const std::vector<double>& s_grid) {
  const unsigned d = f.degree();
  const Angle dtheta = theta.times(d);
  double worst = 0.0;
  for (double s : s_grid) {
    const cplx a = f(ray_point(f, theta, s));
    const cplx b = ray_point(f, dtheta, d * s);
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

}  // namespace rayland
