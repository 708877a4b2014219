#include "rayland/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rayland/detail/ray_newton.hpp"
#include "rayland/errors.hpp"
#include "rayland/rays.hpp"

namespace rayland {

namespace detail {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;
}  // namespace

LiftedPoly::LiftedPoly(const MonicPolynomial& f, const LiftConfig& config)
    : c(f.coefficients()), d(f.degree()), cfg(config) {
  near_radius = near_identity_radius<cplx>(std::span<const cplx>(c));
}

cplx ray_residual(const Lift<cplx>& l, unsigned d, double s, double frac_dn_theta) {
  (void)d;
  const double D = 1.0 / l.scale;
  const cplx r = l.log_psi_n - cplx(D * s, kTwoPi * frac_dn_theta);
  return wrap_im(r) * l.scale;
}

double AngleTargets::operator()(int n) {
  while (static_cast<int>(cache_.size()) <= n)
    cache_.push_back(theta_.frac_times_pow(d_, static_cast<unsigned>(cache_.size())));
  return cache_[static_cast<std::size_t>(n)];
}

double residual_floor(const Lift<cplx>& l, cplx z) {
  // roundoff in log psi itself, plus the effect of rounding z
  return 64.0 * kEps * ((std::abs(l.log_psi_n) + kTwoPi) * l.scale + std::abs(z) * std::abs(l.dlog));
}

double evaluation_noise(const Lift<cplx>& l, cplx z) {
  // rounding anywhere along the orbit, mapped back to a displacement of z
  const double cond = std::max(std::abs(z), l.conditioning);
  return 64.0 * kEps * ((std::abs(l.log_psi_n) + kTwoPi) * l.scale / std::abs(l.dlog) + cond);
}

namespace {

template <class Residual>
NewtonResult newton_loop(const LiftedPoly& P, cplx z, int max_iter, Residual&& residual) {
  NewtonResult out;
  double prev = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int it = 0; it < max_iter; ++it) {
    const auto l = P(z);
    if (!l.escaped) return out;
    cplx delta;
    if (!residual(l, delta)) return out;
    out.z = z;
    out.lift = l;
    out.iterations = it;
    out.residual = std::abs(delta);
    const double floor = residual_floor(l, z);
    if (out.residual <= floor) {
      out.converged = true;
      return out;
    }
    // Stagnation above the floor still counts once the residual stops
    // improving, up to what roundoff along the whole orbit can produce.
    const double noisy = 1e3 * std::max(floor, evaluation_noise(l, z) * std::abs(l.dlog));
    if (out.residual <= noisy && out.residual >= 0.5 * prev) {
      if (++settled >= 2) {
        out.converged = true;
        return out;
      }
    }
    prev = out.residual;
    if (l.dlog == cplx(0.0)) return out;
    z -= delta / l.dlog;
  }
  out.converged = out.residual <= 1e3 * std::max(residual_floor(out.lift, out.z),
                                                evaluation_noise(out.lift, out.z) * std::abs(out.lift.dlog));
  return out;
}

}  // namespace

NewtonResult ray_newton(const LiftedPoly& P, cplx z0, double s, AngleTargets& theta,
                        int max_iter) {
  return newton_loop(P, z0, max_iter, [&](const Lift<cplx>& l, cplx& delta) {
    delta = ray_residual(l, P.d, s, theta(l.n));
    return true;
  });
}

NewtonResult ray_newton_at_depth(const LiftedPoly& P, cplx z0, double s, int m, double frac_m,
                                 int max_iter) {
  const double Dm = std::pow(static_cast<double>(P.d), m);
  return newton_loop(P, z0, max_iter, [&](const Lift<cplx>& l, cplx& delta) {
    if (l.n > m) return false;
    const double up = std::pow(static_cast<double>(P.d), m - l.n);
    const cplx r = l.log_psi_n * up - cplx(Dm * s, kTwoPi * frac_m);
    delta = wrap_im(r) / Dm;
    return true;
  });
}

}  // namespace detail

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double unit_frac(double x) {
  x -= std::floor(x);
  return x >= 1.0 ? 0.0 : x;
}

detail::LiftConfig config_for(const MonicPolynomial& f, double tol, const PotentialOptions& opts) {
  double s = 1.0;
  for (const auto& a : f.lower()) s += std::abs(a);
  detail::LiftConfig cfg;
  cfg.big_radius = std::max(opts.big_radius, std::sqrt(s / std::max(tol, 1e-300)));
  cfg.big_radius = std::min(cfg.big_radius, 1e150);
  cfg.max_iterations = opts.max_iterations;
  return cfg;
}

}  // namespace

PotentialSample green(const MonicPolynomial& f, cplx z, double tol, const PotentialOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("green: tol must be positive");
  const detail::LiftedPoly P(f, config_for(f, tol, opts));
  const auto l = P(z);
  PotentialSample out;
  out.point = z;
  out.iterations_used = l.iterations;
  out.escaping = l.escaped;
  if (l.escaped) {
    out.green = std::max(0.0, l.green);
    out.gradient = std::conj(l.dlog);
  }
  return out;
}

cplx green_gradient(const MonicPolynomial& f, cplx z) {
  const auto g = green(f, z);
  if (!g.escaping) throw DomainError("green_gradient: point does not escape");
  return g.gradient;
}

cplx log_bottcher_by_climb(const MonicPolynomial& f, cplx z) {
  const detail::LiftedPoly P(f);
  const auto l0 = P(z);
  if (!l0.escaped) throw DomainError("bottcher: point does not escape");
  const double g0 = l0.green;
  if (l0.n == 0) return {g0, kTwoPi * unit_frac(l0.log_psi_n.imag() / kTwoPi)};

  int m = l0.n;
  double frac_m = unit_frac(l0.log_psi_n.imag() / kTwoPi);
  cplx w = z;
  cplx g = l0.dlog;
  double s = g0;
  double ds = 0.25 * s;
  for (int guard = 0; guard < 100000; ++guard) {
    const double s_new = s + ds;
    const cplx w1 = w + ds / g;
    const auto r = detail::ray_newton_at_depth(P, w1, s_new, m, frac_m);
    if (!r.converged || std::abs(r.z - w1) > 0.25 * std::abs(w1 - w)) {
      ds *= 0.5;
      if (ds < 1e-13 * s) throw NumericError("bottcher: gradient-line climb stalled");
      continue;
    }
    w = r.z;
    s = s_new;
    g = r.lift.dlog;
    ds = std::min(ds * 1.5, 0.5 * s);
    if (r.lift.n < m) {
      m = r.lift.n;
      frac_m = unit_frac(r.lift.log_psi_n.imag() / kTwoPi);
      if (m == 0) return {g0, kTwoPi * frac_m};
    }
  }
  throw NumericError("bottcher: gradient-line climb did not reach the near-identity region");
}

BottcherValue bottcher(const MonicPolynomial& f, cplx z, std::optional<cplx> branch_witness) {
  BottcherValue out;
  out.point = z;
  out.branch_witness = branch_witness;
  if (branch_witness) {
    const detail::LiftedPoly P(f);
    const auto l = P(z);
    if (!l.escaped) throw DomainError("bottcher: point does not escape");
    const double D = 1.0 / l.scale;
    const double k = std::round((D * std::arg(*branch_witness) - l.log_psi_n.imag()) / kTwoPi);
    out.log_value = {l.green, (l.log_psi_n.imag() + kTwoPi * k) * l.scale};
  } else {
    const auto g = green(f, z);
    if (!g.escaping) throw DomainError("bottcher: point does not escape");
    if (g.green <= max_critical_rate(f))
      throw BranchError("bottcher: point lies below the critical-value level; supply a witness");
    out.log_value = log_bottcher_by_climb(f, z);
  }
  out.value = std::exp(out.log_value);
  return out;
}

std::vector<cplx> equipotential(const MonicPolynomial& f, double r, int n_samples) {
  if (n_samples < 8) throw DomainError("equipotential: need at least 8 samples");
  if (!(r > max_critical_rate(f)))
    throw DomainError("equipotential: level must lie above every critical-value rate");
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) pts.push_back(ray_point(f, Angle(k, n_samples), r));
  return pts;
}

std::vector<CriticalValueRate> critical_value_rates(const MonicPolynomial& f) {
  std::vector<CriticalValueRate> out;
  for (const auto& c : critical_points(f)) {
    const cplx v = f(c.location);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const CriticalValueRate& e) {
      return std::abs(e.value - v) <= 1e-9 * (1.0 + std::abs(v));
    });
    if (!dup) out.push_back({v, green(f, v).green});
  }
  return out;
}

double max_critical_rate(const MonicPolynomial& f) {
  double m = 0.0;
  for (const auto& r : critical_value_rates(f)) m = std::max(m, r.rate);
  return m;
}

}  // namespace rayland
