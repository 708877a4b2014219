#include "rayland/shift_locus.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rayland/detail/jet.hpp"
#include "rayland/detail/lift.hpp"
#include "rayland/detail/ray_newton.hpp"
#include "rayland/potential.hpp"

namespace rayland {

namespace {

using detail::Jet;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circular_distance(double a, double b) {
  double x = std::fmod(std::abs(a - b), 1.0);
  return std::min(x, 1.0 - x);
}

struct Structure {
  unsigned d = 2;
  CriticalPortrait canonical;
  std::vector<unsigned> mult;
  std::vector<Angle> images;  ///< m_d of each block
};

Structure structure_of(const CriticalPortrait& portrait) {
  const auto rep = validate_portrait(portrait);
  if (!rep.valid()) throw DomainError("invalid critical portrait " + portrait.str());
  Structure S;
  S.d = portrait.degree;
  S.canonical = portrait;
  S.canonical.canonicalize();
  for (const auto& b : S.canonical.blocks) {
    S.mult.push_back(static_cast<unsigned>(b.angles.size() - 1));
    S.images.push_back(b.angles.front().times(S.d));
  }
  return S;
}

/// Monic coefficients c_0..c_d of a0 + integral of d * prod (z - c_j)^{m_j}.
template <class T>
std::vector<T> coefficients_from(const Structure& S, const std::vector<T>& c, const T& a0) {
  std::vector<T> P{T(1.0)};
  for (std::size_t j = 0; j < c.size(); ++j)
    for (unsigned rep = 0; rep < S.mult[j]; ++rep) {
      std::vector<T> Q(P.size() + 1, T(0.0));
      for (std::size_t k = 0; k < P.size(); ++k) {
        Q[k + 1] += P[k];
        Q[k] -= c[j] * P[k];
      }
      P = std::move(Q);
    }
  std::vector<T> out(S.d + 1, T(0.0));
  out[0] = a0;
  for (std::size_t k = 0; k < P.size(); ++k)
    out[k + 1] = P[k] * T(static_cast<double>(S.d) / static_cast<double>(k + 1));
  return out;
}

struct Targets {
  std::vector<detail::AngleTargets> per_block;
  explicit Targets(const Structure& S) {
    for (const auto& a : S.images) per_block.emplace_back(a, S.d);
  }
};

/// System F(x) with x = (c_1..c_m, a0). Returns false when a critical value
/// does not escape.
template <class T>
bool residuals(const Structure& S, double r, const std::vector<T>& x, Targets& tg,
               std::vector<T>& F) {
  const std::size_t m = x.size() - 1;
  std::vector<T> c(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
  const auto co = coefficients_from<T>(S, c, x[m]);
  const std::span<const T> sp(co);
  const double R0 = detail::near_identity_radius<T>(sp);
  F.assign(m + 1, T(0.0));
  for (std::size_t j = 0; j < m; ++j) F[0] += c[j] * T(static_cast<double>(S.mult[j]));
  for (std::size_t j = 0; j < m; ++j) {
    const T v = detail::horner(sp, c[j]);
    const auto l = detail::lift<T>(sp, v, R0);
    if (!l.escaped) return false;
    const double D = 1.0 / l.scale;
    T res = l.log_psi_n - T(cplx(D * r, kTwoPi * tg.per_block[j](l.n)));
    const double k = std::round(detail::value(res).imag() / kTwoPi);
    res -= T(cplx(0.0, kTwoPi * k));
    F[j + 1] = res * T(l.scale);
  }
  return true;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

struct NewtonOutcome {
  std::vector<cplx> x;
  double residual = std::numeric_limits<double>::infinity();
  int steps = 0;
  double floor = 0.0;  ///< roundoff level of the residual
  bool converged = false;
};

/// Damped Newton with a forward-mode Jacobian. `eval` fills F for complex or
/// Jet arguments.
template <class Eval>
NewtonOutcome damped_newton(std::vector<cplx> x, Eval&& eval, double tol, int max_iter) {
  NewtonOutcome out;
  const std::size_t n = x.size();
  std::vector<cplx> F;
  if (!eval(x, F)) return out;
  double norm = max_abs(F);
  // residual attainable in double precision at x: rounding of each unknown
  // propagated through the Jacobian
  double floor = 0.0;
  auto jacobian = [&](Eigen::MatrixXcd& J) {
    J.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<Jet> xj(x.begin(), x.end());
      xj[u].d = 1.0;
      std::vector<Jet> Fj;
      if (!eval(xj, Fj)) return false;
      for (std::size_t i = 0; i < n; ++i)
        J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(u)) = Fj[i].d;
    }
    floor = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t u = 0; u < n; ++u)
        row += std::abs(J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(u))) * std::abs(x[u]);
      floor = std::max(floor, 64.0 * 2.220446049250313e-16 * row);
    }
    return true;
  };
  Eigen::MatrixXcd J;
  bool have_j = false;
  for (int it = 0; it < max_iter; ++it) {
    out.steps = it;
    if (!jacobian(J)) return out;
    have_j = true;
    if (norm <= 1e-3 * tol || norm <= 0.01 * floor) break;
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = -F[i];
    const Eigen::VectorXcd delta = J.partialPivLu().solve(rhs);
    if (!delta.allFinite()) break;
    double alpha = 1.0;
    bool accepted = false;
    std::vector<cplx> xt(n), Ft;
    while (alpha >= 1e-4) {
      for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + alpha * delta(static_cast<Eigen::Index>(i));
      if (eval(xt, Ft) && max_abs(Ft) < (1.0 - 0.25 * alpha) * norm) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // roundoff floor or a genuine failure; judged below
    x = xt;
    F = Ft;
    norm = max_abs(F);
    have_j = false;
  }
  if (!have_j) jacobian(J);
  out.x = x;
  out.residual = norm;
  out.floor = floor;
  out.converged = norm <= std::max(tol, floor);
  return out;
}

std::vector<cplx> pack(const ShiftState& s) {
  auto x = s.critical_points;
  x.push_back(s.a0);
  return x;
}

ShiftState unpack(const std::vector<cplx>& x) {
  ShiftState s;
  s.critical_points.assign(x.begin(), x.end() - 1);
  s.a0 = x.back();
  return s;
}

MonicPolynomial poly_of(const Structure& S, const ShiftState& st) {
  const auto co = coefficients_from<cplx>(S, st.critical_points, st.a0);
  return MonicPolynomial(S.d, std::vector<cplx>(co.begin(), co.begin() + (S.d - 1)));
}

ParamRayPoint solve_structured(const Structure& S, double r, const ShiftState& guess,
                               const SolverOptions& opts) {
  if (!(r > 0.0)) throw DomainError("solve_f_r: r must be positive");
  if (guess.critical_points.size() != S.mult.size())
    throw DomainError("solve_f_r: seed has the wrong number of critical points");
  Targets tg(S);
  auto eval = [&](const auto& x, auto& F) { return residuals(S, r, x, tg, F); };
  const auto res = damped_newton(pack(guess), eval, opts.tol, opts.max_iterations);
  if (!res.converged)
    throw NumericError("solve_f_r: Newton did not converge at r = " + std::to_string(r) +
                       " (residual " + std::to_string(res.residual) + ")");
  ParamRayPoint pt;
  pt.r = r;
  pt.state = unpack(res.x);
  pt.residual = res.residual;
  pt.newton_steps = res.steps;

  const auto& cs = pt.state.critical_points;
  double scale = 1.0;
  for (const auto& c : cs) scale = std::max(scale, std::abs(c));
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (std::abs(cs[i] - cs[j]) < 1e-8 * scale)
        throw NumericError("solve_f_r: critical points collided");

  pt.poly = poly_of(S, pt.state);
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const cplx v = pt.poly(cs[j]);
    cplx L{r, kTwoPi * S.images[j].to_double()};
    if (opts.verify_branch) {
      L = log_bottcher_by_climb(pt.poly, v);
      if (circular_distance(L.imag() / kTwoPi, S.images[j].to_double()) > opts.angle_tol)
        throw BranchError("solve_f_r: critical value " + std::to_string(j) +
                          " sits on a sibling ray (angle " + std::to_string(L.imag() / kTwoPi) + ")");
    }
    pt.log_psi_values.push_back(L);
  }
  return pt;
}

ShiftState rescale(const ShiftState& s, unsigned d, double dr) {
  ShiftState out = s;
  const double lam = std::exp(dr / d);
  for (auto& c : out.critical_points) c *= lam;
  out.a0 *= std::exp(dr);
  return out;
}

/// Normalized configurations: centered critical points zeta_j with
/// F(zeta_j) = e^{2 pi i m_d(theta_j)}.
std::vector<ShiftState> unit_configurations(const Structure& S, int starts, std::uint64_t seed) {
  const std::size_t m = S.mult.size();
  std::vector<cplx> targets;
  for (const auto& a : S.images) targets.push_back(std::polar(1.0, kTwoPi * a.to_double()));
  auto eval = [&](const auto& x, auto& F) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    std::vector<T> c(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
    const auto co = coefficients_from<T>(S, c, x[m]);
    const std::span<const T> sp(co);
    F.assign(m + 1, T(0.0));
    for (std::size_t j = 0; j < m; ++j) F[0] += c[j] * T(static_cast<double>(S.mult[j]));
    for (std::size_t j = 0; j < m; ++j) F[j + 1] = detail::horner(sp, c[j]) - T(targets[j]);
    return true;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.2, 1.2);
  std::vector<ShiftState> found;
  for (int s = 0; s < starts; ++s) {
    std::vector<cplx> x(m + 1);
    for (auto& v : x) v = {U(rng), U(rng)};
    const auto res = damped_newton(x, eval, 1e-12, 100);
    if (!res.converged) continue;
    const auto st = unpack(res.x);
    bool collide = false;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        collide = collide || std::abs(st.critical_points[i] - st.critical_points[j]) < 1e-6;
    if (collide) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const ShiftState& o) {
      double dist = std::abs(o.a0 - st.a0);
      for (std::size_t i = 0; i < m; ++i)
        dist += std::abs(o.critical_points[i] - st.critical_points[i]);
      return dist < 1e-8;
    });
    if (!dup) found.push_back(st);
  }
  return found;
}

}  // namespace

MonicPolynomial polynomial_from_state(const CriticalPortrait& portrait, const ShiftState& s) {
  return poly_of(structure_of(portrait), s);
}

ParamRayPoint solve_f_r(const CriticalPortrait& portrait, double r, const ShiftState& guess,
                        const SolverOptions& opts) {
  return solve_structured(structure_of(portrait), r, guess, opts);
}

ParamRayPoint solve_f_r(const CriticalPortrait& portrait, double r, const MonicPolynomial& guess,
                        const SolverOptions& opts) {
  const auto S = structure_of(portrait);
  if (guess.degree() != S.d) throw DomainError("solve_f_r: seed degree differs from the portrait");
  auto cps = critical_points(guess);
  std::vector<double> angle(cps.size(), -1.0);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    try {
      angle[i] = log_bottcher_by_climb(guess, guess(cps[i].location)).imag() / kTwoPi;
    } catch (const Error&) {
    }
  }
  ShiftState st;
  std::vector<bool> used(cps.size(), false);
  for (std::size_t j = 0; j < S.mult.size(); ++j) {
    std::size_t best = cps.size();
    double best_d = 2.0;
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (used[i] || cps[i].multiplicity != S.mult[j]) continue;
      const double dist = angle[i] < 0 ? 1.0 : circular_distance(angle[i], S.images[j].to_double());
      if (dist < best_d) {
        best_d = dist;
        best = i;
      }
    }
    if (best == cps.size())
      throw DomainError("solve_f_r: seed critical multiplicities do not match the portrait");
    used[best] = true;
    st.critical_points.push_back(cps[best].location);
  }
  st.a0 = guess.lower()[0];
  return solve_structured(S, r, st, opts);
}

ShiftState initial_guess(const CriticalPortrait& portrait, double r_large) {
  const auto S = structure_of(portrait);
  if (S.mult.size() == 1) {
    ShiftState st;
    st.critical_points = {0.0};
    st.a0 = std::exp(cplx(r_large, kTwoPi * S.images[0].to_double()));
    return st;
  }
  const double lam = std::exp(r_large / S.d);
  for (std::uint64_t round = 0; round < 4; ++round) {
    for (const auto& u : unit_configurations(S, 200, 0x51f7 + round)) {
      ShiftState st;
      for (const auto& z : u.critical_points) st.critical_points.push_back(lam * z);
      st.a0 = std::pow(lam, S.d) * u.a0;
      try {
        const auto pt = solve_structured(S, r_large, st, SolverOptions{});
        if (portrait_of(pt.poly) == S.canonical) return pt.state;
      } catch (const Error&) {
      }
    }
  }
  throw NumericError("initial_guess: no critical configuration reproduces " + S.canonical.str());
}

std::vector<ParamRayPoint> continue_param_ray(const CriticalPortrait& portrait, double r_from,
                                              double r_to, double rho,
                                              const ContinuationOptions& opts) {
  if (!(r_from > r_to && r_to > 0.0)) throw DomainError("continue_param_ray: need r_from > r_to > 0");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("continue_param_ray: rho must lie in (0,1)");
  const auto S = structure_of(portrait);
  const double entry = std::max(r_from, opts.r_start);
  std::vector<ParamRayPoint> path;
  ParamRayPoint cur = solve_structured(S, entry, initial_guess(portrait, entry), opts.solver);

  auto march = [&](double target, bool record) {
    double local = rho;
    int refinements = 0;
    while (cur.r > target) {
      double r_next = cur.r * local;
      if (r_next < target * (1.0 + 1e-9)) r_next = target;
      std::optional<ParamRayPoint> next;
      for (const auto& seed : {rescale(cur.state, S.d, r_next - cur.r), cur.state}) {
        try {
          next = solve_structured(S, r_next, seed, opts.solver);
          break;
        } catch (const NumericError&) {
        }
      }
      if (!next) {
        if (++refinements > opts.max_refinements)
          throw ContinuationError("continue_param_ray: stalled below r = " + std::to_string(cur.r),
                                  path);
        local = std::sqrt(local);
        continue;
      }
      refinements = 0;
      local = std::max(rho, local * local);
      cur = *next;
      if (record) path.push_back(cur);
    }
  };

  if (entry > r_from) march(r_from, false);
  path.push_back(cur);
  march(r_to, true);
  return path;
}

namespace {

std::vector<cplx> coeff_vector(const MonicPolynomial& f) {
  return {f.lower().begin(), f.lower().end()};
}

struct ParabolicFit {
  std::vector<cplx> limit;
  double b = 0.0;
  double beta = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

/// c(L) = c_inf + a / (L + b + beta/L)^2 with L = log(1/r). The shape
/// parameters (b, beta) are found by nested Brent searches; c_inf and a enter
/// linearly and are solved in closed form for each shape.
ParabolicFit fit_parabolic(const std::vector<double>& L, const std::vector<std::vector<cplx>>& Y,
                           bool with_beta) {
  const std::size_t n = L.size(), comps = Y.front().size();
  const double Lmin = *std::min_element(L.begin(), L.end());
  auto solve_for = [&](double b, double beta) {
    ParabolicFit fit;
    fit.b = b;
    fit.beta = beta;
    double su = 0, suu = 0;
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = L[i] + b + beta / L[i];
      if (!(w > 0.0)) return fit;
      u[i] = 1.0 / (w * w);
      su += u[i];
      suu += u[i] * u[i];
    }
    const double det = static_cast<double>(n) * suu - su * su;
    if (!(std::abs(det) > 0.0)) return fit;
    fit.limit.assign(comps, 0.0);
    fit.sse = 0.0;
    for (std::size_t k = 0; k < comps; ++k) {
      cplx sy = 0, suy = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sy += Y[i][k];
        suy += u[i] * Y[i][k];
      }
      const cplx cinf = (suu * sy - su * suy) / det;
      const cplx a = (static_cast<double>(n) * suy - su * sy) / det;
      fit.limit[k] = cinf;
      for (std::size_t i = 0; i < n; ++i) fit.sse += std::norm(Y[i][k] - cinf - a * u[i]);
    }
    return fit;
  };
  constexpr int bits = 40;
  auto best_b = [&](double beta) {
    const double lo = -Lmin - beta / Lmin + 1e-6 * Lmin;
    // coarse scan first: the profile in b is not unimodal far from the data
    double b0 = lo, f0 = std::numeric_limits<double>::infinity();
    const int grid = 200;
    const double hi = 60.0;
    for (int i = 0; i <= grid; ++i) {
      const double b = lo + (hi - lo) * i / grid;
      const double f = solve_for(b, beta).sse;
      if (f < f0) {
        f0 = f;
        b0 = b;
      }
    }
    const double h = (hi - lo) / grid;
    const auto res = boost::math::tools::brent_find_minima(
        [&](double b) { return solve_for(b, beta).sse; }, std::max(lo, b0 - h), b0 + h, bits);
    return solve_for(res.first, beta);
  };
  if (!with_beta) return best_b(0.0);
  const auto res = boost::math::tools::brent_find_minima(
      [&](double beta) { return best_b(beta).sse; }, -5.0, 5.0, bits);
  return best_b(res.first);
}

}  // namespace

LandingDiagnostics landing_probe(const CriticalPortrait& portrait, double r_min, double tol,
                                 const LandingOptions& opts) {
  if (!(r_min > 0.0 && r_min < opts.r_from)) throw DomainError("landing_probe: need 0 < r_min < r_from");
  // uniform ratio so that the schedule ends exactly at r_min; a short final
  // step would distort the increment ratios
  const double steps = std::ceil(std::log(r_min / opts.r_from) / std::log(opts.rho) - 1e-9);
  const double rho = std::pow(r_min / opts.r_from, 1.0 / steps);
  const auto path = continue_param_ray(portrait, opts.r_from, r_min, rho, opts.continuation);
  LandingDiagnostics out;
  for (const auto& p : path) {
    out.r_schedule.push_back(p.r);
    out.limits.push_back(p.poly);
  }
  for (std::size_t k = 1; k < path.size(); ++k)
    out.cauchy_increments.push_back(coefficient_distance(path[k - 1].poly, path[k].poly));
  out.extrapolated_limit = path.back().poly;
  const auto& inc = out.cauchy_increments;
  if (inc.size() < 6) {
    out.verdict = "inconclusive";
    out.method = "none (schedule too short)";
    return out;
  }
  const std::size_t n = inc.size();
  out.decay_ratio = inc[n - 6] > 0.0 ? std::pow(inc[n - 1] / inc[n - 6], 0.2) : 0.0;
  out.geometric = out.decay_ratio < opts.geometric_threshold;
  const unsigned d = portrait.degree;

  std::vector<cplx> limit;
  if (out.geometric) {
    out.method = "aitken";
    const auto x0 = coeff_vector(path[path.size() - 3].poly), x1 = coeff_vector(path[path.size() - 2].poly),
               x2 = coeff_vector(path.back().poly);
    for (std::size_t k = 0; k < x2.size(); ++k) {
      const cplx d1 = x1[k] - x0[k], d2 = x2[k] - x1[k], den = d2 - d1;
      limit.push_back(std::abs(den) > 1e-300 ? x2[k] - d2 * d2 / den : x2[k]);
    }
  } else {
    out.method = "parabolic fit c_inf + a/(L + b + beta/L)^2, L = log(1/r)";
    std::vector<double> L;
    std::vector<std::vector<cplx>> Y;
    for (const auto& p : path)
      if (p.r <= 1e-2) {
        L.push_back(std::log(1.0 / p.r));
        Y.push_back(coeff_vector(p.poly));
      }
    if (L.size() < 6) {
      L.clear();
      Y.clear();
      for (std::size_t k = path.size() - 6; k < path.size(); ++k) {
        L.push_back(std::log(1.0 / path[k].r));
        Y.push_back(coeff_vector(path[k].poly));
      }
    }
    const auto full = fit_parabolic(L, Y, true);
    const auto reduced = fit_parabolic(L, Y, false);
    limit = full.limit;
    // the two models bracket the limit in practice; their spread is the estimate
    double e = 0.0;
    for (std::size_t k = 0; k < limit.size(); ++k) e += std::norm(limit[k] - reduced.limit[k]);
    out.error_estimate = std::sqrt(e);
  }
  out.extrapolated_limit = MonicPolynomial(d, limit);
  if (out.geometric) out.error_estimate = coefficient_distance(out.extrapolated_limit, path.back().poly);
  out.verdict = (out.decay_ratio < 1.0 && out.error_estimate <= tol) ? "landed" : "inconclusive";
  return out;
}

std::vector<std::vector<double>> portrait_angles(const MonicPolynomial& f) {
  const auto cps = critical_points(f);
  std::vector<double> rates;
  for (const auto& c : cps) {
    const auto g = green(f, f(c.location));
    if (!g.escaping || g.green <= 0.0)
      throw DomainError("portrait_of: a critical point does not escape (not in the shift locus)");
    rates.push_back(g.green);
  }
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  if (*hi - *lo > 1e-6 * std::max(1.0, *hi))
    throw DomainError("portrait_of: critical values escape at different rates");

  const unsigned d = f.degree();
  const detail::LiftedPoly P(f);
  std::vector<std::vector<double>> blocks;
  for (const auto& cp : cps) {
    const cplx c = cp.location;
    const cplx v = f(c);
    const double phi = log_bottcher_by_climb(f, v).imag() / kTwoPi;
    const auto lv = P(v);
    const double ds = 1e-6 * lv.green;
    const cplx q = v + ds / lv.dlog;  // just above v on its ray
    const unsigned k1 = cp.multiplicity + 1;
    const cplx A = f.taylor(c, k1);
    const cplx base = std::pow((q - v) / A, 1.0 / k1);
    std::vector<double> block;
    for (unsigned k = 0; k < k1; ++k) {
      cplx p = c + base * std::polar(1.0, kTwoPi * k / k1);
      for (int it = 0; it < 60; ++it) {
        const cplx step = (f(p) - q) / f.derivative(p);
        p -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(p))) break;
      }
      const double t = log_bottcher_by_climb(f, p).imag() / kTwoPi;
      double best = 0.0, best_d = 2.0;
      for (unsigned j = 0; j < d; ++j) {
        double cand = (phi + j) / d;
        cand -= std::floor(cand);
        const double dist = circular_distance(cand, t);
        if (dist < best_d) {
          best_d = dist;
          best = cand;
        }
      }
      block.push_back(best);
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(block);
  }
  return blocks;
}

CriticalPortrait portrait_of(const MonicPolynomial& f, double r_hint, std::int64_t max_den,
                             double window) {
  if (r_hint > 0.0) {
    for (const auto& cv : critical_value_rates(f))
      if (std::abs(cv.rate - r_hint) > 1e-6 * std::max(1.0, r_hint))
        throw DomainError("portrait_of: critical rate differs from the hint");
  }
  const auto raw = portrait_angles(f);
  CriticalPortrait p;
  p.degree = f.degree();
  std::string raw_text;
  for (const auto& b : raw) {
    PortraitBlock blk;
    for (double t : b) {
      Angle a;
      if (!snap_to_rational(t, max_den, window, a)) {
        for (const auto& bb : raw)
          for (double x : bb) raw_text += std::to_string(x) + " ";
        throw NumericError("portrait_of: angle not resolvable as a rational; raw angles: " + raw_text);
      }
      blk.angles.push_back(a);
    }
    p.blocks.push_back(blk);
  }
  p.canonicalize();
  return p;
}

}  // namespace rayland
