#pragma once

// Shared escape-region machinery: iterate a monic polynomial until the orbit
// enters the region where psi(w)/w is given by a convergent product with
// principal logarithms, and report log psi there. Templated on the scalar so
// the shift-locus solver can differentiate through it with Jet.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "rayland/detail/jet.hpp"

namespace rayland::detail {

using std::log;

struct LiftConfig {
  double big_radius = 1e12;
  int max_iterations = 2048;
};

template <class T>
struct Lift {
  bool escaped = false;
  int n = 0;           ///< iterations needed to reach the near-identity radius
  int iterations = 0;  ///< iterations performed in total
  T log_psi_n{};       ///< log psi(f^n(z)), principal branch of log f^n(z)
  T dlog{};            ///< d/dz log psi(z) = lim (f^N)'(z) / (d^N f^N(z))
  double scale = 1.0;  ///< d^{-n}
  double green = 0.0;  ///< Re(log_psi_n) * scale
  /// max over the orbit of |z_k| / |(f^k)'(z) / d^k|: rounding z_k by eps
  /// moves log psi by about eps * conditioning * |dlog|
  double conditioning = 0.0;
};

/// max(4, 2(1 + sum_{k<d} |c_k|)) for monic coefficients c_0..c_d.
template <class T>
double near_identity_radius(std::span<const T> c) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) s += std::abs(value(c[k]));
  return std::max(4.0, 2.0 * (1.0 + s));
}

template <class T>
T horner(std::span<const T> c, const T& z) {
  T acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

template <class T>
T horner_derivative(std::span<const T> c, const T& z) {
  const std::size_t d = c.size() - 1;
  T acc = c[d] * T(static_cast<double>(d));
  for (std::size_t k = d - 1; k >= 1; --k) acc = acc * z + c[k] * T(static_cast<double>(k));
  return acc;
}

/// f(w) / w^d for monic f, evaluated in 1/w.
template <class T>
T escape_ratio(std::span<const T> c, const T& w) {
  const std::size_t d = c.size() - 1;
  const T u = T(1.0) / w;
  T s = c[0];
  for (std::size_t k = 1; k < d; ++k) s = s * u + c[k];
  return T(1.0) + u * s;
}

template <class T>
Lift<T> lift(std::span<const T> c, T z, double near_radius, const LiftConfig& cfg = {}) {
  const double d = static_cast<double>(c.size() - 1);
  Lift<T> out;
  T deriv = T(1.0);  // (f^k)'(z) / d^k
  int k = 0;
  auto note = [&] {
    const double a = std::abs(value(deriv));
    if (a > 0.0) out.conditioning = std::max(out.conditioning, std::abs(value(z)) / a);
  };
  while (std::abs(value(z)) < near_radius) {
    if (k >= cfg.max_iterations || !std::isfinite(std::abs(value(z)))) {
      out.iterations = k;
      return out;
    }
    note();
    deriv = deriv * horner_derivative(c, z) * T(1.0 / d);
    z = horner(c, z);
    ++k;
  }
  note();
  out.escaped = true;
  out.n = k;
  out.scale = std::pow(d, -static_cast<double>(k));
  T acc = log(z);
  double weight = 1.0 / d;
  while (k < cfg.max_iterations && std::abs(value(z)) < cfg.big_radius) {
    const T ratio = escape_ratio(c, z);
    acc = acc + log(ratio) * T(weight);
    deriv = deriv * horner_derivative(c, z) * T(1.0 / d);
    z = horner(c, z);
    ++k;
    weight /= d;
  }
  out.iterations = k;
  out.log_psi_n = acc;
  // d log psi / dz ~ (f^N)'(z) / (d^N f^N(z)) once f^N(z) is huge
  out.dlog = deriv / z;
  out.green = std::real(value(acc)) * out.scale;
  return out;
}

}  // namespace rayland::detail
