#pragma once

#include <complex>

namespace rayland::detail {

/// First-order forward-mode dual number over C: value plus the derivative in
/// one complex direction. Enough for Jacobians of holomorphic residuals.
struct Jet {
  std::complex<double> v{0.0};
  std::complex<double> d{0.0};

  Jet() = default;
  Jet(std::complex<double> value) : v(value) {}  // NOLINT: implicit lift of constants
  Jet(double value) : v(value) {}                // NOLINT
  Jet(std::complex<double> value, std::complex<double> deriv) : v(value), d(deriv) {}

  Jet& operator+=(const Jet& o) { v += o.v; d += o.d; return *this; }
  Jet& operator-=(const Jet& o) { v -= o.v; d -= o.d; return *this; }
  Jet& operator*=(const Jet& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Jet& operator/=(const Jet& o) {
    const auto inv = 1.0 / o.v;
    d = (d - v * o.d * inv) * inv;
    v *= inv;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator-(const Jet& a) { return {-a.v, -a.d}; }
};

inline Jet log(const Jet& a) { return {std::log(a.v), a.d / a.v}; }

inline std::complex<double> value(std::complex<double> z) { return z; }
inline std::complex<double> value(const Jet& j) { return j.v; }

}  // namespace rayland::detail
