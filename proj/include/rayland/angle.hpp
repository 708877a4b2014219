#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rayland {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational angle in [0,1), stored reduced. Arithmetic is exact; the
/// only lossy operation is to_double().
class Angle {
 public:
  Angle() = default;
  Angle(BigInt num, BigInt den);
  Angle(std::int64_t num, std::int64_t den) : Angle(BigInt(num), BigInt(den)) {}

  /// Accepts "p/q", a plain integer, or a decimal literal with a finite
  /// expansion ("0.25").
  static Angle parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  double to_double() const;
  std::string str() const;

  /// d * theta mod 1.
  Angle times(unsigned d) const;
  /// d^n * theta mod 1, by modular exponentiation.
  Angle times_pow(unsigned d, unsigned n) const;
  /// (theta + k) / d, the k-th preimage under multiplication by d.
  Angle preimage(unsigned d, unsigned k) const;

  /// Fractional part of d^n * theta as a double; used as an exact target for
  /// lifted angle equations.
  double frac_times_pow(unsigned d, unsigned n) const;

  friend bool operator==(const Angle& a, const Angle& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

 private:
  BigInt num_{0};
  BigInt den_{1};
};

struct OrbitSummary {
  unsigned preperiod = 0;
  unsigned period = 1;
  std::vector<Angle> orbit;  ///< theta, m_d(theta), ... up to the first repeat
};

Angle angle_times_d(const Angle& theta, unsigned d);
OrbitSummary angle_orbit(const Angle& theta, unsigned d);

/// Nearest rational p/q with q <= max_den (continued fractions). Returns false
/// when no such rational lies within `window` of x.
bool snap_to_rational(double x, std::int64_t max_den, double window, Angle& out);

}  // namespace rayland
