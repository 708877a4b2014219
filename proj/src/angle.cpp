#include "rayland/angle.hpp"

#include <cctype>
#include <cmath>
#include <map>

#include "rayland/errors.hpp"

namespace rayland {

namespace {

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

Angle::Angle(BigInt num, BigInt den) {
  if (den <= 0) throw DomainError("angle denominator must be positive");
  num = floor_mod(num, den);
  BigInt g = boost::multiprecision::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

Angle Angle::parse(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw DomainError("empty angle");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::string p = s.substr(0, slash), q = s.substr(slash + 1);
      trim(p);
      trim(q);
      return Angle(BigInt(p), BigInt(q));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
      bool neg = !ip.empty() && ip[0] == '-';
      if (neg) ip.erase(ip.begin());
      if (ip.empty()) ip = "0";
      BigInt den = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
      BigInt num = BigInt(ip) * den + (fp.empty() ? BigInt(0) : BigInt(fp));
      if (neg) num = -num;
      return Angle(num, den);
    }
    return Angle(BigInt(s), BigInt(1));
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("cannot parse angle '" + std::string(text) + "'");
  }
}

double Angle::to_double() const {
  // Both parts can exceed double range for long orbits; divide in long double
  // after scaling the numerator into [0, 2^64).
  if (den_ < BigInt(1) << 60) {
    return static_cast<double>(num_.convert_to<long double>() / den_.convert_to<long double>());
  }
  BigInt scaled = (num_ << 64) / den_;
  return std::ldexp(scaled.convert_to<double>(), -64);
}

std::string Angle::str() const {
  if (num_ == 0) return "0";
  return num_.str() + "/" + den_.str();
}

Angle Angle::times(unsigned d) const { return Angle(num_ * d, den_); }

Angle Angle::times_pow(unsigned d, unsigned n) const {
  BigInt factor = boost::multiprecision::powm(BigInt(d), BigInt(n), den_);
  return Angle(num_ * factor, den_);
}

Angle Angle::preimage(unsigned d, unsigned k) const {
  return Angle(num_ + BigInt(k) * den_, den_ * d);
}

double Angle::frac_times_pow(unsigned d, unsigned n) const { return times_pow(d, n).to_double(); }

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Angle angle_times_d(const Angle& theta, unsigned d) {
  if (d < 2) throw DomainError("degree must be at least 2");
  return theta.times(d);
}

OrbitSummary angle_orbit(const Angle& theta, unsigned d) {
  if (d < 2) throw DomainError("degree must be at least 2");
  OrbitSummary out;
  std::map<Angle, unsigned> seen;
  Angle cur = theta;
  while (true) {
    auto [it, inserted] = seen.emplace(cur, static_cast<unsigned>(out.orbit.size()));
    if (!inserted) {
      out.preperiod = it->second;
      out.period = static_cast<unsigned>(out.orbit.size()) - it->second;
      return out;
    }
    out.orbit.push_back(cur);
    cur = cur.times(d);
  }
}

bool snap_to_rational(double x, std::int64_t max_den, double window, Angle& out) {
  x -= std::floor(x);
  // Convergents of the continued fraction; keep the last one within max_den.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = x;
  std::int64_t best_p = 0, best_q = 1;
  for (int iter = 0; iter < 64; ++iter) {
    double a_f = std::floor(rem);
    if (a_f > 1e12) break;
    auto a = static_cast<std::int64_t>(a_f);
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    best_p = p2;
    best_q = q2;
    if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) < 1e-15) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = rem - a_f;
    if (frac < 1e-15) break;
    rem = 1.0 / frac;
  }
  double err = std::abs(x - static_cast<double>(best_p) / static_cast<double>(best_q));
  err = std::min(err, 1.0 - err);
  if (err > window) return false;
  out = Angle(best_p, best_q);
  return true;
}

}  // namespace rayland
