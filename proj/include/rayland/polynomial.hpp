#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rayland {

using cplx = std::complex<double>;

/// z^d + a_{d-2} z^{d-2} + ... + a_0. The z^{d-1} coefficient is zero and the
/// leading coefficient is one by construction.
class MonicPolynomial {
 public:
  MonicPolynomial(unsigned degree, std::vector<cplx> lower);
  /// z^d
  static MonicPolynomial power(unsigned degree);
  /// z^2 + c
  static MonicPolynomial quadratic(cplx c);

  unsigned degree() const { return degree_; }
  std::span<const cplx> lower() const { return lower_; }

  /// Coefficients c_0..c_d (low to high), including the zero c_{d-1} and c_d = 1.
  std::vector<cplx> coefficients() const;

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// Taylor coefficient f^{(k)}(z)/k!.
  cplx taylor(cplx z, unsigned k) const;

  /// max(4, 2(1 + sum |a_k|)); outside this radius |f(z)| >= 2|z| and
  /// f(z)/z^d stays within 1/2 of 1.
  double escape_radius() const;

  bool real_coefficients() const;

  friend bool operator==(const MonicPolynomial&, const MonicPolynomial&) = default;

 private:
  unsigned degree_;
  std::vector<cplx> lower_;
};

cplx evaluate(const MonicPolynomial& f, cplx z);

struct CriticalPoint {
  cplx location;
  unsigned multiplicity = 1;
};

/// Roots of f' with multiplicities. Roots closer than the cluster radius are
/// merged; the radius is max(tol, 10 * eps^(1/k) * scale) for a k-fold cluster
/// since a k-fold root is only resolved to that accuracy in double precision.
std::vector<CriticalPoint> critical_points(const MonicPolynomial& f, double tol = 1e-8);

struct Orbit {
  std::vector<cplx> points;
  bool escaped = false;
};

/// z, f(z), ..., f^n(z), stopping before the first iterate that leaves the
/// disk of the given radius (escaped is then set).
Orbit orbit(const MonicPolynomial& f, cplx z, unsigned n, double escape_radius);

/// Euclidean distance between coefficient vectors.
double coefficient_distance(const MonicPolynomial& a, const MonicPolynomial& b);

}  // namespace rayland
