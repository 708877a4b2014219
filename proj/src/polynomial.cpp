#include "rayland/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rayland/errors.hpp"
#include "rayland/roots.hpp"

namespace rayland {

MonicPolynomial::MonicPolynomial(unsigned degree, std::vector<cplx> lower)
    : degree_(degree), lower_(std::move(lower)) {
  if (degree_ < 2) throw DomainError("polynomial degree must be at least 2");
  if (lower_.size() != degree_ - 1)
    throw DomainError("expected " + std::to_string(degree_ - 1) + " lower coefficients, got " +
                      std::to_string(lower_.size()));
}

MonicPolynomial MonicPolynomial::power(unsigned degree) {
  return MonicPolynomial(degree, std::vector<cplx>(degree - 1, cplx(0.0)));
}

MonicPolynomial MonicPolynomial::quadratic(cplx c) { return MonicPolynomial(2, {c}); }

std::vector<cplx> MonicPolynomial::coefficients() const {
  std::vector<cplx> c(degree_ + 1, cplx(0.0));
  std::copy(lower_.begin(), lower_.end(), c.begin());
  c[degree_] = 1.0;
  return c;
}

cplx MonicPolynomial::operator()(cplx z) const {
  cplx acc = z;  // z^{d-1} coefficient is 0: start from z * 1 + 0
  for (std::size_t k = degree_ - 1; k-- > 0;) acc = acc * z + lower_[k];
  return acc;
}

cplx MonicPolynomial::derivative(cplx z) const {
  cplx acc = static_cast<double>(degree_);
  acc *= z;  // d z^{d-1} + 0 * z^{d-2}
  for (std::size_t k = degree_ - 1; k-- > 1;) acc = acc * z + static_cast<double>(k) * lower_[k];
  return acc;
}

cplx MonicPolynomial::taylor(cplx z, unsigned k) const {
  // Coefficients of f(z + h) in h via repeated synthetic division.
  std::vector<cplx> c = coefficients();
  for (unsigned j = 0; j <= k; ++j) {
    for (std::size_t i = c.size() - 1; i-- > j;) c[i] += z * c[i + 1];
  }
  return k < c.size() ? c[k] : cplx(0.0);
}

double MonicPolynomial::escape_radius() const {
  double s = 0.0;
  for (auto a : lower_) s += std::abs(a);
  return std::max(4.0, 2.0 * (1.0 + s));
}

bool MonicPolynomial::real_coefficients() const {
  return std::all_of(lower_.begin(), lower_.end(), [](cplx a) { return a.imag() == 0.0; });
}

cplx evaluate(const MonicPolynomial& f, cplx z) { return f(z); }

std::vector<CriticalPoint> critical_points(const MonicPolynomial& f, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  const unsigned d = f.degree();
  std::vector<cplx> dc(d);
  auto lower = f.lower();
  for (unsigned k = 1; k + 1 < d; ++k) dc[k - 1] = static_cast<double>(k) * lower[k];
  dc[d - 2] = 0.0;
  dc[d - 1] = static_cast<double>(d);
  std::vector<cplx> roots = aberth_roots(dc);

  double scale = 1.0;
  for (auto r : roots) scale = std::max(scale, std::abs(r));

  // Single-linkage clustering with a radius that grows with the cluster size.
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  constexpr double eps = 2.220446049250313e-16;
  const double loose = std::max(tol, 10.0 * std::pow(eps, 1.0 / static_cast<double>(std::max<std::size_t>(n, 1))) * scale);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) < loose) parent[find(i)] = find(j);

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<CriticalPoint> out;
  for (auto& g : groups) {
    if (g.empty()) continue;
    cplx centroid = 0.0;
    for (auto i : g) centroid += roots[i];
    centroid /= static_cast<double>(g.size());
    const double k = static_cast<double>(g.size());
    const double radius = std::max(tol, 10.0 * std::pow(eps, 1.0 / k) * scale);
    double spread = 0.0;
    for (auto i : g) spread = std::max(spread, std::abs(roots[i] - centroid));
    if (spread < radius) {
      out.push_back({centroid, static_cast<unsigned>(g.size())});
    } else {
      for (auto i : g) out.push_back({roots[i], 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

Orbit orbit(const MonicPolynomial& f, cplx z, unsigned n, double escape_radius) {
  if (!(escape_radius > 0)) throw DomainError("escape radius must be positive");
  Orbit o;
  o.points.push_back(z);
  if (std::abs(z) > escape_radius) {
    o.escaped = true;
    return o;
  }
  for (unsigned k = 0; k < n; ++k) {
    z = f(z);
    if (!(std::abs(z) <= escape_radius)) {
      o.escaped = true;  // the exiting iterate itself is not listed
      break;
    }
    o.points.push_back(z);
  }
  return o;
}

double coefficient_distance(const MonicPolynomial& a, const MonicPolynomial& b) {
  if (a.degree() != b.degree()) throw DomainError("degree mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.lower().size(); ++k) s += std::norm(a.lower()[k] - b.lower()[k]);
  return std::sqrt(s);
}

}  // namespace rayland
