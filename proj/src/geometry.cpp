#include "rayland/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/ring.hpp>
#include <boost/geometry/geometries/multi_point.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rayland/errors.hpp"
#include "rayland/roots.hpp"

namespace rayland {

namespace bg = boost::geometry;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Pt = bg::model::d2::point_xy<double>;
using Ring = bg::model::ring<Pt, false, false>;  // counterclockwise, open
using Line = bg::model::linestring<Pt>;

Pt to_pt(cplx z) { return Pt(z.real(), z.imag()); }

Ring to_ring(const std::vector<cplx>& pts) {
  Ring r;
  r.reserve(pts.size());
  for (auto z : pts) r.push_back(to_pt(z));
  return r;
}

Line closed_line(const std::vector<cplx>& pts) {
  Line l;
  l.reserve(pts.size() + 1);
  for (auto z : pts) l.push_back(to_pt(z));
  if (!pts.empty()) l.push_back(to_pt(pts.front()));
  return l;
}

// Contour integral over t in [0, 2pi] with the adaptive Gauss-Kronrod rule.
template <class F>
double integrate_period(F&& f) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kTwoPi, 15, 1e-13,
                                                                      &err);
}

// (1/4pi^2) * closed integral of log|w| d(arg w) along w(t) = c + r e^{it}.
double circle_log_arg_integral(cplx c, double r) {
  auto g = [&](double t) {
    const cplx e = std::polar(1.0, t);
    const cplx w = c + r * e;
    const cplx dw = cplx(0.0, r) * e;
    return std::log(std::abs(w)) * (dw / w).imag();
  };
  return integrate_period(g);
}

void require_disk(const Disk& d) {
  if (!(d.radius > 0) || !std::isfinite(d.radius)) throw DomainError("disk radius must be positive");
}

}  // namespace

Region Region::circle(cplx center, double radius, int samples) {
  if (!(radius > 0)) throw DomainError("circle radius must be positive");
  if (samples < 3) throw DomainError("need at least 3 boundary samples");
  Region r;
  r.boundary.reserve(samples);
  for (int k = 0; k < samples; ++k)
    r.boundary.push_back(center + std::polar(radius, kTwoPi * k / samples));
  r.basepoint = center;
  return r;
}

Region Region::polygon(std::vector<cplx> vertices) {
  if (vertices.size() < 3) throw DomainError("polygon needs at least 3 vertices");
  if (polygon_area(vertices) < 0) std::reverse(vertices.begin(), vertices.end());
  Region r;
  r.boundary = std::move(vertices);
  return r;
}

bool contains(const Region& region, cplx z) {
  Ring ring = to_ring(region.boundary);
  if (polygon_area(region.boundary) < 0) std::reverse(ring.begin(), ring.end());
  return bg::within(to_pt(z), ring);
}

double polygon_area(const std::vector<cplx>& ring) {
  double a = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = ring[i], q = ring[(i + 1) % n];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;  // signed: positive for counterclockwise
}

double diameter(const std::vector<cplx>& points) {
  if (points.size() < 2) return 0.0;
  bg::model::multi_point<Pt> mp;
  for (auto z : points) mp.push_back(to_pt(z));
  Ring hull;
  bg::convex_hull(mp, hull);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, bg::distance(hull[i], hull[j]));
  return best;
}

double boundary_distance(const Region& region, cplx z) {
  return bg::distance(to_pt(z), closed_line(region.boundary));
}

double shape(const Region& region, cplx z) {
  if (region.boundary.size() < 3) throw DomainError("region needs at least 3 boundary points");
  const double dmin = boundary_distance(region, z);
  double dmax = 0.0;  // farthest boundary point is a vertex
  for (auto w : region.boundary) dmax = std::max(dmax, std::abs(w - z));
  if (!(dmin > 1e-12 * std::max(1.0, dmax))) throw DomainError("point lies on the region boundary");
  if (!contains(region, z)) throw DomainError("point lies outside the region");
  return dmax / dmin;
}

AnnulusSpec AnnulusSpec::concentric(cplx center, double r_in, double r_out) {
  AnnulusSpec a;
  a.kind = Kind::RoundConcentric;
  a.center = center;
  a.r_in = r_in;
  a.r_out = r_out;
  return a;
}

AnnulusSpec AnnulusSpec::circle_pair(Disk outer, Disk inner) {
  AnnulusSpec a;
  a.kind = Kind::CirclePair;
  a.outer = outer;
  a.inner = inner;
  return a;
}

double modulus(const AnnulusSpec& a) {
  if (a.kind == AnnulusSpec::Kind::RoundConcentric) {
    if (!(a.r_in > 0) || !(a.r_out > a.r_in)) throw DomainError("need 0 < r_in < r_out");
    return std::log(a.r_out / a.r_in) / kTwoPi;
  }
  require_disk(a.outer);
  require_disk(a.inner);
  // Normalize the outer disk to the unit disk, inner center on [0, 1).
  const double x = std::abs(a.inner.center - a.outer.center) / a.outer.radius;
  const double rho = a.inner.radius / a.outer.radius;
  if (!(x + rho < 1.0)) throw DomainError("inner circle touches or leaves the outer disk");
  if (x == 0.0) return std::log(1.0 / rho) / kTwoPi;
  // z -> (z - p)/(1 - p z) with p real maps both circles to concentric ones.
  const double b = 1.0 + x * x - rho * rho;
  const double disc = b * b - 4.0 * x * x;
  const double p = (b - std::sqrt(std::max(0.0, disc))) / (2.0 * x);
  const double s = std::abs((x + rho - p) / (1.0 - p * (x + rho)));
  if (!(s < 1.0) || !(s > 0.0)) throw DomainError("degenerate circle pair");
  return std::log(1.0 / s) / kTwoPi;
}

double area_rho_star(const Disk& d) {
  require_disk(d);
  if (std::abs(d.center) <= d.radius) throw DomainError("the origin lies in the closed disk");
  return circle_log_arg_integral(d.center, d.radius) / (4.0 * kPi * kPi);
}

double area_rho_star(const AnnulusSpec& a) {
  cplx c_out, c_in;
  double r_out, r_in;
  if (a.kind == AnnulusSpec::Kind::RoundConcentric) {
    if (!(a.r_in > 0) || !(a.r_out > a.r_in)) throw DomainError("need 0 < r_in < r_out");
    c_out = c_in = a.center;
    r_out = a.r_out;
    r_in = a.r_in;
  } else {
    require_disk(a.outer);
    require_disk(a.inner);
    if (!(std::abs(a.inner.center - a.outer.center) + a.inner.radius < a.outer.radius))
      throw DomainError("inner circle touches or leaves the outer disk");
    c_out = a.outer.center;
    r_out = a.outer.radius;
    c_in = a.inner.center;
    r_in = a.inner.radius;
  }
  const double o = std::abs(c_out), i = std::abs(c_in);
  const bool in_outer = o <= r_out, in_inner = i < r_in;
  if (in_outer && !in_inner) throw DomainError("the origin lies in the closed annulus");
  return (circle_log_arg_integral(c_out, r_out) - circle_log_arg_integral(c_in, r_in)) /
         (4.0 * kPi * kPi);
}

double area_rho_star(const Region& r) {
  const auto& b = r.boundary;
  if (b.size() < 3) throw DomainError("region needs at least 3 boundary points");
  double scale = 0.0;
  for (auto w : b) scale = std::max(scale, std::abs(w));
  if (contains(r, 0.0) || boundary_distance(r, 0.0) < 1e-12 * scale)
    throw DomainError("the origin lies in the closed region");
  const double sign = polygon_area(b) >= 0 ? 1.0 : -1.0;
  // Along a segment p + t(q - p), integrate log|w| d(arg w) in t.
  double total = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const cplx p = b[k], q = b[(k + 1) % b.size()];
    const cplx dq = q - p;
    auto g = [&](double t) {
      const cplx w = p + t * dq;
      return std::log(std::abs(w)) * (dq / w).imag();
    };
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 10, 1e-13,
                                                                          &err);
  }
  return sign * total / (4.0 * kPi * kPi);
}

TestMap TestMap::identity() {
  return {"identity", [](cplx z) { return z; }, [](cplx) { return cplx(1.0); }};
}

TestMap TestMap::affine(cplx a, cplx b) {
  if (a == 0.0) throw DomainError("affine map needs a nonzero slope");
  return {"affine", [a, b](cplx z) { return a * z + b; }, [a](cplx) { return a; }};
}

TestMap TestMap::inversion(cplx pole) {
  return {"inversion", [pole](cplx z) { return 1.0 / (z - pole); },
          [pole](cplx z) { return -1.0 / ((z - pole) * (z - pole)); }};
}

TestMap TestMap::exp_poly(std::vector<cplx> coeffs) {
  if (coeffs.empty()) throw DomainError("exp_poly needs coefficients");
  auto p = [coeffs](cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
  };
  auto dp = [coeffs](cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  return {"exp_poly", [p](cplx z) { return std::exp(p(z)); },
          [p, dp](cplx z) { return dp(z) * std::exp(p(z)); }};
}

double area_rho_star_image(const TestMap& map, const Disk& d) {
  require_disk(d);
  auto dlog = [&](double t) {
    const cplx e = std::polar(1.0, t);
    const cplx z = d.center + d.radius * e;
    const cplx w = map.h(z);
    return std::pair{w, map.dh(z) * cplx(0.0, d.radius) * e / w};
  };
  const double winding = integrate_period([&](double t) { return dlog(t).second.imag(); }) / kTwoPi;
  if (!std::isfinite(winding) || std::abs(winding) > 0.25)
    throw DomainError("image of the disk under map '" + map.name + "' contains the origin");
  const double v = integrate_period([&](double t) {
    auto [w, dl] = dlog(t);
    return std::log(std::abs(w)) * dl.imag();
  });
  return v / (4.0 * kPi * kPi);
}

bool disk_inside(const Disk& a, const Disk& b, double tol) {
  return std::abs(a.center - b.center) + a.radius <= b.radius + tol * std::max(1.0, b.radius);
}

bool disks_meet(const Disk& a, const Disk& b) {
  return std::abs(a.center - b.center) < a.radius + b.radius;
}

namespace {

bool same_disk(const Disk& a, const Disk& b) {
  const double s = 1e-12 * std::max(1.0, std::max(a.radius, b.radius));
  return std::abs(a.center - b.center) <= s && std::abs(a.radius - b.radius) <= s;
}

// D_y strictly inside D_x
bool strictly_inside(const Disk& y, const Disk& x) { return disk_inside(y, x) && !same_disk(y, x); }

}  // namespace

NestedReport validate_m_nested(const NestedDiskSystem& system, double m) {
  NestedReport rep;
  const auto& T = system.triples;
  const std::size_t n = T.size();
  auto fail = [&](int clause, std::vector<std::size_t> labels, std::string detail) {
    rep.pass = false;
    rep.violations.push_back({clause, std::move(labels), std::move(detail)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!(T[i].outer.radius > 0) || !(T[i].mid.radius > 0) || !(T[i].inner.radius > 0))
      fail(0, {i}, "nonpositive radius");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (T[i].label == T[j].label) fail(0, {i, j}, "duplicate label");
      const Disk &a = T[i].outer, &b = T[j].outer;
      if (disks_meet(a, b) && !strictly_inside(a, b) && !strictly_inside(b, a))
        fail(0, {i, j}, "outer disks meet without strict nesting");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = T[i];
    if (!(std::abs(t.label - t.inner.center) < t.inner.radius)) fail(1, {i}, "label not in D''");
    if (!disk_inside(t.inner, t.mid)) fail(1, {i}, "D'' not contained in D'");
    if (!disk_inside(t.mid, t.outer)) fail(1, {i}, "D' not contained in D");
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Disk& dy = T[j].outer;
      if (disk_inside(dy, T[i].outer) && disks_meet(dy, T[i].inner) && !disk_inside(dy, T[i].mid))
        fail(2, {i, j}, "D_y meets D''_x but is not inside D'_x");
    }

  rep.min_modulus = n ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mod = 0.0;  // D' touching or leaving D counts as modulus zero
    try {
      mod = modulus(AnnulusSpec::circle_pair(T[i].outer, T[i].mid));
    } catch (const DomainError&) {
    }
    if (mod < rep.min_modulus) {
      rep.min_modulus = mod;
      rep.argmin = i;
    }
  }
  if (n && rep.min_modulus < m)
    fail(3, {rep.argmin},
         "min modulus " + std::to_string(rep.min_modulus) + " below " + std::to_string(m));
  return rep;
}

ScatterReport validate_scattered(const NestedDiskSystem& system, const std::vector<TestMap>& maps,
                                 double lambda) {
  ScatterReport rep;
  const auto& T = system.triples;
  const std::size_t n = T.size();
  for (std::size_t x = 0; x < n; ++x) {
    // maximal disks strictly inside D_x; nesting makes them pairwise disjoint
    std::vector<std::size_t> inside;
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && strictly_inside(T[y].outer, T[x].outer)) inside.push_back(y);
    std::vector<std::size_t> maximal;
    for (auto y : inside) {
      bool covered = false;
      for (auto z : inside)
        if (z != y && strictly_inside(T[y].outer, T[z].outer)) covered = true;
      if (!covered) maximal.push_back(y);
    }
    ScatterEntry e;
    e.label = x;
    for (const auto& h : maps) {
      if (maximal.empty()) break;
      const double whole = area_rho_star_image(h, T[x].outer);
      double part = 0.0;
      for (auto y : maximal) part += area_rho_star_image(h, T[y].outer);
      const double ratio = part / whole;
      if (ratio > e.worst_ratio || e.worst_map.empty()) {
        e.worst_ratio = ratio;
        e.worst_map = h.name;
      }
    }
    e.pass = e.worst_ratio <= lambda;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

namespace {

// Newton for f(z) = w from z.
bool newton_preimage(const MonicPolynomial& f, cplx w, cplx& z) {
  for (int it = 0; it < 40; ++it) {
    const cplx df = f.derivative(z);
    if (df == 0.0) return false;
    const cplx dz = (f(z) - w) / df;
    z -= dz;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(dz) <= 4e-16 * (1.0 + std::abs(z))) return true;
  }
  // accept a stagnated but tiny residual
  return std::abs(f(z) - w) <= 1e-13 * (1.0 + std::abs(w));
}

double min_separation(const std::vector<cplx>& zs, std::size_t b) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < zs.size(); ++k)
    if (k != b) s = std::min(s, std::abs(zs[k] - zs[b]));
  return s;
}

struct Lifter {
  const MonicPolynomial& f;
  int max_depth;
  std::vector<std::vector<cplx>> paths;  // one per branch

  // Continues every branch from w0 to w1, appending the endpoint (and any
  // inserted midpoints) to the paths.
  void advance(cplx w0, cplx w1, std::vector<cplx>& zs, int depth) {
    std::vector<cplx> next(zs.size());
    bool ok = true;
    for (std::size_t b = 0; b < zs.size() && ok; ++b) {
      cplx z = zs[b] + (w1 - w0) / f.derivative(zs[b]);
      ok = newton_preimage(f, w1, z);
      // a branch must not move farther than a fraction of its distance to the others
      ok = ok && std::abs(z - zs[b]) < 0.3 * min_separation(zs, b);
      next[b] = z;
    }
    if (ok) {
      for (std::size_t b = 0; b < zs.size(); ++b)
        if (min_separation(next, b) < 1e-12 * (1.0 + std::abs(next[b]))) ok = false;
    }
    if (ok) {
      zs = std::move(next);
      for (std::size_t b = 0; b < zs.size(); ++b) paths[b].push_back(zs[b]);
      return;
    }
    if (depth >= max_depth)
      throw NumericError("branch collision: boundary passes too close to a critical value");
    const cplx mid = 0.5 * (w0 + w1);
    advance(w0, mid, zs, depth + 1);
    advance(mid, w1, zs, depth + 1);
  }
};

std::vector<cplx> resample(const std::vector<cplx>& pts, std::size_t target) {
  const std::size_t n = pts.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + std::abs(pts[(i + 1) % n] - pts[i]);
  const double L = cum[n];
  std::vector<cplx> out;
  out.reserve(target);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < target; ++k) {
    const double s = L * static_cast<double>(k) / static_cast<double>(target);
    while (seg + 1 < n && cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0 ? (s - cum[seg]) / len : 0.0;
    out.push_back(pts[seg] + t * (pts[(seg + 1) % n] - pts[seg]));
  }
  return out;
}

std::vector<PreimageComponent> lift_component(const MonicPolynomial& f,
                                              const std::vector<cplx>& boundary, unsigned degree,
                                              std::size_t parent, const PreimageOptions& opts) {
  const unsigned d = f.degree();
  std::vector<cplx> base = boundary;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto coeffs = f.coefficients();
    coeffs[0] -= base[0];
    std::vector<cplx> start = aberth_roots(coeffs);
    for (auto& z : start) newton_preimage(f, base[0], z);

    Lifter L{f, opts.max_subdivisions, std::vector<std::vector<cplx>>(d)};
    std::vector<cplx> zs = start;
    for (std::size_t b = 0; b < d; ++b) L.paths[b].push_back(zs[b]);
    const std::size_t n = base.size();
    for (std::size_t i = 0; i < n; ++i) L.advance(base[i], base[(i + 1) % n], zs, 0);

    // endpoint matching: each closed-up branch lands on one starting root
    double scale = 1.0;
    for (auto z : start) scale = std::max(scale, std::abs(z));
    std::vector<int> sigma(d, -1);
    bool ambiguous = false;
    for (std::size_t b = 0; b < d; ++b) {
      int hit = -1;
      for (std::size_t k = 0; k < d; ++k) {
        if (std::abs(zs[b] - start[k]) < 1e-9 * scale) {
          if (hit >= 0) ambiguous = true;
          hit = static_cast<int>(k);
        }
      }
      if (hit < 0) ambiguous = true;
      sigma[b] = hit;
    }
    if (!ambiguous) {
      std::vector<int> seen(d, 0);
      for (auto s : sigma) ambiguous = ambiguous || seen[s]++;
    }
    if (ambiguous) {
      // resolution doubling
      std::vector<cplx> finer;
      finer.reserve(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        finer.push_back(base[i]);
        finer.push_back(0.5 * (base[i] + base[(i + 1) % n]));
      }
      base = std::move(finer);
      continue;
    }

    std::vector<PreimageComponent> out;
    std::vector<bool> used(d, false);
    for (std::size_t b0 = 0; b0 < d; ++b0) {
      if (used[b0]) continue;
      PreimageComponent c;
      c.parent = parent;
      unsigned len = 0;
      for (std::size_t b = b0; !used[b]; b = static_cast<std::size_t>(sigma[b])) {
        used[b] = true;
        ++len;
        c.boundary.insert(c.boundary.end(), L.paths[b].begin(), L.paths[b].end() - 1);
      }
      c.local_degree = len;
      c.degree = degree * len;
      if (c.boundary.size() > opts.max_samples) c.boundary = resample(c.boundary, opts.max_samples);
      c.diameter = diameter(c.boundary);
      out.push_back(std::move(c));
    }
    return out;
  }
  throw NumericError("could not match closed lifts after resolution doubling");
}

}  // namespace

std::vector<std::vector<PreimageComponent>> preimage_components(const MonicPolynomial& f,
                                                                const Region& disk, int depth,
                                                                const PreimageOptions& opts) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  if (disk.boundary.size() < 3) throw DomainError("disk boundary needs at least 3 points");
  std::vector<cplx> base = disk.boundary;
  if (polygon_area(base) < 0) std::reverse(base.begin(), base.end());
  if (opts.boundary_samples > 0 && base.size() != static_cast<std::size_t>(opts.boundary_samples))
    base = resample(base, static_cast<std::size_t>(opts.boundary_samples));

  std::vector<std::vector<PreimageComponent>> levels;
  std::vector<PreimageComponent> current{{base, 1, 1, 0, diameter(base)}};
  for (int k = 1; k <= depth; ++k) {
    std::vector<PreimageComponent> next;
    for (std::size_t p = 0; p < current.size(); ++p) {
      auto comps = lift_component(f, current[p].boundary, current[p].degree, p, opts);
      next.insert(next.end(), std::make_move_iterator(comps.begin()),
                  std::make_move_iterator(comps.end()));
    }
    levels.push_back(next);
    current = std::move(next);
  }
  return levels;
}

StabilityReport backward_stability_probe(const MonicPolynomial& f, const Region& disk, int n_max,
                                         int burn_in, unsigned eta, const PreimageOptions& opts) {
  if (burn_in < 0) throw DomainError("burn-in must be nonnegative");
  auto levels = preimage_components(f, disk, n_max, opts);
  StabilityReport rep;
  rep.burn_in = burn_in;
  rep.eta = eta;
  rep.degree_bounded = true;
  rep.degree_sums_ok = true;
  unsigned long long dk = 1;
  for (int k = 1; k <= n_max; ++k) {
    dk *= f.degree();
    LevelStats s;
    s.level = k;
    const auto& comps = levels[static_cast<std::size_t>(k - 1)];
    s.components = comps.size();
    for (const auto& c : comps) {
      s.max_diameter = std::max(s.max_diameter, c.diameter);
      s.max_degree = std::max(s.max_degree, c.degree);
      s.degree_sum += c.degree;
    }
    rep.degree_bounded = rep.degree_bounded && s.max_degree <= eta;
    rep.degree_sums_ok = rep.degree_sums_ok && s.degree_sum == dk;
    rep.levels.push_back(s);
  }
  rep.diameters_decreasing = true;
  for (int k = burn_in + 2; k <= n_max; ++k)
    if (!(rep.levels[k - 1].max_diameter < rep.levels[k - 2].max_diameter))
      rep.diameters_decreasing = false;
  rep.final_ratio = rep.levels.back().max_diameter / rep.levels.front().max_diameter;
  return rep;
}

}  // namespace rayland
