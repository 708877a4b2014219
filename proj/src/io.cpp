#include "rayland/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rayland/errors.hpp"
#include "rayland/potential.hpp"

namespace rayland::io {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json disk_json(const Disk& d) { return {{"c", to_json(d.center)}, {"r", d.radius}}; }

Disk disk_from(const json& j) { return {complex_from_json(j.at("c")), j.at("r").get<double>()}; }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw DomainError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CriticalPortrait& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) {
    json a = json::array();
    for (const auto& t : b.angles) a.push_back(t.str());
    blocks.push_back(a);
  }
  return {{"degree", p.degree}, {"blocks", blocks}};
}

CriticalPortrait portrait_from_json(const json& j) {
  try {
    CriticalPortrait p;
    p.degree = j.at("degree").get<unsigned>();
    for (const auto& b : j.at("blocks")) {
      PortraitBlock blk;
      for (const auto& a : b) blk.angles.push_back(Angle::parse(a.get<std::string>()));
      p.blocks.push_back(std::move(blk));
    }
    return p;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed portrait JSON: ") + e.what());
  }
}

json to_json(const MonicPolynomial& f) {
  json lower = json::array();
  for (auto a : f.lower()) lower.push_back(to_json(a));
  return {{"degree", f.degree()}, {"lower", lower}};
}

MonicPolynomial polynomial_from_json(const json& j) {
  try {
    std::vector<cplx> lower;
    for (const auto& a : j.at("lower")) lower.push_back(complex_from_json(a));
    return MonicPolynomial(j.at("degree").get<unsigned>(), std::move(lower));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

json to_json(const NestedDiskSystem& s) {
  json out = json::array();
  for (const auto& t : s.triples)
    out.push_back({{"label", to_json(t.label)},
                   {"inner", disk_json(t.inner)},
                   {"mid", disk_json(t.mid)},
                   {"outer", disk_json(t.outer)}});
  return out;
}

NestedDiskSystem disk_system_from_json(const json& j) {
  try {
    NestedDiskSystem s;
    for (const auto& t : j)
      s.triples.push_back({complex_from_json(t.at("label")), disk_from(t.at("inner")),
                           disk_from(t.at("mid")), disk_from(t.at("outer"))});
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed disk system JSON: ") + e.what());
  }
}

json to_json(const ValidationReport& r) {
  json pairs = json::array();
  for (auto [a, b] : r.cp2_failures) pairs.push_back({a, b});
  return {{"valid", r.valid()},
          {"structure_ok", r.structure_ok},
          {"structure_errors", r.structure_errors},
          {"cp1", r.cp1},
          {"cp1_failures", r.cp1_failures},
          {"cp2", r.cp2},
          {"cp2_failures", pairs},
          {"cp3", r.cp3},
          {"cp3_sum", r.cp3_sum}};
}

json to_json(const NestedReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"clause", x.clause}, {"labels", x.labels}, {"detail", x.detail}});
  return {{"pass", r.pass},
          {"min_modulus", finite_or_null(r.min_modulus)},
          {"argmin", r.argmin},
          {"violations", v}};
}

json to_json(const ScatterReport& r) {
  json e = json::array();
  for (const auto& x : r.entries)
    e.push_back({{"label", x.label},
                 {"worst_ratio", x.worst_ratio},
                 {"worst_map", x.worst_map},
                 {"pass", x.pass}});
  return {{"pass", r.pass}, {"entries", e}};
}

json to_json(const StabilityReport& r) {
  json level = json::array(), count = json::array(), diam = json::array(), deg = json::array(),
       sums = json::array();
  for (const auto& s : r.levels) {
    level.push_back(s.level);
    count.push_back(s.components);
    diam.push_back(s.max_diameter);
    deg.push_back(s.max_degree);
    sums.push_back(s.degree_sum);
  }
  return {{"level", level},
          {"components", count},
          {"max_diameter", diam},
          {"max_degree", deg},
          {"degree_sum", sums},
          {"burn_in", r.burn_in},
          {"eta", r.eta},
          {"diameters_decreasing", r.diameters_decreasing},
          {"degree_bounded", r.degree_bounded},
          {"degree_sums_ok", r.degree_sums_ok},
          {"final_ratio", r.final_ratio}};
}

json to_json(const LandingDiagnostics& d) {
  json limits = json::array();
  for (const auto& f : d.limits) limits.push_back(to_json(f));
  return {{"r_schedule", d.r_schedule},
          {"limits", limits},
          {"cauchy_increments", d.cauchy_increments},
          {"extrapolated_limit", to_json(d.extrapolated_limit)},
          {"decay_ratio", finite_or_null(d.decay_ratio)},
          {"geometric", d.geometric},
          {"error_estimate", finite_or_null(d.error_estimate)},
          {"verdict", d.verdict},
          {"method", d.method}};
}

json to_json(const RayPath& p) {
  json j = {{"angle", p.angle.str()},
            {"terminal", to_string(p.terminal)},
            {"samples", p.samples.size()},
            {"reason", p.reason}};
  if (p.terminal == RayTerminal::Landed) {
    j["terminal_point"] = to_json(p.terminal_point);
    j["decay_ratio"] = finite_or_null(p.decay_ratio);
  }
  if (p.terminal == RayTerminal::Bifurcated) {
    j["terminal_point"] = to_json(p.terminal_point);
    j["bifurcation_potential"] = p.bifurcation_potential;
  }
  if (!p.samples.empty()) j["final_potential"] = p.samples.back().potential;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

void write_ray_csv(std::ostream& os, const RayPath& p) {
  os << "s,re,im,green_residual\n";
  for (const auto& s : p.samples)
    os << num(s.potential) << ',' << num(s.point.real()) << ',' << num(s.point.imag()) << ','
       << num(s.green_residual) << '\n';
}

void write_equipotential_csv(std::ostream& os, const MonicPolynomial& f, double level,
                             const std::vector<cplx>& points) {
  os << "angle_index,re,im,green_residual\n";
  for (std::size_t k = 0; k < points.size(); ++k)
    os << k << ',' << num(points[k].real()) << ',' << num(points[k].imag()) << ','
       << num(std::abs(green(f, points[k]).green - level)) << '\n';
}

void write_paramray_csv(std::ostream& os, const std::vector<ParamRayPoint>& path) {
  const std::size_t m = path.empty() ? 0 : path.front().poly.lower().size();
  os << "r";
  for (std::size_t k = 0; k < m; ++k) os << ",re_a" << k << ",im_a" << k;
  os << ",residual\n";
  for (const auto& p : path) {
    os << num(p.r);
    for (auto a : p.poly.lower()) os << ',' << num(a.real()) << ',' << num(a.imag());
    os << ',' << num(p.residual) << '\n';
  }
}

std::string render_svg(const MonicPolynomial& f, const SvgOptions& opts,
                       const std::vector<std::vector<cplx>>& rays,
                       const std::vector<std::vector<cplx>>& equipotentials) {
  if (opts.pixels < 2 || !(opts.half_width > 0)) throw DomainError("bad SVG window");
  const int n = opts.pixels;
  const double h = 2.0 * opts.half_width / n;
  const double R = f.escape_radius();
  const double x0 = opts.center.real() - opts.half_width;
  const double y1 = opts.center.imag() + opts.half_width;
  auto px = [&](cplx z) {
    return std::pair{(z.real() - x0) / h, (y1 - z.imag()) / h};
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n << "\" height=\"" << n
    << "\" viewBox=\"0 0 " << n << ' ' << n << "\" shape-rendering=\"crispEdges\">\n";
  s << "<rect width=\"" << n << "\" height=\"" << n << "\" fill=\"white\"/>\n<g fill=\"black\">\n";
  // bounded pixels as horizontal runs
  for (int row = 0; row < n; ++row) {
    int start = -1;
    for (int col = 0; col <= n; ++col) {
      bool inside = false;
      if (col < n) {
        cplx z(x0 + (col + 0.5) * h, y1 - (row + 0.5) * h);
        inside = true;
        for (int it = 0; it < opts.max_iterations; ++it) {
          if (std::abs(z) > R) {
            inside = false;
            break;
          }
          z = f(z);
        }
      }
      if (inside && start < 0) start = col;
      if (!inside && start >= 0) {
        s << "<rect x=\"" << start << "\" y=\"" << row << "\" width=\"" << col - start
          << "\" height=\"1\"/>\n";
        start = -1;
      }
    }
  }
  s << "</g>\n";
  auto polyline = [&](const std::vector<cplx>& pts, const char* colour, bool closed) {
    s << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << colour
      << "\" stroke-width=\"1\" points=\"";
    for (auto z : pts) {
      auto [x, y] = px(z);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f,%.3f ", x, y);
      s << buf;
    }
    s << "\"/>\n";
  };
  for (const auto& e : equipotentials) polyline(e, "steelblue", true);
  for (const auto& r : rays) polyline(r, "crimson", false);
  s << "</svg>\n";
  return s.str();
}

}  // namespace rayland::io
