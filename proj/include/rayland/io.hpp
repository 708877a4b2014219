#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rayland/geometry.hpp"
#include "rayland/portrait.hpp"
#include "rayland/rays.hpp"
#include "rayland/shift_locus.hpp"

namespace rayland::io {

using json = nlohmann::json;

// Complex numbers are [re, im]; angles are "p/q" strings.
json to_json(cplx z);
cplx complex_from_json(const json& j);

/// {"degree": d, "blocks": [["1/12", "7/12"], ...]}
json to_json(const CriticalPortrait& p);
CriticalPortrait portrait_from_json(const json& j);

/// {"degree": d, "lower": [a_0, ..., a_{d-2}]}
json to_json(const MonicPolynomial& f);
MonicPolynomial polynomial_from_json(const json& j);

/// [{"label": z, "inner": {"c": z, "r": x}, "mid": ..., "outer": ...}, ...]
json to_json(const NestedDiskSystem& s);
NestedDiskSystem disk_system_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const NestedReport& r);
json to_json(const ScatterReport& r);
json to_json(const StabilityReport& r);
json to_json(const LandingDiagnostics& d);
/// terminal data only; samples go to CSV
json to_json(const RayPath& p);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// s,re,im,green_residual
void write_ray_csv(std::ostream& os, const RayPath& p);
/// angle_index,re,im,green_residual
void write_equipotential_csv(std::ostream& os, const MonicPolynomial& f, double level,
                             const std::vector<cplx>& points);
/// r,re_0,im_0,...,residual with the lower coefficients interleaved
void write_paramray_csv(std::ostream& os, const std::vector<ParamRayPoint>& path);

struct SvgOptions {
  cplx center{0.0};
  double half_width = 2.0;
  int pixels = 400;
  int max_iterations = 200;
};

/// Escape-time membership raster of the filled Julia set with the given
/// polylines drawn on top.
std::string render_svg(const MonicPolynomial& f, const SvgOptions& opts,
                       const std::vector<std::vector<cplx>>& rays,
                       const std::vector<std::vector<cplx>>& equipotentials = {});

}  // namespace rayland::io
