// rayland command-line front end. Exit codes: 0 success, 1 usage,
// 2 domain or validation failure, 3 numeric failure (partial output written).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rayland/errors.hpp"
#include "rayland/geometry.hpp"
#include "rayland/io.hpp"
#include "rayland/portrait.hpp"
#include "rayland/potential.hpp"
#include "rayland/rays.hpp"
#include "rayland/shift_locus.hpp"

using namespace rayland;
using io::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kNumeric = 3 };

std::string g_out_dir;

std::string out_path(const std::string& p) {
  if (p.empty() || p == "-" || g_out_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
  std::filesystem::create_directories(g_out_dir);
  return (std::filesystem::path(g_out_dir) / p).string();
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_text_file(out_path(out), text);
}

template <class F>
void write_stream_file(const std::string& path, F&& fill) {
  std::ostringstream s;
  fill(s);
  io::write_text_file(out_path(path), s.str());
}

cplx parse_point(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw DomainError("cannot parse point '" + s + "', expected re,im");
  }
}

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  } catch (const std::exception&) {
    throw DomainError("cannot parse numbers in '" + s + "'");
  }
  return out;
}

Disk parse_disk(const std::string& s) {
  auto v = parse_numbers(s);
  if (v.size() != 3) throw DomainError("disk must be cx,cy,r");
  return {{v[0], v[1]}, v[2]};
}

// "{{1/12,7/12},{...}}"
CriticalPortrait parse_portrait_text(const std::string& text, unsigned degree) {
  CriticalPortrait p;
  p.degree = degree;
  std::string cur;
  PortraitBlock blk;
  int depth = 0;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') {
      ++depth;
      continue;
    }
    if (ch == ',' || ch == '}') {
      if (!cur.empty()) blk.angles.push_back(Angle::parse(cur));
      cur.clear();
      if (ch == '}') {
        if (depth == 2) p.blocks.push_back(std::move(blk)), blk = {};
        --depth;
      }
      continue;
    }
    cur += ch;
  }
  if (depth != 0 || p.blocks.empty()) throw DomainError("malformed portrait text '" + text + "'");
  return p;
}

struct PortraitSource {
  std::string file, text;
  unsigned degree = 2;
  CriticalPortrait get() const {
    if (!file.empty()) return io::portrait_from_json(io::read_json_file(file));
    if (!text.empty()) return parse_portrait_text(text, degree);
    throw CLI::ValidationError("input", "give --file or --portrait");
  }
  void attach(CLI::App* app) {
    app->add_option("--file", file, "portrait JSON file");
    app->add_option("--portrait", text, "portrait as text, e.g. {{1/12,7/12}}");
    app->add_option("--degree", degree, "degree for --portrait")->capture_default_str();
  }
};

struct PolySource {
  std::string file, quadratic;
  MonicPolynomial get() const {
    if (!file.empty()) return io::polynomial_from_json(io::read_json_file(file));
    if (!quadratic.empty()) return MonicPolynomial::quadratic(parse_point(quadratic));
    throw CLI::ValidationError("input", "give --poly or --quadratic");
  }
  void attach(CLI::App* app) {
    app->add_option("--poly", file, "polynomial JSON file");
    app->add_option("--quadratic", quadratic, "z^2 + c with c given as re,im");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical portraits, external rays, shift-locus parameter rays and distortion geometry"};
  app.set_config("--config", "", "key = value config file; flags override it");
  app.add_option("--out-dir", g_out_dir, "directory for relative output paths")
      ->envname("RAYLAND_OUT_DIR");
  app.require_subcommand(1);

  std::function<int()> run;
  std::string out;

  // portrait
  auto* portrait = app.add_subcommand("portrait", "critical portrait combinatorics");
  portrait->require_subcommand(1);
  PortraitSource psrc;
  auto* p_validate = portrait->add_subcommand("validate", "check CP1-CP3");
  psrc.attach(p_validate);
  p_validate->add_option("--out", out, "JSON output path (default stdout)");
  p_validate->callback([&] {
    run = [&] {
      auto rep = validate_portrait(psrc.get());
      emit(io::to_json(rep), out);
      return rep.valid() ? kOk : kDomain;
    };
  });
  auto* p_classify = portrait->add_subcommand("classify", "strictly preperiodic or periodic");
  psrc.attach(p_classify);
  p_classify->add_option("--out", out, "JSON output path");
  p_classify->callback([&] {
    run = [&] {
      auto p = psrc.get();
      auto rep = validate_portrait(p);
      if (!rep.valid()) {
        emit(io::to_json(rep), out);
        return kDomain;
      }
      emit({{"portrait", io::to_json(p)}, {"class", to_string(classify_portrait(p))}}, out);
      return kOk;
    };
  });
  unsigned enum_degree = 2, enum_den = 8;
  std::size_t enum_cap = 200000;
  auto* p_enum = portrait->add_subcommand("enumerate", "all portraits up to a denominator");
  p_enum->add_option("--degree", enum_degree)->capture_default_str();
  p_enum->add_option("--max-den", enum_den)->capture_default_str();
  p_enum->add_option("--cap", enum_cap)->capture_default_str();
  p_enum->add_option("--out", out, "JSON output path");
  p_enum->callback([&] {
    run = [&] {
      json arr = json::array();
      for (const auto& p : enumerate_portraits(enum_degree, enum_den, enum_cap)) arr.push_back(io::to_json(p));
      emit(arr, out);
      return kOk;
    };
  });
  std::string theta_text;
  auto* p_quad = portrait->add_subcommand("quadratic", "portrait of a quadratic parameter angle");
  p_quad->add_option("--theta", theta_text, "angle p/q")->required();
  p_quad->add_option("--out", out, "JSON output path");
  p_quad->callback([&] {
    run = [&] {
      emit(io::to_json(quadratic_portrait(Angle::parse(theta_text))), out);
      return kOk;
    };
  });

  // ray
  PolySource poly;
  StepControl ctrl;
  double s_start = 0.0, s_end = 1e-9;
  std::string csv = "ray.csv", svg;
  io::SvgOptions svg_opts;
  auto* ray = app.add_subcommand("ray", "trace a dynamical external ray");
  poly.attach(ray);
  ray->add_option("--theta", theta_text, "angle p/q")->required();
  ray->add_option("--s-start", s_start, "starting potential (default: above the escape radius)");
  ray->add_option("--s-end", s_end, "final potential")->capture_default_str();
  ray->add_option("--rho", ctrl.rho, "potential ratio per step")->capture_default_str();
  ray->add_option("--rho-fine", ctrl.rho_fine)->capture_default_str();
  ray->add_option("--landing-tol", ctrl.landing_tol)->capture_default_str();
  ray->add_option("--csv", csv, "sample CSV path")->capture_default_str();
  ray->add_option("--svg", svg, "optional SVG overlay path");
  ray->add_option("--svg-half-width", svg_opts.half_width)->capture_default_str();
  ray->add_option("--svg-pixels", svg_opts.pixels)->capture_default_str();
  ray->add_option("--svg-iterations", svg_opts.max_iterations)->capture_default_str();
  ray->add_option("--out", out, "JSON summary path");
  ray->callback([&] {
    run = [&] {
      auto f = poly.get();
      const Angle theta = Angle::parse(theta_text);
      const double top = s_start > 0 ? s_start : default_top_potential(f);
      auto finish = [&](const RayPath& path) {
        write_stream_file(csv, [&](std::ostream& s) { io::write_ray_csv(s, path); });
        if (!svg.empty()) {
          std::vector<cplx> pts;
          for (const auto& smp : path.samples) pts.push_back(smp.point);
          io::write_text_file(out_path(svg), io::render_svg(f, svg_opts, {pts}));
        }
      };
      try {
        auto path = trace_ray(f, theta, top, s_end, ctrl);
        finish(path);
        emit(io::to_json(path), out);
        return kOk;
      } catch (const TraceError& e) {
        finish(e.partial());
        json j = io::to_json(e.partial());
        j["error"] = e.what();
        emit(j, out);
        std::cerr << "ray: " << e.what() << '\n';
        return kNumeric;
      }
    };
  });

  // paramray
  double r_from = 10.0, r_to = 1.0, rho = 0.5, r_min = 1e-6, land_tol = 1e-3;
  bool land = false;
  std::string pcsv = "paramray.csv";
  auto* pr = app.add_subcommand("paramray", "continue a shift-locus parameter ray");
  PortraitSource prsrc;
  prsrc.attach(pr);
  pr->add_option("--r-from", r_from)->capture_default_str();
  pr->add_option("--r-to", r_to)->capture_default_str();
  pr->add_option("--rho", rho, "escape-rate ratio per step")->capture_default_str();
  pr->add_flag("--land", land, "run the landing probe down to --r-min");
  pr->add_option("--r-min", r_min)->capture_default_str();
  pr->add_option("--tol", land_tol, "landing tolerance")->capture_default_str();
  pr->add_option("--csv", pcsv, "path CSV")->capture_default_str();
  pr->add_option("--out", out, "JSON output path");
  pr->callback([&] {
    run = [&] {
      auto P = prsrc.get();
      try {
        if (land) {
          LandingOptions lo;
          lo.r_from = r_from;
          auto diag = landing_probe(P, r_min, land_tol, lo);
          emit(io::to_json(diag), out);
          return diag.verdict == "landed" ? kOk : kNumeric;
        }
        auto path = continue_param_ray(P, r_from, r_to, rho);
        write_stream_file(pcsv, [&](std::ostream& s) { io::write_paramray_csv(s, path); });
        json j = {{"portrait", io::to_json(P)},
                  {"points", path.size()},
                  {"final", io::to_json(path.back().poly)},
                  {"max_residual", 0.0}};
        double mr = 0.0;
        for (const auto& p : path) mr = std::max(mr, p.residual);
        j["max_residual"] = mr;
        emit(j, out);
        return kOk;
      } catch (const ContinuationError& e) {
        write_stream_file(pcsv, [&](std::ostream& s) { io::write_paramray_csv(s, e.partial()); });
        emit({{"error", e.what()}, {"last_good_r", e.last_good_r()}}, out);
        std::cerr << "paramray: " << e.what() << '\n';
        return kNumeric;
      }
    };
  });

  // equipotential
  double level = 1.0;
  int samples = 256;
  std::string ecsv = "equipotential.csv";
  auto* eq = app.add_subcommand("equipotential", "sample a level curve of the Green function");
  PolySource eq_poly;
  eq_poly.attach(eq);
  eq->add_option("--level", level)->capture_default_str();
  eq->add_option("--samples", samples)->capture_default_str();
  eq->add_option("--csv", ecsv)->capture_default_str();
  eq->add_option("--svg", svg, "optional SVG path");
  eq->callback([&] {
    run = [&] {
      auto f = eq_poly.get();
      auto pts = equipotential(f, level, samples);
      write_stream_file(ecsv, [&](std::ostream& s) { io::write_equipotential_csv(s, f, level, pts); });
      if (!svg.empty()) io::write_text_file(out_path(svg), io::render_svg(f, svg_opts, {}, {pts}));
      return kOk;
    };
  });

  // geometry
  auto* geo = app.add_subcommand("geometry", "distortion geometry primitives");
  geo->require_subcommand(1);
  std::string polygon_text, circle_text, point_text;
  auto* g_shape = geo->add_subcommand("shape", "max/min boundary distance ratio");
  g_shape->add_option("--polygon", polygon_text, "vertices x,y;x,y;...");
  g_shape->add_option("--circle", circle_text, "cx,cy,r");
  g_shape->add_option("--point", point_text, "x,y")->required();
  g_shape->callback([&] {
    run = [&] {
      Region r;
      if (!circle_text.empty()) {
        auto d = parse_disk(circle_text);
        r = Region::circle(d.center, d.radius, 4096);
      } else {
        std::vector<cplx> v;
        std::stringstream ss(polygon_text);
        std::string item;
        while (std::getline(ss, item, ';')) v.push_back(parse_point(item));
        r = Region::polygon(v);
      }
      emit({{"shape", shape(r, parse_point(point_text))}}, out);
      return kOk;
    };
  });
  std::vector<double> concentric;
  std::string outer_text, inner_text;
  auto* g_mod = geo->add_subcommand("modulus", "modulus of an annulus");
  g_mod->add_option("--concentric", concentric, "r_in r_out")->expected(2);
  g_mod->add_option("--outer", outer_text, "outer disk cx,cy,r");
  g_mod->add_option("--inner", inner_text, "inner disk cx,cy,r");
  auto annulus = [&] {
    if (concentric.size() == 2) return AnnulusSpec::concentric(0.0, concentric[0], concentric[1]);
    if (outer_text.empty() || inner_text.empty()) throw CLI::ValidationError("input", "give --concentric or --outer/--inner");
    return AnnulusSpec::circle_pair(parse_disk(outer_text), parse_disk(inner_text));
  };
  g_mod->callback([&] {
    run = [&] {
      emit({{"modulus", modulus(annulus())}}, out);
      return kOk;
    };
  });
  std::string disk_text;
  auto* g_rho = geo->add_subcommand("rhostar", "rho*-area of an annulus or disk");
  g_rho->add_option("--concentric", concentric, "r_in r_out")->expected(2);
  g_rho->add_option("--outer", outer_text);
  g_rho->add_option("--inner", inner_text);
  g_rho->add_option("--disk", disk_text, "cx,cy,r");
  g_rho->callback([&] {
    run = [&] {
      const double a = disk_text.empty() ? area_rho_star(annulus()) : area_rho_star(parse_disk(disk_text));
      emit({{"area", a}}, out);
      return kOk;
    };
  });
  std::string sys_file;
  double m = 0.5, lambda = 0.5;
  auto* g_nested = geo->add_subcommand("nested", "check the m-nested clauses");
  g_nested->add_option("--file", sys_file, "disk system JSON")->required();
  g_nested->add_option("--m", m)->capture_default_str();
  g_nested->add_option("--out", out);
  g_nested->callback([&] {
    run = [&] {
      auto rep = validate_m_nested(io::disk_system_from_json(io::read_json_file(sys_file)), m);
      emit(io::to_json(rep), out);
      return rep.pass ? kOk : kDomain;
    };
  });
  std::vector<std::string> map_names{"identity"};
  auto* g_scat = geo->add_subcommand("scattered", "check lambda-scattering against test maps");
  g_scat->add_option("--file", sys_file, "disk system JSON")->required();
  g_scat->add_option("--lambda", lambda)->capture_default_str();
  g_scat->add_option("--maps", map_names, "identity | inversion:x,y | affine:a,b,c,d | exp:c0,..")
      ->delimiter(' ');
  g_scat->add_option("--out", out);
  g_scat->callback([&] {
    run = [&] {
      std::vector<TestMap> maps;
      for (const auto& name : map_names) {
        const auto colon = name.find(':');
        const std::string kind = name.substr(0, colon);
        const auto args = colon == std::string::npos ? std::vector<double>{} : parse_numbers(name.substr(colon + 1));
        if (kind == "identity") {
          maps.push_back(TestMap::identity());
        } else if (kind == "inversion" && args.size() == 2) {
          maps.push_back(TestMap::inversion({args[0], args[1]}));
        } else if (kind == "affine" && args.size() == 4) {
          maps.push_back(TestMap::affine({args[0], args[1]}, {args[2], args[3]}));
        } else if (kind == "exp" && !args.empty() && args.size() % 2 == 0) {
          std::vector<cplx> c;
          for (std::size_t k = 0; k < args.size(); k += 2) c.push_back({args[k], args[k + 1]});
          maps.push_back(TestMap::exp_poly(c));
        } else {
          throw CLI::ValidationError("--maps", "unknown test map '" + name + "'");
        }
      }
      auto rep = validate_scattered(io::disk_system_from_json(io::read_json_file(sys_file)), maps, lambda);
      emit(io::to_json(rep), out);
      return rep.pass ? kOk : kDomain;
    };
  });
  PolySource mane_poly;
  std::string center_text = "0,0";
  double radius = 0.05;
  int depth = 8, burn_in = 2, boundary_samples = 256;
  unsigned eta = 2;
  auto* g_mane = geo->add_subcommand("mane", "backward stability probe");
  mane_poly.attach(g_mane);
  g_mane->add_option("--center", center_text, "x,y")->capture_default_str();
  g_mane->add_option("--radius", radius)->capture_default_str();
  g_mane->add_option("--depth", depth)->capture_default_str();
  g_mane->add_option("--burn-in", burn_in)->capture_default_str();
  g_mane->add_option("--eta", eta)->capture_default_str();
  g_mane->add_option("--samples", boundary_samples)->capture_default_str();
  g_mane->add_option("--out", out);
  g_mane->callback([&] {
    run = [&] {
      PreimageOptions po;
      po.boundary_samples = boundary_samples;
      auto rep = backward_stability_probe(mane_poly.get(),
                                          Region::circle(parse_point(center_text), radius, boundary_samples),
                                          depth, burn_in, eta, po);
      emit(io::to_json(rep), out);
      return rep.diameters_decreasing && rep.degree_bounded && rep.degree_sums_ok ? kOk : kDomain;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run ? run() : kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
