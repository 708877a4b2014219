#include <doctest.h>

#include <sstream>

#include "rayland/errors.hpp"
#include "rayland/io.hpp"

using namespace rayland;

TEST_CASE("JSON round trips are fixed points") {
  CriticalPortrait P{3, {{{Angle(0, 1), Angle(1, 3)}}, {{Angle(1, 2), Angle(5, 6)}}}};
  auto j = io::to_json(P);
  CHECK(io::portrait_from_json(j) == P);
  CHECK(io::to_json(io::portrait_from_json(j)).dump() == j.dump());

  MonicPolynomial f(3, {cplx(0.1, -0.2), cplx(1.0 / 3.0, 1e-17)});
  auto jf = io::to_json(f);
  CHECK(io::polynomial_from_json(jf) == f);
  CHECK(io::to_json(io::polynomial_from_json(jf)).dump() == jf.dump());

  NestedDiskSystem s;
  s.triples.push_back({cplx(1, 2), {cplx(1, 2), 0.1}, {cplx(1, 2), 0.2}, {cplx(1, 2), 0.3}});
  auto js = io::to_json(s);
  CHECK(io::to_json(io::disk_system_from_json(js)).dump() == js.dump());
}

TEST_CASE("malformed JSON raises domain errors") {
  CHECK_THROWS_AS(io::polynomial_from_json(io::json{{"degree", 2}}), DomainError);
  CHECK_THROWS_AS(io::portrait_from_json(io::json{{"degree", 2}, {"blocks", {{"x"}}}}), DomainError);
  CHECK_THROWS_AS(io::complex_from_json(io::json::array({1, 2, 3})), DomainError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), DomainError);
}

TEST_CASE("CSV and SVG writers") {
  RayPath p;
  p.samples.push_back({0.5, cplx(1, 2), 1e-17});
  std::ostringstream os;
  io::write_ray_csv(os, p);
  CHECK(os.str() == "s,re,im,green_residual\n0.5,1,2,1.0000000000000001e-17\n");

  auto svg = io::render_svg(MonicPolynomial::quadratic(-1.0), {0.0, 2.0, 40, 50}, {{0.0, 1.0}});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<rect x=") != std::string::npos);
}
