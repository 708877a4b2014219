#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rayland/polynomial.hpp"

namespace rayland {

struct Disk {
  cplx center;
  double radius = 1.0;
};

/// Closed polyline (first point not repeated), positively oriented.
struct Region {
  std::vector<cplx> boundary;
  std::optional<cplx> basepoint;

  static Region circle(cplx center, double radius, int samples = 512);
  static Region polygon(std::vector<cplx> vertices);
};

bool contains(const Region& region, cplx z);
double polygon_area(const std::vector<cplx>& ring);
double diameter(const std::vector<cplx>& points);
/// Smallest distance from z to the polyline.
double boundary_distance(const Region& region, cplx z);

/// max / min distance from z to the boundary. DomainError when z is outside
/// the region or on its boundary.
double shape(const Region& region, cplx z);

struct AnnulusSpec {
  enum class Kind { RoundConcentric, CirclePair };
  Kind kind = Kind::RoundConcentric;
  cplx center{0.0};
  double r_in = 1.0, r_out = 2.0;  ///< RoundConcentric
  Disk outer, inner;               ///< CirclePair: closure of inner inside outer

  static AnnulusSpec concentric(cplx center, double r_in, double r_out);
  static AnnulusSpec circle_pair(Disk outer, Disk inner);
};

/// log(R)/(2 pi) of the conformally equivalent round annulus 1 < |z| < R.
double modulus(const AnnulusSpec& a);

/// Area in the metric |dw| / (2 pi |w|), by the boundary integral of
/// log|w| d(arg w). DomainError when 0 lies in the closed region.
double area_rho_star(const AnnulusSpec& a);
double area_rho_star(const Disk& d);
double area_rho_star(const Region& r);

/// Univalent test map with its derivative.
struct TestMap {
  std::string name;
  std::function<cplx(cplx)> h;
  std::function<cplx(cplx)> dh;

  static TestMap identity();
  static TestMap affine(cplx a, cplx b);
  /// z -> 1/(z - pole)
  static TestMap inversion(cplx pole);
  /// z -> exp(sum c_k z^k), coefficients low to high
  static TestMap exp_poly(std::vector<cplx> coeffs);
};

/// rho*-area of h(D) for a disk D. DomainError when h(D) winds around 0.
double area_rho_star_image(const TestMap& map, const Disk& d);

struct DiskTriple {
  cplx label;
  Disk inner;  ///< D''
  Disk mid;    ///< D'
  Disk outer;  ///< D
};

struct NestedDiskSystem {
  std::vector<DiskTriple> triples;
};

bool disk_inside(const Disk& a, const Disk& b, double tol = 1e-12);  ///< a within closed b
bool disks_meet(const Disk& a, const Disk& b);

struct Violation {
  int clause = 0;  ///< 0 system structure, 1 containment chain, 2 sub-disk placement, 3 modulus
  std::vector<std::size_t> labels;  ///< indices into the system
  std::string detail;
};

struct NestedReport {
  bool pass = true;
  double min_modulus = 0.0;
  std::size_t argmin = 0;
  std::vector<Violation> violations;
};

NestedReport validate_m_nested(const NestedDiskSystem& system, double m);

struct ScatterEntry {
  std::size_t label = 0;
  double worst_ratio = 0.0;
  std::string worst_map;
  bool pass = true;
};

struct ScatterReport {
  bool pass = true;
  std::vector<ScatterEntry> entries;
};

/// Checks Area(rho*, h(V_x)) <= lambda Area(rho*, h(D_x)) with V_x the union of
/// the system's outer disks strictly inside D_x, for every map supplied.
ScatterReport validate_scattered(const NestedDiskSystem& system, const std::vector<TestMap>& maps,
                                 double lambda);

struct PreimageComponent {
  std::vector<cplx> boundary;
  unsigned degree = 1;        ///< degree of f^k onto the base disk
  unsigned local_degree = 1;  ///< degree of f onto the parent component
  std::size_t parent = 0;     ///< index in the previous level (the base disk for level 1)
  double diameter = 0.0;
};

struct PreimageOptions {
  int boundary_samples = 256;   ///< samples on the base disk boundary
  std::size_t max_samples = 4096;  ///< resample component boundaries above this
  int max_subdivisions = 40;
};

/// Components of f^{-k}(disk), k = 1..depth, by lifting boundary curves
/// through every inverse branch. levels[k-1] holds level k. Throws
/// NumericError (branch collision) when a boundary passes through a critical
/// value of some f^k.
std::vector<std::vector<PreimageComponent>> preimage_components(const MonicPolynomial& f,
                                                                const Region& disk, int depth,
                                                                const PreimageOptions& opts = {});

struct LevelStats {
  int level = 0;
  std::size_t components = 0;
  double max_diameter = 0.0;
  unsigned max_degree = 0;
  unsigned long long degree_sum = 0;
};

struct StabilityReport {
  std::vector<LevelStats> levels;
  int burn_in = 2;
  bool diameters_decreasing = false;  ///< strictly decreasing over levels burn_in+1..n_max
  bool degree_bounded = false;        ///< max degree <= eta at every level
  unsigned eta = 0;
  bool degree_sums_ok = false;        ///< sum of degrees = d^k
  double final_ratio = 0.0;           ///< max diameter at n_max / at level 1
};

StabilityReport backward_stability_probe(const MonicPolynomial& f, const Region& disk, int n_max,
                                         int burn_in = 2, unsigned eta = 2,
                                         const PreimageOptions& opts = {});

}  // namespace rayland
