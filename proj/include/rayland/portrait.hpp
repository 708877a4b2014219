#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rayland/angle.hpp"

namespace rayland {

/// Angles of the external rays meeting at one critical point. Kept sorted and
/// duplicate free.
struct PortraitBlock {
  std::vector<Angle> angles;

  friend bool operator==(const PortraitBlock&, const PortraitBlock&) = default;
};

struct CriticalPortrait {
  unsigned degree = 2;
  std::vector<PortraitBlock> blocks;

  /// Sort angles inside blocks and blocks by their smallest angle.
  void canonicalize();
  std::string str() const;

  friend bool operator==(const CriticalPortrait&, const CriticalPortrait&) = default;
};

struct ValidationReport {
  bool structure_ok = true;  ///< degree >= 2, every block has >= 2 distinct angles
  std::vector<std::string> structure_errors;

  bool cp1 = true;  ///< each block collapses to one angle under m_d
  std::vector<std::size_t> cp1_failures;

  bool cp2 = true;  ///< blocks pairwise unlinked (and disjoint)
  std::vector<std::pair<std::size_t, std::size_t>> cp2_failures;

  bool cp3 = true;  ///< sum of (block size - 1) equals degree - 1
  long cp3_sum = 0;

  bool valid() const { return structure_ok && cp1 && cp2 && cp3; }
};

enum class PortraitClass { StrictlyPreperiodic, ContainsPeriodic };

/// True iff the angles of b all lie in one complementary arc of a. Throws
/// DomainError when the blocks share an angle.
bool blocks_unlinked(const PortraitBlock& a, const PortraitBlock& b);

ValidationReport validate_portrait(const CriticalPortrait& p);

/// {theta/2, (theta+1)/2}.
CriticalPortrait quadratic_portrait(const Angle& theta);

PortraitClass classify_portrait(const CriticalPortrait& p);
const char* to_string(PortraitClass c);

/// All valid degree-d portraits whose angles have denominator <= max_den, in
/// canonical form and lexicographic order. Throws ResourceError past `cap`.
std::vector<CriticalPortrait> enumerate_portraits(unsigned d, unsigned max_den,
                                                  std::size_t cap = 200000);

/// The common image m_d(block); assumes CP1 holds for the block.
Angle block_image(const PortraitBlock& block, unsigned d);

}  // namespace rayland
