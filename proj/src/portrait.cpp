#include "rayland/portrait.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rayland/errors.hpp"

namespace rayland {

void CriticalPortrait::canonicalize() {
  for (auto& b : blocks) std::sort(b.angles.begin(), b.angles.end());
  std::sort(blocks.begin(), blocks.end(), [](const PortraitBlock& x, const PortraitBlock& y) {
    return std::lexicographical_compare(x.angles.begin(), x.angles.end(), y.angles.begin(),
                                        y.angles.end());
  });
}

std::string CriticalPortrait::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    os << (i ? "," : "") << "{";
    for (std::size_t j = 0; j < blocks[i].angles.size(); ++j)
      os << (j ? "," : "") << blocks[i].angles[j].str();
    os << "}";
  }
  os << "}";
  return os.str();
}

namespace {

// Index of the complementary arc of `sorted` containing x (x not in sorted).
std::size_t arc_index(const std::vector<Angle>& sorted, const Angle& x) {
  auto pos = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  return pos == 0 ? sorted.size() - 1 : pos - 1;
}

}  // namespace

bool blocks_unlinked(const PortraitBlock& a, const PortraitBlock& b) {
  if (a.angles.empty() || b.angles.empty()) return true;
  std::vector<Angle> sa = a.angles;
  std::sort(sa.begin(), sa.end());
  for (const auto& x : b.angles)
    if (std::binary_search(sa.begin(), sa.end(), x))
      throw DomainError("blocks share the angle " + x.str());
  const std::size_t arc = arc_index(sa, b.angles.front());
  for (const auto& x : b.angles)
    if (arc_index(sa, x) != arc) return false;
  return true;
}

Angle block_image(const PortraitBlock& block, unsigned d) {
  if (block.angles.empty()) throw DomainError("empty block");
  return block.angles.front().times(d);
}

ValidationReport validate_portrait(const CriticalPortrait& p) {
  ValidationReport rep;
  if (p.degree < 2) {
    rep.structure_ok = false;
    rep.structure_errors.push_back("degree must be at least 2");
  }
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    std::set<Angle> uniq(p.blocks[i].angles.begin(), p.blocks[i].angles.end());
    if (uniq.size() != p.blocks[i].angles.size()) {
      rep.structure_ok = false;
      rep.structure_errors.push_back("block " + std::to_string(i) + " repeats an angle");
    }
    if (uniq.size() < 2) {
      rep.structure_ok = false;
      rep.structure_errors.push_back("block " + std::to_string(i) + " has fewer than two angles");
    }
  }
  if (p.blocks.empty()) {
    rep.structure_ok = false;
    rep.structure_errors.push_back("portrait has no blocks");
  }
  const unsigned d = std::max(p.degree, 2u);

  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& angles = p.blocks[i].angles;
    if (angles.empty()) continue;
    const Angle img = angles.front().times(d);
    for (const auto& a : angles) {
      if (a.times(d) != img) {
        rep.cp1 = false;
        rep.cp1_failures.push_back(i);
        break;
      }
    }
  }

  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < p.blocks.size(); ++j) {
      bool ok = false;
      try {
        ok = blocks_unlinked(p.blocks[i], p.blocks[j]);
      } catch (const DomainError&) {
        ok = false;
      }
      if (!ok) {
        rep.cp2 = false;
        rep.cp2_failures.emplace_back(i, j);
      }
    }
  }

  rep.cp3_sum = 0;
  for (const auto& b : p.blocks) rep.cp3_sum += static_cast<long>(b.angles.size()) - 1;
  rep.cp3 = rep.cp3_sum == static_cast<long>(p.degree) - 1;
  return rep;
}

CriticalPortrait quadratic_portrait(const Angle& theta) {
  CriticalPortrait p;
  p.degree = 2;
  p.blocks.push_back(PortraitBlock{{theta.preimage(2, 0), theta.preimage(2, 1)}});
  p.canonicalize();
  return p;
}

PortraitClass classify_portrait(const CriticalPortrait& p) {
  for (const auto& b : p.blocks)
    for (const auto& a : b.angles)
      if (angle_orbit(a, p.degree).preperiod == 0) return PortraitClass::ContainsPeriodic;
  return PortraitClass::StrictlyPreperiodic;
}

const char* to_string(PortraitClass c) {
  return c == PortraitClass::ContainsPeriodic ? "ContainsPeriodic" : "StrictlyPreperiodic";
}

std::vector<CriticalPortrait> enumerate_portraits(unsigned d, unsigned max_den, std::size_t cap) {
  if (d < 2) throw DomainError("degree must be at least 2");
  if (max_den < 2) throw DomainError("max_den must be at least 2");

  // Candidate angles grouped by their image under m_d.
  std::map<Angle, std::vector<Angle>> fibers;
  for (unsigned q = 1; q <= max_den; ++q)
    for (unsigned p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) {
        Angle a(p, q);
        fibers[a.times(d)].push_back(a);
      }

  // Every block is a subset of size 2..d of one fiber.
  std::vector<PortraitBlock> candidates;
  for (auto& [img, fiber] : fibers) {
    std::sort(fiber.begin(), fiber.end());
    const std::size_t n = fiber.size();
    if (n < 2) continue;
    if (n > 24) throw ResourceError("fiber too large for brute-force enumeration");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const int k = std::popcount(mask);
      if (k < 2 || k > static_cast<int>(d)) continue;
      PortraitBlock b;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) b.angles.push_back(fiber[i]);
      candidates.push_back(std::move(b));
      if (candidates.size() > cap) throw ResourceError("too many candidate blocks");
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const PortraitBlock& x, const PortraitBlock& y) {
    return std::lexicographical_compare(x.angles.begin(), x.angles.end(), y.angles.begin(),
                                        y.angles.end());
  });

  auto compatible = [](const PortraitBlock& a, const PortraitBlock& b) {
    for (const auto& x : b.angles)
      if (std::binary_search(a.angles.begin(), a.angles.end(), x)) return false;
    return blocks_unlinked(a, b);
  };

  // Depth-first choice of blocks in increasing candidate order; the remaining
  // budget of sum(size-1) prunes the search.
  std::vector<CriticalPortrait> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, long)> rec = [&](std::size_t start, long budget) {
    if (budget == 0) {
      CriticalPortrait p;
      p.degree = d;
      for (auto idx : chosen) p.blocks.push_back(candidates[idx]);
      p.canonicalize();
      out.push_back(std::move(p));
      if (out.size() > cap) throw ResourceError("portrait enumeration exceeded cap");
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      const long need = static_cast<long>(candidates[i].angles.size()) - 1;
      if (need > budget) continue;
      bool ok = true;
      for (auto idx : chosen)
        if (!compatible(candidates[idx], candidates[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(i);
      rec(i + 1, budget - need);
      chosen.pop_back();
    }
  };
  rec(0, static_cast<long>(d) - 1);
  std::sort(out.begin(), out.end(), [](const CriticalPortrait& x, const CriticalPortrait& y) {
    return std::lexicographical_compare(
        x.blocks.begin(), x.blocks.end(), y.blocks.begin(), y.blocks.end(),
        [](const PortraitBlock& a, const PortraitBlock& b) {
          return std::lexicographical_compare(a.angles.begin(), a.angles.end(), b.angles.begin(),
                                              b.angles.end());
        });
  });
  return out;
}

}  // namespace rayland
