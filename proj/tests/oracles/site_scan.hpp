#pragma once

// Quadratic scan over all edge pairs for reconnection squares.

#include <set>
#include <tuple>
#include <vector>

#include "bandsurg/lattice.hpp"

namespace oracle {

struct FoundSite {
  std::size_t a, b;
  bool parallel;
  auto operator<=>(const FoundSite&) const = default;
};

inline std::vector<FoundSite> scan_all_pairs(const bandsurg::LatticePolygon& poly) {
  using bandsurg::Vec3;
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  std::set<std::pair<Vec3, Vec3>> occupied;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p = v[i], q = v[(i + 1) % n];
    occupied.insert({p, q});
    occupied.insert({q, p});
  }
  std::vector<FoundSite> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 p0 = v[i], p1 = v[(i + 1) % n];
      const Vec3 q0 = v[j], q1 = v[(j + 1) % n];
      const Vec3 da = p1 - p0, db = q1 - q0;
      bool parallel;
      Vec3 off;
      if (db == da) {
        parallel = true;
        off = q0 - p0;
      } else if (db == -da) {
        parallel = false;
        off = q1 - p0;
      } else {
        continue;
      }
      if (bandsurg::l1_norm(off) != 1) continue;
      if (off.x * da.x + off.y * da.y + off.z * da.z != 0) continue;
      if (occupied.count({p0, p0 + off}) || occupied.count({p1, p1 + off})) continue;
      out.push_back({i, j, parallel});
    }
  }
  return out;
}

}  // namespace oracle
