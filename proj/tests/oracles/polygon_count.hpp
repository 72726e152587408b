#pragma once

// Exact counts of self-avoiding polygons in the cubic lattice, up to
// translation, by depth-first enumeration of closed walks.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

namespace oracle {

namespace detail {

struct WalkCounter {
  int max_len;
  int span;
  std::vector<char> used;
  std::map<int, std::uint64_t> closed;  // length -> walks with first step +x

  int at(int x, int y, int z) const { return ((x + span) * (2 * span + 1) + (y + span)) * (2 * span + 1) + (z + span); }

  void extend(int x, int y, int z, int steps) {
    const int dist = std::abs(x) + std::abs(y) + std::abs(z);
    if (dist == 1 && steps + 1 >= 4) ++closed[steps + 1];
    if (steps + 1 >= max_len) return;
    static constexpr int kDir[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (const auto& d : kDir) {
      const int nx = x + d[0], ny = y + d[1], nz = z + d[2];
      // must still be able to walk home
      if (std::abs(nx) + std::abs(ny) + std::abs(nz) > max_len - steps - 1) continue;
      const int k = at(nx, ny, nz);
      if (used[static_cast<std::size_t>(k)]) continue;
      used[static_cast<std::size_t>(k)] = 1;
      extend(nx, ny, nz, steps + 1);
      used[static_cast<std::size_t>(k)] = 0;
    }
  }
};

}  // namespace detail

/// p_n for even n in [4, max_len]: polygons of n edges, counted once per translation class.
inline std::map<int, std::uint64_t> polygon_counts(int max_len) {
  detail::WalkCounter c{max_len, max_len / 2 + 1, {}, {}};
  const int side = 2 * c.span + 1;
  c.used.assign(static_cast<std::size_t>(side) * side * side, 0);
  c.used[static_cast<std::size_t>(c.at(0, 0, 0))] = 1;
  c.used[static_cast<std::size_t>(c.at(1, 0, 0))] = 1;
  c.extend(1, 0, 0, 1);
  std::map<int, std::uint64_t> out;
  // 6 first steps, n start vertices, 2 directions
  for (const auto& [n, w] : c.closed) out[n] = 6 * w / (2 * static_cast<std::uint64_t>(n));
  return out;
}

}  // namespace oracle
