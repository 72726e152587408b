#pragma once

// Shared fixtures for the unit tests.

#include <string>
#include <vector>

#include "bandsurg/bfacf.hpp"
#include "bandsurg/knot_table.hpp"
#include "bandsurg/lattice.hpp"

namespace testing {

inline bandsurg::LatticePolygon unit_square() {
  using bandsurg::make_vec;
  return bandsurg::LatticePolygon({make_vec(0, 0, 0), make_vec(1, 0, 0), make_vec(1, 1, 0), make_vec(0, 1, 0)});
}

inline bandsurg::LatticePolygon rectangle_2x1() {
  using bandsurg::make_vec;
  return bandsurg::LatticePolygon(
      {make_vec(0, 0, 0), make_vec(1, 0, 0), make_vec(2, 0, 0), make_vec(2, 1, 0), make_vec(1, 1, 0), make_vec(0, 1, 0)});
}

/// Unknot of length 22 whose legs along y = 0 and y = 1 both run +x, giving
/// three parallel sites between them plus antiparallel ones.
inline bandsurg::LatticePolygon parallel_legs() {
  using bandsurg::make_vec;
  return bandsurg::LatticePolygon(
      {make_vec(0, 0, 0),  make_vec(1, 0, 0),  make_vec(2, 0, 0),   make_vec(3, 0, 0),   make_vec(3, 0, 1),
       make_vec(2, 0, 1),  make_vec(1, 0, 1),  make_vec(0, 0, 1),   make_vec(-1, 0, 1),  make_vec(-1, 1, 1),
       make_vec(-1, 1, 0), make_vec(0, 1, 0),  make_vec(1, 1, 0),   make_vec(2, 1, 0),   make_vec(2, 2, 0),
       make_vec(1, 2, 0),  make_vec(0, 2, 0),  make_vec(-1, 2, 0),  make_vec(-2, 2, 0),  make_vec(-2, 1, 0),
       make_vec(-2, 0, 0), make_vec(-1, 0, 0)});
}

inline std::string data_dir() { return BANDSURG_TEST_DATA_DIR; }
inline std::string reference_dir() { return BANDSURG_TEST_REFERENCE_DIR; }

inline const bandsurg::KnotTable& table() {
  static const bandsurg::KnotTable t = bandsurg::KnotTable::load(data_dir());
  return t;
}

/// BFACF conformations of the given start, `count` of them, `spacing` steps apart.
inline std::vector<bandsurg::LatticePolygon> walk_samples(const bandsurg::LatticePolygon& start, double z,
                                                          std::size_t count, std::uint64_t spacing,
                                                          std::uint64_t seed, std::size_t max_length = 0) {
  bandsurg::Chain chain(start, {z, 1.0, max_length}, seed);
  return bandsurg::run_chain(chain, count * spacing, spacing);
}

/// Unknots of mixed lengths plus a few braid-closure knots.
inline const std::vector<bandsurg::LatticePolygon>& assorted_polygons() {
  static const std::vector<bandsurg::LatticePolygon> polys = [] {
    std::vector<bandsurg::LatticePolygon> out = {unit_square(), rectangle_2x1()};
    for (const auto& p : walk_samples(unit_square(), 0.2, 30, 3000, 17)) out.push_back(p);
    const std::vector<std::vector<int>> words = {{1, 1, 1}, {1, -2, 1, -2}, {1, 1, 1, 1, 1}};
    for (const auto& w : words) out.push_back(bandsurg::braid_closure(w));
    return out;
  }();
  return polys;
}

}  // namespace testing
