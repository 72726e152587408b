#pragma once

// Lines drawn in the determinant/signature chart of knots up to eight
// crossings: dashed = banding ruled out, solid = banding known to exist.

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using KnotPair = std::pair<std::string, std::string>;

inline KnotPair unordered(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

inline std::set<KnotPair> dashed_lines() {
  const std::vector<KnotPair> raw = {
      {"3_1", "3_1*"},
      {"5_1", "4_1"},   {"4_1", "5_1*"},
      {"7_1", "5_2"},   {"7_1", "7_1*"},  {"5_2", "5_2*"},  {"5_2*", "7_1*"},
      {"6_2", "6_2*"},  {"6_2", "7_2*"},  {"7_2", "7_2*"},  {"7_2", "6_2*"},
      {"7_3", "6_3"},   {"7_3", "8_1"},   {"7_3", "8_1*"},  {"6_3", "7_3*"},  {"8_1", "7_3*"}, {"8_1*", "7_3*"},
      {"7_4", "7_4*"},  {"7_4", "8_21*"}, {"8_21", "8_21*"}, {"8_21", "7_4*"},
      {"7_5", "8_3"},   {"8_2", "8_3"},   {"8_3", "7_5*"},  {"8_3", "8_2*"},
      {"7_6", "7_6*"},  {"7_6", "8_4*"},  {"8_4", "8_4*"},  {"8_4", "7_6*"},
      {"8_5", "7_7"},   {"8_5", "7_7*"},  {"7_7", "8_5*"},  {"7_7*", "8_5*"},
      {"8_6", "8_6*"},  {"8_6", "8_7*"},  {"8_7", "8_7*"},  {"8_7", "8_6*"},
      {"8_14", "8_14*"},
      {"8_16", "8_16*"},
  };
  std::set<KnotPair> out;
  for (const auto& [a, b] : raw) out.insert(unordered(a, b));
  return out;
}

inline std::set<KnotPair> solid_lines() {
  const std::vector<KnotPair> raw = {
      {"8_19", "3_1*"}, {"3_1", "8_19*"}, {"5_1", "5_1*"}, {"7_1", "5_2*"}, {"5_2", "7_1*"},
      {"8_20", "8_20*"}, {"6_2", "7_2"}, {"6_2*", "7_2*"}, {"8_8", "8_8*"},
  };
  std::set<KnotPair> out;
  for (const auto& [a, b] : raw) out.insert(unordered(a, b));
  return out;
}

}  // namespace oracle
