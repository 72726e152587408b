#include "bandsurg/homfly.hpp"

#include <algorithm>
#include <numeric>

namespace bandsurg {

HomflyBudgetExceeded::HomflyBudgetExceeded(std::size_t crossings)
    : std::runtime_error("HOMFLY budget exceeded: " + std::to_string(crossings) +
                         " crossings after simplification"),
      crossings_(crossings) {}

LaurentPoly2 unlink_power(int k) {
  static thread_local std::vector<LaurentPoly2> cache{LaurentPoly2(1)};
  while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * unlink_factor());
  return cache[static_cast<std::size_t>(k)];
}

LaurentPoly2 HomflyEngine::evaluate(const KnotDiagram& d) {
  KnotDiagram s = simplify(d);
  auto pieces = connected_pieces(s);
  const int split = static_cast<int>(pieces.size()) + s.free_loops;
  if (split == 0) return LaurentPoly2(1);
  LaurentPoly2 result = unlink_power(split - 1);
  for (const auto& p : pieces) result = result * connected(p);
  return result;
}

LaurentPoly2 HomflyEngine::connected(const KnotDiagram& piece) {
  if (piece.crossings.size() > opt_.max_crossings) throw HomflyBudgetExceeded(piece.crossings.size());
  auto key = canonical_code(piece);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  LaurentPoly2 value = descend(piece);
  if (memo_.size() >= opt_.memo_limit) memo_.clear();
  memo_.emplace(std::move(key), value);
  return value;
}

namespace {

// Number of crossings met first from below when walking `walk` from `start`.
int self_bad(const std::vector<PassageRef>& walk, std::size_t start, std::vector<int>& mark, int stamp) {
  int bad = 0;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    const auto& p = walk[(start + k) % walk.size()];
    if (mark[p.crossing] == stamp) continue;
    mark[p.crossing] = stamp;
    bad += p.under ? 1 : 0;
  }
  return bad;
}

}  // namespace

LaurentPoly2 HomflyEngine::descend(KnotDiagram d) {
  auto walks = component_passages(d);
  const std::size_t n = d.crossings.size();
  const std::size_t comps = walks.size();

  // best base point per component, self-crossings only
  std::vector<int> owner(n, -1), count(n, 0);
  for (std::size_t c = 0; c < comps; ++c) {
    for (const auto& p : walks[c]) {
      ++count[p.crossing];
      owner[p.crossing] = owner[p.crossing] < 0 ? static_cast<int>(c) : (owner[p.crossing] == static_cast<int>(c) ? static_cast<int>(c) : -2);
    }
  }
  std::vector<int> mark(n, 0);
  int stamp = 0;
  for (std::size_t c = 0; c < comps; ++c) {
    std::vector<PassageRef> self;
    for (const auto& p : walks[c]) {
      if (owner[p.crossing] == static_cast<int>(c)) self.push_back(p);
    }
    std::size_t best_start = 0;
    int best = -1;
    if (!self.empty()) {
      for (std::size_t s = 0; s < walks[c].size(); ++s) {
        if (owner[walks[c][s].crossing] != static_cast<int>(c)) continue;
        std::vector<PassageRef> rot;
        for (std::size_t k = 0; k < walks[c].size(); ++k) {
          const auto& p = walks[c][(s + k) % walks[c].size()];
          if (owner[p.crossing] == static_cast<int>(c)) rot.push_back(p);
        }
        const int b = self_bad(rot, 0, mark, ++stamp);
        if (best < 0 || b < best) {
          best = b;
          best_start = s;
        }
      }
    }
    std::rotate(walks[c].begin(), walks[c].begin() + static_cast<std::ptrdiff_t>(best_start), walks[c].end());
  }

  // component order: fewest crossings met first from below across components
  std::vector<std::size_t> order(comps);
  std::iota(order.begin(), order.end(), 0);
  if (comps > 1 && comps <= 5) {
    // over[i][j]: crossings where component i passes over component j
    std::vector<std::vector<int>> over(comps, std::vector<int>(comps, 0));
    std::vector<int> comp_of_over(n, -1), comp_of_under(n, -1);
    for (std::size_t c = 0; c < comps; ++c) {
      for (const auto& p : walks[c]) (p.under ? comp_of_under : comp_of_over)[p.crossing] = static_cast<int>(c);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (comp_of_over[k] != comp_of_under[k]) {
        ++over[static_cast<std::size_t>(comp_of_over[k])][static_cast<std::size_t>(comp_of_under[k])];
      }
    }
    std::vector<std::size_t> perm = order;
    int best = -1;
    do {
      int bad = 0;
      for (std::size_t i = 0; i < comps; ++i) {
        for (std::size_t j = i + 1; j < comps; ++j) bad += over[perm[j]][perm[i]];
      }
      if (best < 0 || bad < best) {
        best = bad;
        order = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  LaurentPoly2 result;
  int coef_a = 0;  // running factor a^coef_a
  std::vector<char> met(n, 0);
  for (std::size_t c : order) {
    for (const auto& p : walks[c]) {
      if (met[p.crossing]) continue;
      met[p.crossing] = 1;
      if (!p.under) continue;
      const int sign = d.crossings[p.crossing].sign;
      LaurentPoly2 smooth = evaluate(smooth_crossing(d, p.crossing));
      if (sign > 0) {
        result += smooth.shifted(coef_a - 1, 1, 1);
        coef_a -= 2;
      } else {
        result += smooth.shifted(coef_a + 1, 1, -1);
        coef_a += 2;
      }
      switch_crossing(d, p.crossing);
    }
  }
  result += unlink_power(static_cast<int>(comps) - 1).shifted(coef_a, 0, 1);
  return result;
}

LaurentPoly2 homfly(const KnotDiagram& d, const HomflyOptions& opt) {
  static thread_local HomflyEngine engine(opt);
  static thread_local std::size_t budget = opt.max_crossings;
  if (budget != opt.max_crossings) {
    engine = HomflyEngine(opt);
    budget = opt.max_crossings;
  }
  return engine.evaluate(d);
}

}  // namespace bandsurg
