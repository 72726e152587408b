#pragma once

// HOMFLY-PT polynomial of oriented link diagrams, normalised so that
// a P(L+) - a^-1 P(L-) = z P(L0) and P(unknot) = 1.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "bandsurg/diagram.hpp"
#include "bandsurg/laurent.hpp"

namespace bandsurg {

class HomflyBudgetExceeded : public std::runtime_error {
 public:
  explicit HomflyBudgetExceeded(std::size_t crossings);
  std::size_t crossings() const { return crossings_; }

 private:
  std::size_t crossings_;
};

struct HomflyOptions {
  /// Connected pieces with more crossings than this (after simplify) are refused.
  std::size_t max_crossings = 40;
  /// Memo entries kept before the cache is flushed.
  std::size_t memo_limit = 1u << 20;
};

/// Skein evaluation over descending diagrams, memoised on canonical codes of
/// simplified connected pieces. One engine per thread.
class HomflyEngine {
 public:
  explicit HomflyEngine(HomflyOptions opt = {}) : opt_(opt) {}

  LaurentPoly2 evaluate(const KnotDiagram& d);
  std::size_t memo_size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  LaurentPoly2 connected(const KnotDiagram& piece);
  LaurentPoly2 descend(KnotDiagram piece);

  HomflyOptions opt_;
  std::map<std::vector<int>, LaurentPoly2> memo_;
};

/// Uses a thread-local engine.
LaurentPoly2 homfly(const KnotDiagram& d, const HomflyOptions& opt = {});

/// (a - a^-1)/z raised to k >= 0.
LaurentPoly2 unlink_power(int k);

}  // namespace bandsurg
