#pragma once

// Two-variable Kauffman polynomial F(a, z) of link diagrams:
// L(D+) + L(D-) = z (L(D0) + L(Dinf)), L(positive curl) = a L, F = a^-w L,
// F(unknot) = 1.

#include <array>
#include <map>
#include <vector>

#include "bandsurg/diagram.hpp"
#include "bandsurg/homfly.hpp"
#include "bandsurg/laurent.hpp"

namespace bandsurg {

/// Diagram without orientation: arcs[0], arcs[2] under, arcs[1], arcs[3] over,
/// listed counterclockwise.
struct PlainDiagram {
  std::vector<std::array<int, 4>> crossings;
  int free_loops = 0;
};

PlainDiagram forget_orientation(const KnotDiagram& d);
/// Orients every component (walking from the lowest unvisited slot) and relabels arcs.
KnotDiagram orient(const PlainDiagram& d);

/// The two unoriented resolutions of crossing k: joining slots (0,1)(2,3) or (0,3)(1,2).
PlainDiagram resolve(const PlainDiagram& d, std::size_t k, bool join_01);

/// (a + a^-1) z^-1 - 1, the value of the two-component unlink.
LaurentPoly2 kauffman_unlink_factor();

class KauffmanEngine {
 public:
  explicit KauffmanEngine(HomflyOptions opt = {}) : opt_(opt) {}

  /// Throws HomflyBudgetExceeded for pieces above the crossing budget.
  LaurentPoly2 evaluate(const KnotDiagram& d);

 private:
  LaurentPoly2 connected(const KnotDiagram& piece);
  LaurentPoly2 descend(KnotDiagram piece);

  HomflyOptions opt_;
  std::map<std::vector<int>, LaurentPoly2> memo_;
};

LaurentPoly2 kauffman(const KnotDiagram& d, const HomflyOptions& opt = {});

/// Mirror image: a -> a^-1.
LaurentPoly2 kauffman_mirror(const LaurentPoly2& p);

}  // namespace bandsurg
