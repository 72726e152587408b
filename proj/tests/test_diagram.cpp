#include <doctest.h>

#include "bandsurg/diagram.hpp"
#include "bandsurg/homfly.hpp"
#include "bandsurg/rng.hpp"
#include "support.hpp"

using namespace bandsurg;

namespace {
const char* kTrefoil = "(1,5,2,4)(3,1,4,6)(5,3,6,2)";
}

TEST_CASE("PD parsing and formatting") {
  const auto d = parse_pd(kTrefoil);
  CHECK(d.crossing_count() == 3);
  CHECK_NOTHROW(check_diagram(d));
  CHECK(component_count(d) == 1);
  CHECK(std::abs(writhe(d)) == 3);
  const auto again = parse_pd(format_pd(d));
  CHECK(again.crossing_count() == 3);
  CHECK(writhe(again) == writhe(d));
  CHECK_THROWS_AS(parse_pd("(1,2,3)"), DiagramError);
  CHECK_THROWS_AS(parse_pd("(1,5,2,4)(3,1,4,6)"), DiagramError);
  CHECK_THROWS_AS(parse_pd("(1,5,2,x)"), DiagramError);
}

TEST_CASE("mirror negates writhe; switching flips one sign") {
  const auto d = parse_pd(kTrefoil);
  const auto m = mirror_diagram(d);
  CHECK(writhe(m) == -writhe(d));
  auto s = d;
  switch_crossing(s, 0);
  CHECK(s.crossings[0].sign == -d.crossings[0].sign);
  CHECK_NOTHROW(check_diagram(s));
}

TEST_CASE("smoothing a knot crossing gives two components") {
  const auto d = parse_pd(kTrefoil);
  const auto s = smooth_crossing(d, 1);
  CHECK(s.crossing_count() == 2);
  CHECK(component_count(s) == 2);
}

TEST_CASE("Reidemeister I kink disappears") {
  // a single positive curl on the unknot
  KnotDiagram d;
  Crossing c;
  c.arcs = {1, 1, 2, 2};
  c.sign = 1;
  d.crossings.push_back(c);
  d = simplify(d);
  CHECK(d.crossing_count() == 0);
  CHECK(component_count(d) == 1);
}

TEST_CASE("Reidemeister II clasp disappears") {
  // one loop sliding under itself: arcs 1,2 pass under 3,4 at crossings of opposite sign
  const auto d = parse_pd("(1,4,2,3)(2,4,3,1)");
  CHECK(component_count(d) == 1);
  CHECK(d.crossings[0].sign == -d.crossings[1].sign);
  const auto s = simplify(d);
  CHECK(s.crossing_count() == 0);
  CHECK(component_count(s) == 1);
  CHECK(homfly(d) == LaurentPoly2(1));
}

TEST_CASE("unit square projects to a crossing-free diagram") {
  const auto d = project(testing::unit_square());
  CHECK(d.crossing_count() == 0);
  CHECK(d.free_loops == 1);
}

TEST_CASE("projection is deterministic per seed") {
  const auto p = braid_closure(std::vector<int>{1, 1, 1});
  ProjectionOptions o;
  o.seed = 77;
  CHECK(project(p, o) == project(p, o));
}

TEST_CASE("reduction keeps the knot type") {
  for (const auto& w : std::vector<std::vector<int>>{{1, 1, 1}, {1, -2, 1, -2}, {1, 1, 1, 1, 1}}) {
    const auto p = braid_closure(w);
    ProjectionOptions full;
    full.reduce_first = false;
    full.directions = 2;
    ProjectionOptions red;
    red.directions = 2;
    CHECK(homfly(project(p, full)) == homfly(project(p, red)));
    CHECK(reduce(to_polyline(p)).size() <= p.length());
  }
}

TEST_CASE("connected pieces of a split diagram") {
  const auto one = parse_pd(kTrefoil);
  KnotDiagram two = one;
  for (auto c : one.crossings) {
    for (auto& a : c.arcs) a += 100;
    two.crossings.push_back(c);
  }
  two.free_loops = 1;
  CHECK(connected_pieces(two).size() == 2);
  CHECK(component_count(two) == 3);
}

TEST_CASE("canonical code ignores relabelling") {
  const auto d = parse_pd(kTrefoil);
  KnotDiagram shifted = d;
  for (auto& c : shifted.crossings) {
    for (auto& a : c.arcs) a = a % 6 + 1;
  }
  CHECK(canonical_code(d) == canonical_code(shifted));
  std::swap(shifted.crossings[0], shifted.crossings[2]);
  CHECK(canonical_code(d) == canonical_code(shifted));
  CHECK(canonical_code(d) != canonical_code(mirror_diagram(d)));
}
