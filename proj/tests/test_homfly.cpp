#include <doctest.h>

#include "bandsurg/homfly.hpp"
#include "bandsurg/kauffman.hpp"
#include "bandsurg/rng.hpp"
#include "oracles/reference_polys.hpp"
#include "oracles/skein.hpp"
#include "support.hpp"

using namespace bandsurg;

namespace {

const KnotRecord& rec(const char* name) { return testing::table().at(name); }

KnotDiagram pd_of(const char* name) { return parse_pd(rec(name).pd); }

}  // namespace

TEST_CASE("unknot and unlink normalisation") {
  KnotDiagram unknot;
  unknot.free_loops = 1;
  CHECK(homfly(unknot) == LaurentPoly2(1));
  KnotDiagram two;
  two.free_loops = 2;
  CHECK(homfly(two) == unlink_factor());
  CHECK(unlink_power(2) == unlink_factor() * unlink_factor());
}

TEST_CASE("every bundled diagram matches the published HOMFLY") {
  const auto ref = oracle::load_reference(testing::reference_dir() + "/knotinfo_homfly.txt");
  std::size_t checked = 0;
  for (const auto& r : testing::table().records()) {
    if (r.pd.empty() || r.type.mirror) continue;
    auto it = ref.find(r.type.base);
    if (it == ref.end()) continue;
    INFO(r.type.name());
    CHECK(homfly(parse_pd(r.pd)) == it->second);
    CHECK(r.homfly == it->second);
    ++checked;
  }
  CHECK(checked == 37);
}

TEST_CASE("memoised engine agrees with the plain skein tree") {
  for (const char* name : {"3_1", "4_1", "5_2", "6_1", "6_3", "7_4", "8_20", "8_21"}) {
    INFO(name);
    const auto d = pd_of(name);
    CHECK(homfly(d) == oracle::skein_homfly(d));
    CHECK(homfly(mirror_diagram(d)) == oracle::skein_homfly(mirror_diagram(d)));
  }
}

TEST_CASE("skein relation at random crossings") {
  Rng rng(8);
  for (const char* name : {"3_1", "4_1", "5_1", "6_2", "7_3", "8_8", "8_19"}) {
    const auto d = pd_of(name);
    for (int trial = 0; trial < 3; ++trial) {
      const auto k = static_cast<std::size_t>(rng.below(d.crossings.size()));
      auto other = d;
      switch_crossing(other, k);
      const auto zero = smooth_crossing(d, k);
      const bool pos = d.crossings[k].sign > 0;
      const auto& plus = pos ? d : other;
      const auto& minus = pos ? other : d;
      const auto lhs = homfly(plus).shifted(1, 0) - homfly(minus).shifted(-1, 0);
      CHECK(lhs == homfly(zero).shifted(0, 1));
    }
  }
}

TEST_CASE("mirror diagram gives the mirrored polynomial") {
  for (const auto& r : testing::table().records()) {
    if (r.pd.empty()) continue;
    const auto d = parse_pd(r.pd);
    CHECK(homfly(mirror_diagram(d)) == mirror_poly(homfly(d)));
  }
}

TEST_CASE("simplify and projection direction leave HOMFLY unchanged") {
  Rng rng(12);
  std::size_t diagrams = 0;
  for (const auto& w : std::vector<std::vector<int>>{{1, 1, 1}, {1, -2, 1, -2}, {1, 1, 1, 1, 1}, {1, 1, 1, 2, -1, 2}}) {
    const auto p = braid_closure(w);
    LaurentPoly2 first;
    for (int dir = 0; dir < 10; ++dir) {
      ProjectionOptions o;
      o.seed = rng();
      const auto d = project(p, o);
      const auto h = homfly(d);
      if (dir == 0) first = h;
      CHECK(h == first);
      CHECK(homfly(simplify(d)) == h);
      ++diagrams;
    }
  }
  // unreduced lattice projections carry many more crossings
  for (const auto& poly : testing::walk_samples(testing::unit_square(), 0.21, 40, 2000, 33)) {
    ProjectionOptions o;
    o.reduce_first = false;
    o.seed = rng();
    const auto d = project(poly, o);
    CHECK(homfly(simplify(d)) == homfly(d));
    ++diagrams;
  }
  CHECK(diagrams == 80);
}

TEST_CASE("crossing budget") {
  HomflyOptions o;
  o.max_crossings = 4;
  CHECK_THROWS_AS(homfly(pd_of("8_20"), o), HomflyBudgetExceeded);
  CHECK_NOTHROW(homfly(pd_of("3_1"), o));
}

TEST_CASE("Kauffman polynomial matches the published values") {
  const auto ref = oracle::load_reference(testing::reference_dir() + "/knotinfo_kauffman.txt");
  REQUIRE(ref.size() >= 6);
  for (const auto& [name, poly] : ref) {
    INFO(name);
    const auto d = parse_pd(testing::table().at(name).pd);
    CHECK(kauffman(d) == poly);
    CHECK(kauffman(mirror_diagram(d)) == kauffman_mirror(poly));
  }
}

TEST_CASE("Kauffman separates the HOMFLY twins") {
  const auto k51 = kauffman(pd_of("5_1")), k10132 = kauffman(pd_of("10_132"));
  CHECK(homfly(pd_of("10_132")) == mirror_poly(homfly(pd_of("5_1"))));
  CHECK(k10132 != kauffman_mirror(k51));
  CHECK(homfly(pd_of("10_129")) == mirror_poly(homfly(pd_of("8_8"))));
  CHECK(kauffman(pd_of("10_129")) != kauffman_mirror(kauffman(pd_of("8_8"))));
}

TEST_CASE("Kauffman unlink and orientation independence") {
  KnotDiagram two;
  two.free_loops = 2;
  CHECK(kauffman(two) == kauffman_unlink_factor());
  const auto d = pd_of("7_5");
  const auto reoriented = orient(forget_orientation(d));
  CHECK(kauffman(reoriented) == kauffman(d));
  CHECK(homfly(reoriented) == homfly(d));
}
