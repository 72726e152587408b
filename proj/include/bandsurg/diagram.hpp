#pragma once

// Planar diagrams of knots and links, extracted from lattice polygons by
// projection.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bandsurg/lattice.hpp"

namespace bandsurg {

/// Arc labels listed counterclockwise from the incoming under-arc:
/// arcs[0] under-in, arcs[2] under-out. For a positive crossing arcs[1] is the
/// outgoing over-arc and arcs[3] the incoming one; negative swaps the two.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 1;

  int under_in() const { return arcs[0]; }
  int under_out() const { return arcs[2]; }
  int over_in() const { return sign > 0 ? arcs[3] : arcs[1]; }
  int over_out() const { return sign > 0 ? arcs[1] : arcs[3]; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Oriented link diagram. Each arc label appears in exactly two crossing slots,
/// once entering and once leaving. Crossing-free components are counted in
/// free_loops.
struct KnotDiagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;

  std::size_t crossing_count() const { return crossings.size(); }
  friend bool operator==(const KnotDiagram&, const KnotDiagram&) = default;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse "(a,b,c,d)(e,f,g,h)..." with knot labels 1..2n in traversal order.
/// Signs follow from the labels. Throws DiagramError on malformed input.
KnotDiagram parse_pd(std::string_view text);
/// Standard PD form "(a,b,c,d)..." with labels relabelled 1..2n along the knot.
std::string format_pd(const KnotDiagram& d);

/// Throws DiagramError unless every label occurs once entering and once leaving.
void check_diagram(const KnotDiagram& d);
int component_count(const KnotDiagram& d);
int writhe(const KnotDiagram& d);

KnotDiagram mirror_diagram(const KnotDiagram& d);
/// Flip over/under at crossing k (sign changes, planar structure kept).
void switch_crossing(KnotDiagram& d, std::size_t k);
/// Oriented resolution of crossing k.
KnotDiagram smooth_crossing(const KnotDiagram& d, std::size_t k);

/// Removes crossings with R-I and R-II moves until neither applies.
KnotDiagram simplify(KnotDiagram d);

/// Splits into connected sub-diagrams (free loops are dropped; count them separately).
std::vector<KnotDiagram> connected_pieces(const KnotDiagram& d);

struct PassageRef {
  std::size_t crossing = 0;
  bool under = false;
};

/// For each component with crossings, the cyclic sequence of crossing passages.
std::vector<std::vector<PassageRef>> component_passages(const KnotDiagram& d);

/// Relabelling-invariant key of a connected diagram (minimum over start arcs).
std::vector<int> canonical_code(const KnotDiagram& d);

/// Polygonal knot with integer vertices (not necessarily lattice steps).
using IntPolyline = std::vector<std::array<std::int64_t, 3>>;

IntPolyline to_polyline(const LatticePolygon& poly);

/// Drops vertices whose triangle with its neighbours is not pierced by any
/// other segment; ambient isotopy is preserved. Stops at three vertices.
IntPolyline reduce(IntPolyline pts);

struct ProjectionOptions {
  std::uint64_t seed = 1;
  int max_attempts = 64;
  /// Keep the diagram with fewest crossings after simplify over this many generic directions.
  int directions = 1;
  bool reduce_first = true;
};

/// Projects along a random generic direction chosen from `seed`; retries with
/// a new direction when the projection is not generic. Throws DiagramError
/// after max_attempts failures.
KnotDiagram project(const LatticePolygon& poly, const ProjectionOptions& opt = {});
KnotDiagram project_polyline(const IntPolyline& pts, const ProjectionOptions& opt = {});

}  // namespace bandsurg
