#pragma once

// Self-avoiding polygons in the simple cubic lattice.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bandsurg {

/// Lattice point. Coordinates are stored as 16-bit signed integers.
struct Vec3 {
  std::int16_t x = 0;
  std::int16_t y = 0;
  std::int16_t z = 0;

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
  friend constexpr auto operator<=>(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 make_vec(int x, int y, int z) {
  return Vec3{static_cast<std::int16_t>(x), static_cast<std::int16_t>(y),
              static_cast<std::int16_t>(z)};
}

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return make_vec(a.x + b.x, a.y + b.y, a.z + b.z); }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return make_vec(a.x - b.x, a.y - b.y, a.z - b.z); }
constexpr Vec3 operator-(Vec3 a) { return make_vec(-a.x, -a.y, -a.z); }

constexpr int l1_norm(Vec3 v) {
  return (v.x < 0 ? -v.x : v.x) + (v.y < 0 ? -v.y : v.y) + (v.z < 0 ? -v.z : v.z);
}

constexpr bool is_unit_step(Vec3 d) {
  return l1_norm(d) == 1;
}

/// Hash key for a lattice point (48 significant bits).
constexpr std::uint64_t pack(Vec3 v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.x)) << 32) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.y)) << 16) |
         static_cast<std::uint64_t>(static_cast<std::uint16_t>(v.z));
}

inline constexpr std::array<Vec3, 6> kUnitSteps = {
    make_vec(1, 0, 0), make_vec(-1, 0, 0), make_vec(0, 1, 0),
    make_vec(0, -1, 0), make_vec(0, 0, 1), make_vec(0, 0, -1)};

/// The four unit vectors perpendicular to the unit vector `d`.
std::array<Vec3, 4> perpendicular_steps(Vec3 d);

std::string to_string(Vec3 v);

struct DirectedEdge {
  Vec3 tail;
  Vec3 head;
  std::size_t index = 0;

  Vec3 direction() const { return head - tail; }
};

/// Unordered unit edge; stored with the smaller endpoint first.
struct UndirectedEdge {
  Vec3 a;
  Vec3 b;

  static UndirectedEdge make(Vec3 p, Vec3 q) { return p < q ? UndirectedEdge{p, q} : UndirectedEdge{q, p}; }
  friend constexpr bool operator==(const UndirectedEdge&, const UndirectedEdge&) = default;
  friend constexpr auto operator<=>(const UndirectedEdge&, const UndirectedEdge&) = default;
};

enum class PolygonRule {
  kTooShort,        // fewer than 4 vertices
  kOddLength,       // closed lattice loops have even length
  kNonUnitStep,     // step from this vertex to the next is not a unit step
  kRepeatedVertex,  // vertex coincides with an earlier one
};

std::string_view to_string(PolygonRule rule);

struct Violation {
  PolygonRule rule;
  std::size_t vertex;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Checks every polygon invariant; never throws.
ValidationReport validate(std::span<const Vec3> vertices);

class InvalidPolygon : public std::invalid_argument {
 public:
  explicit InvalidPolygon(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Closed self-avoiding lattice loop. Edge i runs vertex i -> vertex i+1 (mod n).
/// Instances are always valid; equality compares canonical forms.
class LatticePolygon {
 public:
  /// Throws InvalidPolygon when the vertex list breaks an invariant.
  explicit LatticePolygon(std::vector<Vec3> vertices);

  /// Skips validation; the caller guarantees validity (sampler hot path).
  static LatticePolygon adopt_unchecked(std::vector<Vec3> vertices);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  std::size_t length() const { return vertices_.size(); }
  const Vec3& operator[](std::size_t i) const { return vertices_[i]; }
  const Vec3& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  bool same_sequence(const LatticePolygon& other) const { return vertices_ == other.vertices_; }
  friend bool operator==(const LatticePolygon& a, const LatticePolygon& b);

 private:
  struct Unchecked {};
  LatticePolygon(Unchecked, std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {}

  std::vector<Vec3> vertices_;
};

std::vector<DirectedEdge> edges(const LatticePolygon& poly);
std::vector<UndirectedEdge> edge_set(const LatticePolygon& poly);

/// Number of closed components of a unit-edge multiset in which every vertex
/// has even degree. Throws std::invalid_argument otherwise.
int component_count(std::span<const UndirectedEdge> edge_multiset);

/// Translate the lexicographically smallest vertex to the origin, start there,
/// and pick the traversal direction whose first step is lexicographically smaller.
LatticePolygon canonicalize(const LatticePolygon& poly);

LatticePolygon translated(const LatticePolygon& poly, Vec3 offset);
LatticePolygon reversed(const LatticePolygon& poly);
/// Reflection x -> -x; realizes the mirror image of the knot type.
LatticePolygon reflected(const LatticePolygon& poly);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Polygon file format: one vertex per line as "x y z", a blank line between
// polygons, closure edge implicit. Lines starting with '#' are comments.
std::vector<LatticePolygon> read_polygons(std::istream& in);
void write_polygons(std::ostream& out, std::span<const LatticePolygon> polys);
std::vector<LatticePolygon> read_polygon_file(const std::string& path);
void write_polygon_file(const std::string& path, std::span<const LatticePolygon> polys);

/// Lattice realization of the closure of a braid word on `strands` strands.
/// Generator +i crosses strands i-1 and i (1-based) with a positive crossing.
LatticePolygon braid_closure(std::span<const int> word, int strands = 0);

}  // namespace bandsurg
