#include "bandsurg/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace bandsurg {

std::array<Vec3, 4> perpendicular_steps(Vec3 d) {
  std::array<Vec3, 4> out{};
  std::size_t k = 0;
  for (const Vec3& s : kUnitSteps) {
    if (s != d && s != -d) out[k++] = s;
  }
  return out;
}

std::string to_string(Vec3 v) {
  std::ostringstream os;
  os << v.x << ' ' << v.y << ' ' << v.z;
  return os.str();
}

std::string_view to_string(PolygonRule rule) {
  switch (rule) {
    case PolygonRule::kTooShort: return "too-short";
    case PolygonRule::kOddLength: return "odd-length";
    case PolygonRule::kNonUnitStep: return "non-unit-step";
    case PolygonRule::kRepeatedVertex: return "repeated-vertex";
  }
  return "unknown";
}

ValidationReport validate(std::span<const Vec3> vertices) {
  ValidationReport report;
  const std::size_t n = vertices.size();
  if (n < 4) report.violations.push_back({PolygonRule::kTooShort, 0});
  if (n % 2 != 0) report.violations.push_back({PolygonRule::kOddLength, 0});
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_unit_step(vertices[(i + 1) % n] - vertices[i])) {
        report.violations.push_back({PolygonRule::kNonUnitStep, i});
      }
    }
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(pack(vertices[i])).second) {
      report.violations.push_back({PolygonRule::kRepeatedVertex, i});
    }
  }
  report.valid = report.violations.empty();
  return report;
}

namespace {

std::string describe(const ValidationReport& r) {
  std::ostringstream os;
  os << "invalid lattice polygon:";
  for (const auto& v : r.violations) os << ' ' << to_string(v.rule) << '@' << v.vertex;
  return os.str();
}

}  // namespace

InvalidPolygon::InvalidPolygon(ValidationReport report)
    : std::invalid_argument(describe(report)), report_(std::move(report)) {}

LatticePolygon::LatticePolygon(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {
  auto report = validate(vertices_);
  if (!report.valid) throw InvalidPolygon(std::move(report));
}

LatticePolygon LatticePolygon::adopt_unchecked(std::vector<Vec3> vertices) {
  return LatticePolygon(Unchecked{}, std::move(vertices));
}

bool operator==(const LatticePolygon& a, const LatticePolygon& b) {
  if (a.length() != b.length()) return false;
  return canonicalize(a).vertices_ == canonicalize(b).vertices_;
}

std::vector<DirectedEdge> edges(const LatticePolygon& poly) {
  const auto& v = poly.vertices();
  std::vector<DirectedEdge> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back({v[i], v[(i + 1) % v.size()], i});
  }
  return out;
}

std::vector<UndirectedEdge> edge_set(const LatticePolygon& poly) {
  const auto& v = poly.vertices();
  std::vector<UndirectedEdge> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(UndirectedEdge::make(v[i], v[(i + 1) % v.size()]));
  }
  return out;
}

int component_count(std::span<const UndirectedEdge> edge_multiset) {
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> adjacency;
  for (const auto& e : edge_multiset) {
    if (!is_unit_step(e.b - e.a)) {
      throw std::invalid_argument("component_count: edge is not a unit lattice edge");
    }
    adjacency[pack(e.a)].push_back(pack(e.b));
    adjacency[pack(e.b)].push_back(pack(e.a));
  }
  for (const auto& [key, nbrs] : adjacency) {
    if (nbrs.size() % 2 != 0) {
      throw std::invalid_argument("component_count: vertex of odd degree");
    }
  }
  std::unordered_set<std::uint64_t> seen;
  int components = 0;
  std::vector<std::uint64_t> stack;
  for (const auto& [start, unused] : adjacency) {
    if (seen.count(start)) continue;
    ++components;
    stack.push_back(start);
    seen.insert(start);
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (auto nb : adjacency[cur]) {
        if (seen.insert(nb).second) stack.push_back(nb);
      }
    }
  }
  return components;
}

LatticePolygon canonicalize(const LatticePolygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  const auto start = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  const Vec3 origin = v[start];
  const Vec3 fwd = v[(start + 1) % n] - origin;
  const Vec3 bwd = v[(start + n - 1) % n] - origin;
  const bool forward = fwd < bwd;
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = forward ? (start + k) % n : (start + n - k) % n;
    out.push_back(v[i] - origin);
  }
  return LatticePolygon::adopt_unchecked(std::move(out));
}

LatticePolygon translated(const LatticePolygon& poly, Vec3 offset) {
  std::vector<Vec3> out(poly.vertices());
  for (auto& p : out) p = p + offset;
  return LatticePolygon::adopt_unchecked(std::move(out));
}

LatticePolygon reversed(const LatticePolygon& poly) {
  std::vector<Vec3> out(poly.vertices().rbegin(), poly.vertices().rend());
  return LatticePolygon::adopt_unchecked(std::move(out));
}

LatticePolygon reflected(const LatticePolygon& poly) {
  std::vector<Vec3> out(poly.vertices());
  for (auto& p : out) p.x = static_cast<std::int16_t>(-p.x);
  return LatticePolygon::adopt_unchecked(std::move(out));
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<LatticePolygon> read_polygons(std::istream& in) {
  std::vector<LatticePolygon> out;
  std::vector<Vec3> current;
  std::size_t line_no = 0;
  std::size_t block_start = 0;
  auto flush = [&] {
    if (current.empty()) return;
    auto report = validate(current);
    if (!report.valid) {
      throw ParseError(block_start, "polygon starting here is invalid (" +
                                        std::string(to_string(report.violations.front().rule)) + ")");
    }
    out.push_back(LatticePolygon::adopt_unchecked(std::move(current)));
    current.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    std::istringstream ls(line);
    long x = 0, y = 0, z = 0;
    std::string extra;
    if (!(ls >> x >> y >> z) || (ls >> extra)) {
      throw ParseError(line_no, "expected three integers \"x y z\"");
    }
    constexpr long kMax = 32767;
    if (x < -kMax || x > kMax || y < -kMax || y > kMax || z < -kMax || z > kMax) {
      throw ParseError(line_no, "coordinate outside the 16-bit range");
    }
    if (current.empty()) block_start = line_no;
    current.push_back(make_vec(static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)));
  }
  flush();
  return out;
}

void write_polygons(std::ostream& out, std::span<const LatticePolygon> polys) {
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (k > 0) out << '\n';
    for (const auto& v : polys[k].vertices()) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
  }
}

std::vector<LatticePolygon> read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polygon file: " + path);
  return read_polygons(in);
}

void write_polygon_file(const std::string& path, std::span<const LatticePolygon> polys) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write polygon file: " + path);
  write_polygons(out, polys);
}

// Strands live in lanes y = 2*lane, z = 0, running in +x. Each generator takes
// four x-units. The strand leaving the upper lane passes at height +1 (positive
// generator) or -1 (negative) along y = 2i+1; the lower strand stays at z = 0.
// Closure arcs return at z = -2 in the plane of their own lane.
LatticePolygon braid_closure(std::span<const int> word, int strands) {
  int max_gen = 0;
  for (int g : word) {
    if (g == 0) throw std::invalid_argument("braid_closure: generator 0");
    max_gen = std::max(max_gen, g < 0 ? -g : g);
  }
  if (strands <= 0) strands = max_gen + 1;
  if (strands < max_gen + 1) throw std::invalid_argument("braid_closure: too few strands");
  const int len = static_cast<int>(word.size());

  std::vector<Vec3> pts;
  auto walk_to = [&pts](int x, int y, int z) {
    Vec3 target = make_vec(x, y, z);
    while (pts.back() != target) {
      Vec3 cur = pts.back();
      if (cur.x != target.x) cur.x = static_cast<std::int16_t>(cur.x + (target.x > cur.x ? 1 : -1));
      else if (cur.y != target.y) cur.y = static_cast<std::int16_t>(cur.y + (target.y > cur.y ? 1 : -1));
      else cur.z = static_cast<std::int16_t>(cur.z + (target.z > cur.z ? 1 : -1));
      pts.push_back(cur);
    }
  };

  pts.push_back(make_vec(0, 0, 0));
  int lane = 0;
  do {
    for (int k = 0; k < len; ++k) {
      const int g = word[static_cast<std::size_t>(k)];
      const int lo = (g < 0 ? -g : g) - 1;
      const int x0 = 4 * k;
      if (lane == lo) {
        walk_to(x0 + 2, 2 * lo, 0);
        walk_to(x0 + 2, 2 * lo + 2, 0);
        walk_to(x0 + 4, 2 * lo + 2, 0);
        lane = lo + 1;
      } else if (lane == lo + 1) {
        const int h = g > 0 ? 1 : -1;
        walk_to(x0 + 1, 2 * lane, 0);
        walk_to(x0 + 1, 2 * lane, h);
        walk_to(x0 + 1, 2 * lo + 1, h);
        walk_to(x0 + 3, 2 * lo + 1, h);
        walk_to(x0 + 3, 2 * lo, h);
        walk_to(x0 + 3, 2 * lo, 0);
        walk_to(x0 + 4, 2 * lo, 0);
        lane = lo;
      } else {
        walk_to(x0 + 4, 2 * lane, 0);
      }
    }
    walk_to(4 * len + 1, 2 * lane, 0);
    walk_to(4 * len + 1, 2 * lane, -2);
    walk_to(-1, 2 * lane, -2);
    walk_to(-1, 2 * lane, 0);
    walk_to(0, 2 * lane, 0);
  } while (lane != 0);
  pts.pop_back();  // back at the start vertex

  auto report = validate(pts);
  if (!report.valid) throw InvalidPolygon(std::move(report));
  std::unordered_set<int> lanes_used;
  for (const auto& p : pts) {
    if (p.z == 0 && p.y % 2 == 0) lanes_used.insert(p.y / 2);
  }
  if (static_cast<int>(lanes_used.size()) != strands) {
    throw std::invalid_argument("braid_closure: closure is a link, not a knot");
  }
  return LatticePolygon::adopt_unchecked(std::move(pts));
}

}  // namespace bandsurg
