#include "bandsurg/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bandsurg/rng.hpp"

namespace bandsurg {

namespace {

bool slot_is_in(const Crossing& c, int s) {
  switch (s) {
    case 0: return true;
    case 2: return false;
    case 1: return c.sign < 0;
    default: return c.sign > 0;
  }
}

struct SlotRef {
  int crossing = -1;
  int slot = -1;
};

// Relabels arcs 0..m-1 in order of first appearance.
KnotDiagram compact(const KnotDiagram& d, int* arc_count = nullptr) {
  std::unordered_map<int, int> ids;
  KnotDiagram out = d;
  for (auto& c : out.crossings) {
    for (auto& a : c.arcs) {
      auto [it, fresh] = ids.try_emplace(a, static_cast<int>(ids.size()));
      a = it->second;
    }
  }
  if (arc_count) *arc_count = static_cast<int>(ids.size());
  return out;
}

// Slot tables for a compact diagram.
struct Slots {
  std::vector<SlotRef> in;
  std::vector<SlotRef> out;

  explicit Slots(const KnotDiagram& d, int arcs) : in(static_cast<std::size_t>(arcs)), out(static_cast<std::size_t>(arcs)) {
    for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
      const Crossing& x = d.crossings[static_cast<std::size_t>(c)];
      for (int s = 0; s < 4; ++s) {
        auto& ref = slot_is_in(x, s) ? in[static_cast<std::size_t>(x.arcs[static_cast<std::size_t>(s)])]
                                     : out[static_cast<std::size_t>(x.arcs[static_cast<std::size_t>(s)])];
        if (ref.crossing >= 0) throw DiagramError("arc label used twice in the same role");
        ref = {c, s};
      }
    }
    for (std::size_t a = 0; a < in.size(); ++a) {
      if (in[a].crossing < 0 || out[a].crossing < 0) throw DiagramError("arc label without two ends");
    }
  }

  int next_arc(const KnotDiagram& d, int a) const {
    const SlotRef& r = in[static_cast<std::size_t>(a)];
    return d.crossings[static_cast<std::size_t>(r.crossing)].arcs[static_cast<std::size_t>((r.slot + 2) % 4)];
  }

  SlotRef partner(const KnotDiagram& d, int c, int s) const {
    const Crossing& x = d.crossings[static_cast<std::size_t>(c)];
    const int a = x.arcs[static_cast<std::size_t>(s)];
    return slot_is_in(x, s) ? out[static_cast<std::size_t>(a)] : in[static_cast<std::size_t>(a)];
  }
};

struct UnionFind {
  std::unordered_map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) return x;
    const int r = find(it->second);
    parent[x] = r;
    return r;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[y] = x;
  }
};

// Removes the listed crossings after merging arc classes; classes that no
// longer occur anywhere become free loops.
KnotDiagram remove_and_merge(const KnotDiagram& d, const std::vector<std::size_t>& dead, UnionFind& uf,
                             const std::vector<int>& touched) {
  KnotDiagram out;
  out.free_loops = d.free_loops;
  std::unordered_set<int> present;
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    if (std::find(dead.begin(), dead.end(), k) != dead.end()) continue;
    Crossing c = d.crossings[k];
    for (auto& a : c.arcs) {
      a = uf.find(a);
      present.insert(a);
    }
    out.crossings.push_back(c);
  }
  std::unordered_set<int> classes;
  for (int a : touched) classes.insert(uf.find(a));
  for (int cls : classes) {
    if (!present.count(cls)) ++out.free_loops;
  }
  return out;
}

}  // namespace

KnotDiagram parse_pd(std::string_view text) {
  KnotDiagram d;
  std::vector<std::array<int, 4>> tuples;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] == 'X') {
      ++pos;
      continue;
    }
    if (text[pos] != '(' && text[pos] != '[') throw DiagramError("expected '(' in PD code");
    ++pos;
    std::array<int, 4> t{};
    for (int k = 0; k < 4; ++k) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw DiagramError("expected a positive arc label in PD code");
      t[static_cast<std::size_t>(k)] = std::stoi(std::string(text.substr(start, pos - start)));
      while (pos < text.size() && text[pos] == ' ') ++pos;
      if (k < 3) {
        if (pos >= text.size() || text[pos] != ',') throw DiagramError("expected ',' in PD code");
        ++pos;
      }
    }
    if (pos >= text.size() || (text[pos] != ')' && text[pos] != ']')) throw DiagramError("expected ')' in PD code");
    ++pos;
    tuples.push_back(t);
    skip_ws();
    if (pos < text.size() && text[pos] == ']') ++pos;
    skip_ws();
  }
  if (tuples.empty()) {
    d.free_loops = 1;
    return d;
  }
  const int m = static_cast<int>(tuples.size()) * 2;
  std::vector<int> seen(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& t : tuples) {
    for (int a : t) {
      if (a < 1 || a > m) throw DiagramError("PD label out of range 1.." + std::to_string(m));
      ++seen[static_cast<std::size_t>(a)];
    }
  }
  for (int a = 1; a <= m; ++a) {
    if (seen[static_cast<std::size_t>(a)] != 2) throw DiagramError("PD label " + std::to_string(a) + " must occur twice");
  }
  auto succ = [m](int a) { return a == m ? 1 : a + 1; };
  for (const auto& t : tuples) {
    Crossing c;
    c.arcs = t;
    if (succ(t[0]) != t[2]) throw DiagramError("under-strand labels must be consecutive");
    const bool pos_sign = succ(t[3]) == t[1];
    const bool neg_sign = succ(t[1]) == t[3];
    if (!pos_sign && !neg_sign) throw DiagramError("over-strand labels must be consecutive");
    c.sign = pos_sign ? 1 : -1;
    d.crossings.push_back(c);
  }
  check_diagram(d);
  return d;
}

void check_diagram(const KnotDiagram& d) {
  int arcs = 0;
  KnotDiagram c = compact(d, &arcs);
  Slots slots(c, arcs);
  (void)slots;
}

int component_count(const KnotDiagram& d) {
  int arcs = 0;
  KnotDiagram c = compact(d, &arcs);
  Slots slots(c, arcs);
  std::vector<char> seen(static_cast<std::size_t>(arcs), 0);
  int comps = d.free_loops;
  for (int a = 0; a < arcs; ++a) {
    if (seen[static_cast<std::size_t>(a)]) continue;
    ++comps;
    int cur = a;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      cur = slots.next_arc(c, cur);
    }
  }
  return comps;
}

std::vector<std::vector<PassageRef>> component_passages(const KnotDiagram& d) {
  int arcs = 0;
  KnotDiagram c = compact(d, &arcs);
  Slots slots(c, arcs);
  std::vector<char> seen(static_cast<std::size_t>(arcs), 0);
  std::vector<std::vector<PassageRef>> out;
  for (int a = 0; a < arcs; ++a) {
    if (seen[static_cast<std::size_t>(a)]) continue;
    out.emplace_back();
    int cur = a;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      const SlotRef r = slots.in[static_cast<std::size_t>(cur)];
      out.back().push_back({static_cast<std::size_t>(r.crossing), r.slot == 0});
      cur = slots.next_arc(c, cur);
    }
  }
  return out;
}

std::string format_pd(const KnotDiagram& d) {
  int arcs = 0;
  KnotDiagram c = compact(d, &arcs);
  Slots slots(c, arcs);
  std::vector<int> label(static_cast<std::size_t>(arcs), 0);
  int next = 1;
  for (int a = 0; a < arcs; ++a) {
    if (label[static_cast<std::size_t>(a)]) continue;
    int cur = a;
    while (!label[static_cast<std::size_t>(cur)]) {
      label[static_cast<std::size_t>(cur)] = next++;
      cur = slots.next_arc(c, cur);
    }
  }
  std::ostringstream os;
  for (const auto& x : c.crossings) {
    os << '(';
    for (int s = 0; s < 4; ++s) os << (s ? "," : "") << label[static_cast<std::size_t>(x.arcs[static_cast<std::size_t>(s)])];
    os << ')';
  }
  return os.str();
}

int writhe(const KnotDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings) w += c.sign;
  return w;
}

KnotDiagram mirror_diagram(const KnotDiagram& d) {
  KnotDiagram out = d;
  for (auto& c : out.crossings) {
    std::swap(c.arcs[1], c.arcs[3]);
    c.sign = -c.sign;
  }
  return out;
}

void switch_crossing(KnotDiagram& d, std::size_t k) {
  Crossing& c = d.crossings.at(k);
  const auto [a0, a1, a2, a3] = c.arcs;
  // old over strand goes under; rotate so its incoming arc comes first
  if (c.sign > 0) {
    c.arcs = {a3, a0, a1, a2};
  } else {
    c.arcs = {a1, a2, a3, a0};
  }
  c.sign = -c.sign;
}

KnotDiagram smooth_crossing(const KnotDiagram& d, std::size_t k) {
  const Crossing& c = d.crossings.at(k);
  UnionFind uf;
  uf.unite(c.under_in(), c.over_out());
  uf.unite(c.over_in(), c.under_out());
  return remove_and_merge(d, {k}, uf, {c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3]});
}

namespace {

bool remove_kink(KnotDiagram& d) {
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    const auto& a = d.crossings[k].arcs;
    for (int s = 0; s < 4; ++s) {
      if (a[static_cast<std::size_t>(s)] != a[static_cast<std::size_t>((s + 1) % 4)]) continue;
      const int p = a[static_cast<std::size_t>((s + 2) % 4)];
      const int q = a[static_cast<std::size_t>((s + 3) % 4)];
      UnionFind uf;
      uf.unite(p, q);
      d = remove_and_merge(d, {k}, uf, {p, q});
      return true;
    }
  }
  return false;
}

bool remove_clasp(KnotDiagram& d) {
  int arcs = 0;
  KnotDiagram c = compact(d, &arcs);
  Slots slots(c, arcs);
  const std::size_t n = c.crossings.size();
  std::vector<char> seen(n * 4, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (int k = 0; k < 4; ++k) {
      if (seen[x * 4 + static_cast<std::size_t>(k)]) continue;
      // walk the face whose corner sits between slots k and k+1 of x
      std::vector<std::pair<int, int>> corners;
      int cx = static_cast<int>(x), ck = k;
      while (!seen[static_cast<std::size_t>(cx) * 4 + static_cast<std::size_t>(ck)]) {
        seen[static_cast<std::size_t>(cx) * 4 + static_cast<std::size_t>(ck)] = 1;
        corners.emplace_back(cx, ck);
        const SlotRef nxt = slots.partner(c, cx, (ck + 1) % 4);
        cx = nxt.crossing;
        ck = nxt.slot;
      }
      if (corners.size() != 2) continue;
      const auto [c1, k1] = corners[0];
      const auto [c2, k2] = corners[1];
      if (c1 == c2) continue;
      if (((k1 + 1) % 2) != (k2 % 2)) continue;  // one strand must be over at both
      const auto& A = c.crossings[static_cast<std::size_t>(c1)].arcs;
      const auto& B = c.crossings[static_cast<std::size_t>(c2)].arcs;
      const int e1 = A[static_cast<std::size_t>((k1 + 3) % 4)];
      const int e2 = B[static_cast<std::size_t>((k2 + 2) % 4)];
      const int f1 = A[static_cast<std::size_t>((k1 + 2) % 4)];
      const int f2 = B[static_cast<std::size_t>((k2 + 3) % 4)];
      UnionFind uf;
      uf.unite(e1, e2);
      uf.unite(f1, f2);
      d = remove_and_merge(c, {static_cast<std::size_t>(c1), static_cast<std::size_t>(c2)}, uf, {e1, e2, f1, f2});
      return true;
    }
  }
  return false;
}

}  // namespace

KnotDiagram simplify(KnotDiagram d) {
  for (;;) {
    if (remove_kink(d)) continue;
    if (remove_clasp(d)) continue;
    break;
  }
  return d;
}

std::vector<KnotDiagram> connected_pieces(const KnotDiagram& d) {
  const std::size_t n = d.crossings.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<int, std::size_t> owner;
  for (std::size_t k = 0; k < n; ++k) {
    for (int a : d.crossings[k].arcs) {
      auto [it, fresh] = owner.try_emplace(a, k);
      if (!fresh) parent[find(k)] = find(it->second);
    }
  }
  std::vector<KnotDiagram> out;
  std::unordered_map<std::size_t, std::size_t> index;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = find(k);
    auto [it, fresh] = index.try_emplace(r, out.size());
    if (fresh) out.emplace_back();
    out[it->second].crossings.push_back(d.crossings[k]);
  }
  return out;
}

std::vector<int> canonical_code(const KnotDiagram& d) {
  int arcs = 0;
  KnotDiagram c = compact(d, &arcs);
  if (arcs == 0) return {0, d.free_loops};
  Slots slots(c, arcs);
  std::vector<int> best;
  std::vector<int> label(static_cast<std::size_t>(arcs));
  std::vector<int> order;
  std::vector<int> code;
  for (int start = 0; start < arcs; ++start) {
    std::fill(label.begin(), label.end(), -1);
    order.clear();
    int next = 0;
    auto walk = [&](int a) {
      while (label[static_cast<std::size_t>(a)] < 0) {
        label[static_cast<std::size_t>(a)] = next++;
        order.push_back(a);
        a = slots.next_arc(c, a);
      }
    };
    walk(start);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const SlotRef r = slots.in[static_cast<std::size_t>(order[i])];
      for (int a : c.crossings[static_cast<std::size_t>(r.crossing)].arcs) {
        if (label[static_cast<std::size_t>(a)] < 0) walk(a);
      }
      const SlotRef o = slots.out[static_cast<std::size_t>(order[i])];
      for (int a : c.crossings[static_cast<std::size_t>(o.crossing)].arcs) {
        if (label[static_cast<std::size_t>(a)] < 0) walk(a);
      }
    }
    if (next != arcs) throw DiagramError("canonical_code needs a connected diagram");
    code.assign(static_cast<std::size_t>(arcs) * 5 / 2 + 2, 0);
    code[0] = static_cast<int>(c.crossings.size());
    code[1] = d.free_loops;
    for (const auto& x : c.crossings) {
      const int u = label[static_cast<std::size_t>(x.arcs[0])];
      int* slot = &code[2 + static_cast<std::size_t>(u) * 5];
      if (static_cast<std::size_t>(2 + u * 5 + 5) > code.size()) {
        code.resize(2 + static_cast<std::size_t>(u) * 5 + 5, 0);
        slot = &code[2 + static_cast<std::size_t>(u) * 5];
      }
      slot[0] = 1;
      for (int s = 1; s < 4; ++s) slot[s] = label[static_cast<std::size_t>(x.arcs[static_cast<std::size_t>(s)])];
      slot[4] = x.sign;
    }
    if (best.empty() || code < best) best = code;
  }
  return best;
}

IntPolyline to_polyline(const LatticePolygon& poly) {
  IntPolyline out;
  out.reserve(poly.length());
  for (const auto& v : poly.vertices()) out.push_back({v.x, v.y, v.z});
  return out;
}

namespace {

using P3 = std::array<std::int64_t, 3>;

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
std::int64_t dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
int sgn(std::int64_t v) { return (v > 0) - (v < 0); }

std::int64_t orient(const P3& a, const P3& b, const P3& c, const P3& p) {
  return dot(cross(sub(b, a), sub(c, a)), sub(p, a));
}

struct P2 {
  std::int64_t x, y;
};

std::int64_t orient2(const P2& a, const P2& b, const P2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment2(const P2& a, const P2& b, const P2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_meet2(const P2& a, const P2& b, const P2& c, const P2& d) {
  const int o1 = sgn(orient2(a, b, c)), o2 = sgn(orient2(a, b, d));
  const int o3 = sgn(orient2(c, d, a)), o4 = sgn(orient2(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment2(a, b, c)) return true;
  if (o2 == 0 && on_segment2(a, b, d)) return true;
  if (o3 == 0 && on_segment2(c, d, a)) return true;
  if (o4 == 0 && on_segment2(c, d, b)) return true;
  return false;
}

bool inside_triangle2(const P2& a, const P2& b, const P2& c, const P2& p) {
  const int s1 = sgn(orient2(a, b, p)), s2 = sgn(orient2(b, c, p)), s3 = sgn(orient2(c, a, p));
  return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

// closed triangle vs closed segment
bool triangle_hits_segment(const P3& a, const P3& b, const P3& c, const P3& p, const P3& q) {
  const std::int64_t op = orient(a, b, c, p), oq = orient(a, b, c, q);
  if ((op > 0 && oq > 0) || (op < 0 && oq < 0)) return false;
  if (op == 0 && oq == 0) {
    const P3 n = cross(sub(b, a), sub(c, a));
    int drop = 0;
    for (int k = 1; k < 3; ++k) {
      if (std::llabs(n[static_cast<std::size_t>(k)]) > std::llabs(n[static_cast<std::size_t>(drop)])) drop = k;
    }
    auto flat = [drop](const P3& v) {
      return drop == 0 ? P2{v[1], v[2]} : drop == 1 ? P2{v[0], v[2]} : P2{v[0], v[1]};
    };
    const P2 A = flat(a), B = flat(b), C = flat(c), Pp = flat(p), Q = flat(q);
    if (inside_triangle2(A, B, C, Pp) || inside_triangle2(A, B, C, Q)) return true;
    return segments_meet2(A, B, Pp, Q) || segments_meet2(B, C, Pp, Q) || segments_meet2(C, A, Pp, Q);
  }
  const int s1 = sgn(orient(p, q, a, b)), s2 = sgn(orient(p, q, b, c)), s3 = sgn(orient(p, q, c, a));
  return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

// Does the segment apex->x leave the apex into the closed corner (p1, apex, p2)?
bool enters_corner(const P3& apex, const P3& p1, const P3& p2, const P3& x) {
  const P3 u = sub(p1, apex), v = sub(p2, apex), w = sub(x, apex);
  const P3 n = cross(u, v);
  if (dot(n, w) != 0) return false;
  return dot(n, cross(u, w)) >= 0 && dot(n, cross(w, v)) >= 0;
}

}  // namespace

IntPolyline reduce(IntPolyline pts) {
  std::size_t n = pts.size();
  if (n <= 3) return pts;
  std::vector<std::size_t> nxt(n), prv(n);
  for (std::size_t i = 0; i < n; ++i) {
    nxt[i] = (i + 1) % n;
    prv[i] = (i + n - 1) % n;
  }
  std::vector<char> alive(n, 1);
  std::size_t live = n;
  std::size_t head = 0;
  bool changed = true;
  while (changed && live > 3) {
    changed = false;
    std::size_t i = head;
    std::size_t visited = 0;
    const std::size_t round = live;
    while (visited < round && live > 3) {
      ++visited;
      const std::size_t ia = prv[i], ic = nxt[i];
      const P3& a = pts[ia];
      const P3& b = pts[i];
      const P3& c = pts[ic];
      bool blocked = false;
      const P3 nrm = cross(sub(b, a), sub(c, a));
      if (nrm[0] != 0 || nrm[1] != 0 || nrm[2] != 0) {
        std::int64_t lo[3], hi[3];
        for (int k = 0; k < 3; ++k) {
          const auto kk = static_cast<std::size_t>(k);
          lo[k] = std::min({a[kk], b[kk], c[kk]});
          hi[k] = std::max({a[kk], b[kk], c[kk]});
        }
        // segments other than (a,b) and (b,c)
        for (std::size_t s = ic; s != ia && !blocked; s = nxt[s]) {
          const std::size_t t = nxt[s];
          const P3& p = pts[s];
          const P3& q = pts[t];
          bool overlap = true;
          for (int k = 0; k < 3 && overlap; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            overlap = std::max(p[kk], q[kk]) >= lo[k] && std::min(p[kk], q[kk]) <= hi[k];
          }
          if (!overlap) continue;
          if (s == ic && t == ia) {
            blocked = true;  // only a triangle would remain
          } else if (s == ic) {
            blocked = enters_corner(c, a, b, q);
          } else if (t == ia) {
            blocked = enters_corner(a, b, c, p);
          } else {
            blocked = triangle_hits_segment(a, b, c, p, q);
          }
        }
      }
      const std::size_t following = nxt[i];
      if (!blocked) {
        alive[i] = 0;
        nxt[ia] = ic;
        prv[ic] = ia;
        --live;
        changed = true;
        if (head == i) head = ic;
      }
      i = following;
    }
  }
  IntPolyline out;
  out.reserve(live);
  std::size_t i = head;
  do {
    out.push_back(pts[i]);
    i = nxt[i];
  } while (i != head);
  return out;
}

namespace {

struct Dir3 {
  double x, y, z;
};

Dir3 random_direction(Rng& rng) {
  for (;;) {
    const double x = 2 * rng.uniform01() - 1, y = 2 * rng.uniform01() - 1, z = 2 * rng.uniform01() - 1;
    const double r2 = x * x + y * y + z * z;
    if (r2 > 1e-4 && r2 <= 1) {
      const double r = std::sqrt(r2);
      return {x / r, y / r, z / r};
    }
  }
}

struct Passage {
  double t;
  int crossing;
  bool over;
};

// Returns false when the projection along `dir` is not generic.
bool try_project(const IntPolyline& pts, const Dir3& d, KnotDiagram& out) {
  const std::size_t m = pts.size();
  Dir3 helper = std::fabs(d.x) < 0.6 ? Dir3{1, 0, 0} : Dir3{0, 1, 0};
  Dir3 e1{d.y * helper.z - d.z * helper.y, d.z * helper.x - d.x * helper.z, d.x * helper.y - d.y * helper.x};
  const double l1 = std::sqrt(e1.x * e1.x + e1.y * e1.y + e1.z * e1.z);
  e1 = {e1.x / l1, e1.y / l1, e1.z / l1};
  const Dir3 e2{d.y * e1.z - d.z * e1.y, d.z * e1.x - d.x * e1.z, d.x * e1.y - d.y * e1.x};
  std::vector<double> px(m), py(m), h(m);
  double scale = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(pts[i][0]), y = static_cast<double>(pts[i][1]),
                 z = static_cast<double>(pts[i][2]);
    px[i] = x * e1.x + y * e1.y + z * e1.z;
    py[i] = x * e2.x + y * e2.y + z * e2.z;
    h[i] = x * d.x + y * d.y + z * d.z;
    scale = std::max({scale, std::fabs(px[i]), std::fabs(py[i])});
  }
  const double tol = 1e-9 * scale;
  // no vertex may sit on (or next to) a segment it does not bound
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t t = (s + 1) % m;
      if (v == s || v == t) continue;
      const double dx = px[t] - px[s], dy = py[t] - py[s];
      const double len2 = dx * dx + dy * dy;
      double u = ((px[v] - px[s]) * dx + (py[v] - py[s]) * dy) / len2;
      u = std::clamp(u, 0.0, 1.0);
      const double qx = px[s] + u * dx - px[v], qy = py[s] + u * dy - py[v];
      if (qx * qx + qy * qy < tol * tol * 1e6) return false;
    }
  }
  std::vector<std::vector<Passage>> on_segment(m);
  struct Raw {
    std::size_t over_seg, under_seg;
  };
  std::vector<Raw> raw;
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t s1 = (s + 1) % m;
    for (std::size_t r = s + 1; r < m; ++r) {
      const std::size_t r1 = (r + 1) % m;
      if (r == s1 || r1 == s) continue;
      const double ax = px[s1] - px[s], ay = py[s1] - py[s];
      const double bx = px[r1] - px[r], by = py[r1] - py[r];
      const double den = ax * by - ay * bx;
      const double cx = px[r] - px[s], cy = py[r] - py[s];
      const double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
      if (std::fabs(den) < 1e-12 * la * lb) {
        // parallel in projection: generic only if they stay apart
        const double dist = std::fabs(cx * ay - cy * ax) / la;
        if (dist >= 1e-6) continue;
        // same line: a problem only when the intervals meet
        const double q0 = (cx * ax + cy * ay) / la;
        const double q1 = ((px[r1] - px[s]) * ax + (py[r1] - py[s]) * ay) / la;
        if (std::max(q0, q1) < -1e-6 || std::min(q0, q1) > la + 1e-6) continue;
        return false;
      }
      const double t = (cx * by - cy * bx) / den;
      const double u = (cx * ay - cy * ax) / den;
      if (t < -1e-9 || t > 1 + 1e-9 || u < -1e-9 || u > 1 + 1e-9) continue;
      if (t < 1e-7 || t > 1 - 1e-7 || u < 1e-7 || u > 1 - 1e-7) return false;
      const double hs = h[s] + t * (h[s1] - h[s]);
      const double hr = h[r] + u * (h[r1] - h[r]);
      if (std::fabs(hs - hr) < 1e-9) return false;
      const int id = static_cast<int>(raw.size());
      const bool s_over = hs > hr;
      raw.push_back(s_over ? Raw{s, r} : Raw{r, s});
      on_segment[s].push_back({t, id, s_over});
      on_segment[r].push_back({u, id, !s_over});
    }
  }
  // passage sequence along the knot
  std::vector<Passage> seq;
  std::vector<std::size_t> seg_of;
  for (std::size_t s = 0; s < m; ++s) {
    auto& list = on_segment[s];
    std::sort(list.begin(), list.end(), [](const Passage& a, const Passage& b) { return a.t < b.t; });
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (list[k].t - list[k - 1].t < 1e-7) return false;
    }
    for (const auto& p : list) {
      seq.push_back(p);
      seg_of.push_back(s);
    }
  }
  out = KnotDiagram{};
  const std::size_t total = seq.size();
  if (total == 0) {
    out.free_loops = 1;
    return true;
  }
  const int labels = static_cast<int>(total);
  std::vector<int> under_pass(raw.size()), over_pass(raw.size());
  for (std::size_t p = 0; p < total; ++p) {
    (seq[p].over ? over_pass : under_pass)[static_cast<std::size_t>(seq[p].crossing)] = static_cast<int>(p);
  }
  auto in_label = [labels](int p) { return p == 0 ? labels : p; };
  auto out_label = [](int p) { return p + 1; };
  for (std::size_t c = 0; c < raw.size(); ++c) {
    const std::size_t us = raw[c].under_seg, os = raw[c].over_seg;
    const double ux = px[(us + 1) % m] - px[us], uy = py[(us + 1) % m] - py[us];
    const double ox = px[(os + 1) % m] - px[os], oy = py[(os + 1) % m] - py[os];
    const int sign = (ox * uy - oy * ux) > 0 ? 1 : -1;
    const int pu = under_pass[c], po = over_pass[c];
    Crossing x;
    x.sign = sign;
    x.arcs[0] = in_label(pu);
    x.arcs[2] = out_label(pu);
    if (sign > 0) {
      x.arcs[1] = out_label(po);
      x.arcs[3] = in_label(po);
    } else {
      x.arcs[1] = in_label(po);
      x.arcs[3] = out_label(po);
    }
    out.crossings.push_back(x);
  }
  return true;
}

}  // namespace

namespace {

// straight runs would otherwise give overlapping segments in every projection
IntPolyline merge_collinear(const IntPolyline& pts) {
  const std::size_t m = pts.size();
  if (m <= 3) return pts;
  IntPolyline out;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = pts[(i + m - 1) % m];
    const auto& b = pts[i];
    const auto& c = pts[(i + 1) % m];
    const std::int64_t u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
    const std::int64_t v0 = c[0] - b[0], v1 = c[1] - b[1], v2 = c[2] - b[2];
    const bool straight = u1 * v2 - u2 * v1 == 0 && u2 * v0 - u0 * v2 == 0 && u0 * v1 - u1 * v0 == 0 &&
                          u0 * v0 + u1 * v1 + u2 * v2 > 0;
    if (!straight) out.push_back(b);
  }
  return out;
}

}  // namespace

KnotDiagram project_polyline(const IntPolyline& pts, const ProjectionOptions& opt) {
  IntPolyline work = opt.reduce_first ? reduce(pts) : merge_collinear(pts);
  if (work.size() <= 3) {
    KnotDiagram d;
    d.free_loops = 1;
    return d;
  }
  Rng rng(stream_seed(opt.seed, 0x70726f6aULL));
  KnotDiagram best;
  bool have = false;
  int found = 0;
  for (int attempt = 0; attempt < opt.max_attempts && found < std::max(1, opt.directions); ++attempt) {
    KnotDiagram d;
    if (!try_project(work, random_direction(rng), d)) continue;
    ++found;
    if (!have || d.crossings.size() < best.crossings.size()) {
      best = std::move(d);
      have = true;
    }
  }
  if (!have) throw DiagramError("no generic projection direction found");
  return best;
}

KnotDiagram project(const LatticePolygon& poly, const ProjectionOptions& opt) {
  return project_polyline(to_polyline(poly), opt);
}

}  // namespace bandsurg
