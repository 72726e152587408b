#include "bandsurg/kauffman.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bandsurg {

PlainDiagram forget_orientation(const KnotDiagram& d) {
  PlainDiagram out;
  out.free_loops = d.free_loops;
  out.crossings.reserve(d.crossings.size());
  for (const auto& c : d.crossings) out.crossings.push_back(c.arcs);
  return out;
}

namespace {

struct Occurrence {
  int crossing = -1;
  int slot = -1;
};

class Roots {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end() || it->second == x) return x;
    const int r = find(it->second);
    parent_[x] = r;
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[a] = b;
  }

 private:
  std::map<int, int> parent_;
};

}  // namespace

KnotDiagram orient(const PlainDiagram& d) {
  const std::size_t n = d.crossings.size();
  std::map<int, std::vector<Occurrence>> occ;
  for (std::size_t k = 0; k < n; ++k) {
    for (int s = 0; s < 4; ++s) occ[d.crossings[k][static_cast<std::size_t>(s)]].push_back({static_cast<int>(k), s});
  }
  for (const auto& [label, list] : occ) {
    if (list.size() != 2) throw DiagramError("arc " + std::to_string(label) + " does not join two slots");
  }
  auto other_end = [&](int k, int s) {
    const auto& list = occ[d.crossings[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]];
    return (list[0].crossing == k && list[0].slot == s) ? list[1] : list[0];
  };

  std::vector<std::array<int, 4>> label(n);
  std::vector<std::array<char, 4>> incoming(n), seen(n);
  for (auto& s : seen) s.fill(0);
  int next = 1;
  for (std::size_t k0 = 0; k0 < n; ++k0) {
    for (int s0 = 0; s0 < 4; ++s0) {
      if (seen[k0][static_cast<std::size_t>(s0)]) continue;
      // enter crossing k0 through slot s0 and walk until the loop closes
      int k = static_cast<int>(k0), s = s0;
      while (!seen[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]) {
        const auto uk = static_cast<std::size_t>(k);
        seen[uk][static_cast<std::size_t>(s)] = 1;
        incoming[uk][static_cast<std::size_t>(s)] = 1;
        const int e = (s + 2) % 4;
        seen[uk][static_cast<std::size_t>(e)] = 1;
        incoming[uk][static_cast<std::size_t>(e)] = 0;
        label[uk][static_cast<std::size_t>(e)] = next;
        const Occurrence to = other_end(k, e);
        label[static_cast<std::size_t>(to.crossing)][static_cast<std::size_t>(to.slot)] = next;
        ++next;
        k = to.crossing;
        s = to.slot;
      }
    }
  }

  KnotDiagram out;
  out.free_loops = d.free_loops;
  out.crossings.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::array<int, 4> a = label[k];
    std::array<char, 4> in = incoming[k];
    if (!in[0]) {
      std::rotate(a.begin(), a.begin() + 2, a.end());
      std::rotate(in.begin(), in.begin() + 2, in.end());
    }
    Crossing c;
    c.arcs = a;
    c.sign = in[3] ? 1 : -1;
    out.crossings.push_back(c);
  }
  return out;
}

PlainDiagram resolve(const PlainDiagram& d, std::size_t k, bool join_01) {
  const auto& a = d.crossings.at(k);
  Roots uf;
  if (join_01) {
    uf.unite(a[0], a[1]);
    uf.unite(a[2], a[3]);
  } else {
    uf.unite(a[0], a[3]);
    uf.unite(a[1], a[2]);
  }
  PlainDiagram out;
  out.free_loops = d.free_loops;
  std::map<int, int> uses;
  for (std::size_t j = 0; j < d.crossings.size(); ++j) {
    if (j == k) continue;
    std::array<int, 4> c{};
    for (std::size_t s = 0; s < 4; ++s) {
      c[s] = uf.find(d.crossings[j][s]);
      ++uses[c[s]];
    }
    out.crossings.push_back(c);
  }
  std::vector<int> roots;
  for (int x : a) roots.push_back(uf.find(x));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (int r : roots) out.free_loops += uses.count(r) ? 0 : 1;
  return out;
}

LaurentPoly2 kauffman_unlink_factor() {
  return LaurentPoly2::monomial(1, -1) + LaurentPoly2::monomial(-1, -1) - LaurentPoly2(1);
}

namespace {

LaurentPoly2 unlink_pow(int k) {
  static thread_local std::vector<LaurentPoly2> cache{LaurentPoly2(1)};
  while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * kauffman_unlink_factor());
  return cache[static_cast<std::size_t>(k)];
}

}  // namespace

LaurentPoly2 KauffmanEngine::evaluate(const KnotDiagram& d) {
  KnotDiagram s = simplify(d);
  auto pieces = connected_pieces(s);
  const int split = static_cast<int>(pieces.size()) + s.free_loops;
  if (split == 0) return LaurentPoly2(1);
  LaurentPoly2 result = unlink_pow(split - 1);
  for (const auto& p : pieces) result = result * connected(p);
  return result;
}

LaurentPoly2 KauffmanEngine::connected(const KnotDiagram& piece) {
  if (piece.crossings.size() > opt_.max_crossings) throw HomflyBudgetExceeded(piece.crossings.size());
  auto key = canonical_code(piece);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  LaurentPoly2 value = descend(piece);
  if (memo_.size() >= opt_.memo_limit) memo_.clear();
  memo_.emplace(std::move(key), value);
  return value;
}

LaurentPoly2 KauffmanEngine::descend(KnotDiagram d) {
  const auto walks = component_passages(d);
  const std::size_t n = d.crossings.size();
  LaurentPoly2 result;
  LaurentPoly2 coef(1);
  int w = writhe(d);
  std::vector<char> met(n, 0);
  for (const auto& walk : walks) {
    for (const auto& p : walk) {
      if (met[p.crossing]) continue;
      met[p.crossing] = 1;
      if (!p.under) continue;
      const PlainDiagram plain = forget_orientation(d);
      LaurentPoly2 smooth;
      for (bool join : {true, false}) {
        const KnotDiagram r = orient(resolve(plain, p.crossing, join));
        smooth += evaluate(r).shifted(writhe(r) - w, 0, 1);
      }
      result += coef * smooth.shifted(0, 1, 1);
      const int eps = d.crossings[p.crossing].sign;
      coef = coef.shifted(-2 * eps, 0, -1);
      switch_crossing(d, p.crossing);
      w -= 2 * eps;
    }
  }
  result += coef * unlink_pow(static_cast<int>(walks.size()) - 1);
  return result;
}

LaurentPoly2 kauffman(const KnotDiagram& d, const HomflyOptions& opt) {
  KauffmanEngine engine(opt);
  return engine.evaluate(d);
}

LaurentPoly2 kauffman_mirror(const LaurentPoly2& p) {
  std::vector<Term> t = p.terms();
  for (auto& x : t) x.ea = -x.ea;
  return LaurentPoly2::from_terms(std::move(t));
}

}  // namespace bandsurg
