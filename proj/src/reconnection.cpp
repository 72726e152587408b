#include "bandsurg/reconnection.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <ostream>
#include <stdexcept>

#include <absl/container/flat_hash_map.h>

namespace bandsurg {

Vec3 ReconnectionSite::anchor() const { return *std::min_element(square.begin(), square.end()); }

std::string_view to_string(BandKind k) {
  return k == BandKind::kCoherent ? "coherent" : "non_coherent";
}

namespace {

template <typename Visit>
void scan_sites(const LatticePolygon& poly, Visit&& visit) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  absl::flat_hash_map<std::uint64_t, std::uint32_t> index;
  index.reserve(n);
  for (std::size_t k = 0; k < n; ++k) index.emplace(pack(v[k]), static_cast<std::uint32_t>(k));
  auto succ = [n](std::size_t k) { return k + 1 == n ? 0 : k + 1; };
  auto pred = [n](std::size_t k) { return k == 0 ? n - 1 : k - 1; };
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 u = v[i], w = v[succ(i)];
    for (const Vec3& d : perpendicular_steps(w - u)) {
      const auto fa = index.find(pack(u + d));
      if (fa == index.end()) continue;
      const auto fb = index.find(pack(w + d));
      if (fb == index.end()) continue;
      const std::size_t ia = fa->second, ib = fb->second;
      const bool parallel = succ(ia) == ib;
      if (!parallel && succ(ib) != ia) continue;
      if (ia == pred(i) || ia == succ(i)) continue;  // side (u, u+d) is a polygon edge
      const std::size_t iw = succ(i);
      if (ib == pred(iw) || ib == succ(iw)) continue;  // side (w, w+d) is a polygon edge
      const std::size_t j = parallel ? ia : ib;
      if (j <= i) continue;
      visit(ReconnectionSite{i, j, {u, w, w + d, u + d}, parallel});
    }
  }
}

void check_site(const LatticePolygon& poly, const ReconnectionSite& s) {
  const std::size_t n = poly.length();
  if (s.edge_a >= n || s.edge_b >= n || s.edge_a >= s.edge_b) {
    throw std::invalid_argument("stale reconnection site: edge index out of range");
  }
  const Vec3 u = poly.vertex(s.edge_a), w = poly.vertex(s.edge_a + 1);
  const Vec3 p = poly.vertex(s.edge_b), q = poly.vertex(s.edge_b + 1);
  const bool ok_a = u == s.square[0] && w == s.square[1];
  const bool ok_b = s.parallel ? (p == s.square[3] && q == s.square[2]) : (p == s.square[2] && q == s.square[3]);
  if (!ok_a || !ok_b || !is_unit_step(s.square[3] - u) || s.square[3] - u != s.square[2] - w) {
    throw std::invalid_argument("stale reconnection site: edges do not match the square");
  }
}

}  // namespace

std::vector<ReconnectionSite> find_sites(const LatticePolygon& poly) {
  std::vector<ReconnectionSite> out;
  scan_sites(poly, [&](const ReconnectionSite& s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), [](const ReconnectionSite& a, const ReconnectionSite& b) {
    return a.edge_a != b.edge_a ? a.edge_a < b.edge_a : a.edge_b < b.edge_b;
  });
  return out;
}

std::vector<ReconnectionSite> find_noncoherent_sites(const LatticePolygon& poly) {
  auto all = find_sites(poly);
  std::erase_if(all, [](const ReconnectionSite& s) { return !s.parallel; });
  return all;
}

std::size_t count_noncoherent_sites(const LatticePolygon& poly) {
  std::size_t count = 0;
  scan_sites(poly, [&](const ReconnectionSite& s) { count += s.parallel ? 1 : 0; });
  return count;
}

BandKind classify(const ReconnectionSite& site) {
  return site.parallel ? BandKind::kNonCoherent : BandKind::kCoherent;
}

std::vector<UndirectedEdge> band_edge_set(const LatticePolygon& poly, const ReconnectionSite& site) {
  check_site(poly, site);
  auto all = edge_set(poly);
  std::vector<UndirectedEdge> out;
  out.reserve(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (k != site.edge_a && k != site.edge_b) out.push_back(all[k]);
  }
  out.push_back(UndirectedEdge::make(site.square[0], site.square[3]));
  out.push_back(UndirectedEdge::make(site.square[1], site.square[2]));
  return out;
}

BandMoveResult apply_band(const LatticePolygon& poly, const ReconnectionSite& site) {
  check_site(poly, site);
  if (!site.parallel) {
    throw std::invalid_argument("coherent band move yields a two-component link");
  }
  std::vector<Vec3> v = poly.vertices();
  std::reverse(v.begin() + static_cast<std::ptrdiff_t>(site.edge_a + 1),
               v.begin() + static_cast<std::ptrdiff_t>(site.edge_b + 1));
  LatticePolygon after(std::move(v));
  return {std::move(after), 1, site};
}

SitePolicy parse_site_policy(std::string_view s) {
  if (s == "uniform-pair") return SitePolicy::kUniformPair;
  if (s == "conformation-first") return SitePolicy::kConformationFirst;
  throw std::invalid_argument("unknown site policy '" + std::string(s) + "' (uniform-pair|conformation-first)");
}

std::string_view to_string(SitePolicy p) {
  return p == SitePolicy::kUniformPair ? "uniform-pair" : "conformation-first";
}

std::vector<TransitionRecord> reconnect_survey(const std::vector<SampledConformation>& ensemble,
                                               const std::string& before, const KnotTable& table,
                                               const SurveyOptions& opt, SurveyLog* log) {
  std::vector<TransitionRecord> out;
  SurveyLog local;
  if (opt.events == 0 || ensemble.empty()) {
    if (log) *log = local;
    return out;
  }
  std::vector<std::uint64_t> counts(ensemble.size());
  std::vector<std::size_t> usable;
  std::vector<std::uint64_t> prefix;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    counts[k] = count_noncoherent_sites(ensemble[k].polygon);
    if (counts[k] == 0) {
      ++local.skipped_conformations;
      continue;
    }
    usable.push_back(k);
    total += counts[k];
    prefix.push_back(total);
  }
  if (usable.empty()) {
    if (log) *log = local;
    return out;
  }
  Rng rng(stream_seed(opt.seed, 0x73697465ULL));
  auto pick = [&]() -> std::pair<std::size_t, std::uint64_t> {
    if (opt.policy == SitePolicy::kUniformPair) {
      const std::uint64_t r = rng.below(total);
      const auto pos = static_cast<std::size_t>(std::upper_bound(prefix.begin(), prefix.end(), r) - prefix.begin());
      return {usable[pos], r - (pos == 0 ? 0 : prefix[pos - 1])};
    }
    const std::size_t conf = usable[static_cast<std::size_t>(rng.below(usable.size()))];
    return {conf, rng.below(counts[conf])};
  };
  auto run_event = [&](std::uint64_t e, std::size_t conf, std::uint64_t site_idx) {
    const auto& sample = ensemble[conf];
    const auto sites = find_noncoherent_sites(sample.polygon);
    const auto& site = sites[static_cast<std::size_t>(site_idx)];
    const auto moved = apply_band(sample.polygon, site);
    IdentifyOptions idopt = opt.identify;
    idopt.projection.seed = stream_seed(opt.seed, e);
    const Identification id = identify_polygon(table, moved.polygon_after, idopt);
    TransitionRecord rec;
    rec.event = static_cast<std::size_t>(e);
    rec.before = before;
    rec.after = id.label();
    rec.after_kind = id.kind;
    rec.length = sample.polygon.length();
    rec.anchor = site.anchor();
    rec.edge_a = site.edge_a;
    rec.edge_b = site.edge_b;
    rec.seed = opt.seed;
    rec.step = sample.step;
    rec.conformation = conf;
    for (std::size_t k = 0; k < id.candidates.size(); ++k) {
      rec.candidates += (k ? "|" : "") + id.candidates[k].name();
    }
    return rec;
  };

  const unsigned workers = std::max(1u, opt.threads);
  const std::uint64_t chunk = workers == 1 ? 256 : 1024 * static_cast<std::uint64_t>(workers);
  std::uint64_t hits = 0;
  bool done = false;
  for (std::uint64_t first = 0; first < opt.events && !done; first += chunk) {
    const std::uint64_t count = std::min(chunk, opt.events - first);
    std::vector<std::pair<std::size_t, std::uint64_t>> picks(count);
    for (auto& pk : picks) pk = pick();
    std::vector<TransitionRecord> batch(count);
    std::exception_ptr failure;
    std::mutex failure_lock;
    {
      std::atomic<std::uint64_t> cursor{0};
      auto work = [&]() {
        for (;;) {
          const std::uint64_t k = cursor.fetch_add(1);
          if (k >= count) return;
          try {
            batch[k] = run_event(first + k, picks[k].first, picks[k].second);
          } catch (...) {
            std::lock_guard<std::mutex> g(failure_lock);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      };
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
      work();
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& rec : batch) {
      if (!rec.candidates.empty()) ++local.resolved;
      if (rec.after_kind == IdKind::kAmbiguous) ++local.ambiguous;
      if (rec.after_kind == IdKind::kUnknown) ++local.unknown;
      const bool hit = !opt.stop_target.empty() && rec.after == opt.stop_target;
      out.push_back(std::move(rec));
      if (hit && opt.stop_after_hits > 0 && ++hits >= opt.stop_after_hits) {
        done = true;
        break;
      }
    }
  }
  if (log) *log = local;
  return out;
}

void write_transitions_header(std::ostream& out) {
  out << "event,before_knot,after_knot,after_kind,polygon_length,anchor_x,anchor_y,anchor_z,edge_a,edge_b,seed,"
         "step,conformation\n";
}

void write_transition(std::ostream& out, const TransitionRecord& r) {
  out << r.event << ',' << r.before << ',' << r.after << ',' << to_string(r.after_kind) << ',' << r.length << ','
      << r.anchor.x << ',' << r.anchor.y << ',' << r.anchor.z << ',' << r.edge_a << ',' << r.edge_b << ','
      << r.seed << ',' << r.step << ',' << r.conformation << '\n';
}

void write_alias_header(std::ostream& out) {
  out << "event,before_knot,after_knot,after_kind,polygon_length,anchor_x,anchor_y,anchor_z,edge_a,edge_b,seed,"
         "step,conformation,homfly_candidates\n";
}

void write_alias_row(std::ostream& out, const TransitionRecord& r) {
  std::string cand = r.candidates;
  if (cand.empty() && r.after_kind == IdKind::kAmbiguous) {
    cand = r.after.substr(r.after.find('(') + 1);
    cand.pop_back();
  }
  out << r.event << ',' << r.before << ',' << r.after << ',' << to_string(r.after_kind) << ',' << r.length << ','
      << r.anchor.x << ',' << r.anchor.y << ',' << r.anchor.z << ',' << r.edge_a << ',' << r.edge_b << ','
      << r.seed << ',' << r.step << ',' << r.conformation << ',' << cand << '\n';
}

}  // namespace bandsurg
