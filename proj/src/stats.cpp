#include "bandsurg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bandsurg {

std::vector<BlockCount> make_blocks(const std::vector<char>& hit, const std::vector<char>& counted,
                                    std::size_t n_blocks) {
  const std::size_t t = hit.size();
  if (n_blocks == 0 || n_blocks > t) throw std::invalid_argument("block count must lie in [1, number of events]");
  std::vector<BlockCount> out(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const std::size_t lo = b * t / n_blocks, hi = (b + 1) * t / n_blocks;
    for (std::size_t i = lo; i < hi; ++i) {
      if (!counted[i]) continue;
      ++out[b].events;
      out[b].hits += hit[i] ? 1 : 0;
    }
  }
  return out;
}

std::vector<BlockCount> uniform_blocks(std::uint64_t hits, std::uint64_t total, std::size_t n_blocks) {
  if (n_blocks == 0 || n_blocks > total) throw std::invalid_argument("block count must lie in [1, total]");
  if (hits > total) throw std::invalid_argument("hits exceed total");
  std::vector<BlockCount> out(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    out[b].events = (b + 1) * total / n_blocks - b * total / n_blocks;
    out[b].hits = (b + 1) * hits / n_blocks - b * hits / n_blocks;
  }
  return out;
}

ProbabilityEstimate estimate_from_blocks(const std::vector<BlockCount>& blocks, double z_score) {
  ProbabilityEstimate est;
  est.n_blocks = blocks.size();
  for (const auto& b : blocks) {
    est.observed += b.hits;
    est.total += b.events;
  }
  if (est.total == 0) throw std::invalid_argument("no events to estimate from");
  const double sx = static_cast<double>(est.observed), sn = static_cast<double>(est.total);
  est.p_hat = sx / sn;
  if (est.observed == 0 || blocks.size() < 2) return est;
  double ss = 0;
  for (const auto& b : blocks) {
    const double r = static_cast<double>(b.hits) - est.p_hat * static_cast<double>(b.events);
    ss += r * r;
  }
  const double nb = static_cast<double>(blocks.size());
  const double se = std::sqrt(nb / (nb - 1) * ss) / sn;
  est.ci_low = std::clamp(est.p_hat - z_score * se, 0.0, 1.0);
  est.ci_high = std::clamp(est.p_hat + z_score * se, 0.0, 1.0);
  return est;
}

ProbabilityEstimate estimate_probability(const std::vector<TransitionRecord>& records, const std::string& target,
                                         const TallyOptions& opt) {
  if (records.empty()) throw std::invalid_argument("no transition events");
  if (opt.n_blocks < 2) throw std::invalid_argument("need at least two blocks");
  if (opt.n_blocks > records.size()) throw std::invalid_argument("more blocks than events");
  std::vector<char> hit(records.size()), counted(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    counted[i] = records[i].after_kind != IdKind::kAmbiguous;
    hit[i] = counted[i] && records[i].after == target;
  }
  auto blocks = make_blocks(hit, counted, opt.n_blocks);
  ProbabilityEstimate est;
  std::uint64_t total = 0;
  for (const auto& b : blocks) total += b.events;
  if (total == 0) {
    est.n_blocks = blocks.size();
    return est;
  }
  return estimate_from_blocks(blocks, opt.z_score);
}

namespace {

std::string mirror_name(const std::string& name, const KnotTable* table) {
  KnotType t = KnotType::parse(name);
  if (table) {
    if (const auto* r = table->find(t); r && !r->chiral) return r->type.name();
  }
  t.mirror = !t.mirror;
  if (t.is_unknot()) t.mirror = false;
  return t.name();
}

}  // namespace

std::vector<ReportRow> report(const std::vector<TransitionRecord>& records, const KnotTable* table,
                              const std::vector<std::string>& targets, const TallyOptions& opt) {
  std::vector<ReportRow> rows;
  std::map<std::string, std::vector<TransitionRecord>> by_start;
  std::vector<std::string> starts;
  for (const auto& r : records) {
    auto [it, fresh] = by_start.try_emplace(r.before);
    if (fresh) starts.push_back(r.before);
    it->second.push_back(r);
  }
  for (const auto& start : starts) {
    const auto& recs = by_start[start];
    std::vector<std::string> wanted = targets;
    if (wanted.empty()) {
      wanted.push_back(mirror_name(start, table));
      std::set<std::string> seen(wanted.begin(), wanted.end());
      for (const auto& r : recs) {
        if (r.after_kind == IdKind::kIdentified && seen.insert(r.after).second) wanted.push_back(r.after);
      }
    }
    std::size_t lmin = SIZE_MAX, lmax = 0;
    std::uint64_t amb = 0, unk = 0;
    for (const auto& r : recs) {
      lmin = std::min(lmin, r.length);
      lmax = std::max(lmax, r.length);
      amb += r.after_kind == IdKind::kAmbiguous;
      unk += r.after_kind == IdKind::kUnknown;
    }
    TallyOptions o = opt;
    o.n_blocks = std::min(opt.n_blocks, recs.size());
    for (const auto& target : wanted) {
      ReportRow row;
      row.start = start;
      row.target = target;
      row.ambiguous = amb;
      row.unknown = unk;
      row.length_min = lmin;
      row.length_max = lmax;
      if (o.n_blocks >= 2) {
        row.estimate = estimate_probability(recs, target, o);
      } else {
        std::vector<char> hit(recs.size()), counted(recs.size());
        for (std::size_t i = 0; i < recs.size(); ++i) {
          counted[i] = recs[i].after_kind != IdKind::kAmbiguous;
          hit[i] = counted[i] && recs[i].after == target;
        }
        auto blocks = make_blocks(hit, counted, 1);
        if (blocks[0].events > 0) row.estimate = estimate_from_blocks(blocks, o.z_score);
      }
      for (const auto& r : recs) {
        if (r.after_kind != IdKind::kAmbiguous && r.after == target) {
          row.contributing_min = std::min(row.contributing_min.value_or(SIZE_MAX), r.length);
          row.contributing_max = std::max(row.contributing_max.value_or(0), r.length);
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_scaled(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v * 1e5);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "start_knot,target_knot,p_hat,ci_low,ci_high,observed,total,blocks,ambiguous,unknown,"
         "length_min,length_max,target_length_min,target_length_max\n";
  for (const auto& r : rows) {
    const auto& e = r.estimate;
    out << r.start << ',' << r.target << ',' << fmt(e.p_hat) << ',' << (e.ci_low ? fmt(*e.ci_low) : "") << ','
        << (e.ci_high ? fmt(*e.ci_high) : "") << ',' << e.observed << ',' << e.total << ',' << e.n_blocks << ','
        << r.ambiguous << ',' << r.unknown << ',' << r.length_min << ',' << r.length_max << ','
        << (r.contributing_min ? std::to_string(*r.contributing_min) : "") << ','
        << (r.contributing_max ? std::to_string(*r.contributing_max) : "") << '\n';
  }
}

void write_report_text(std::ostream& out, const std::vector<ReportRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %-10s %12s  %-22s %9s  %s\n", "Knot", "Product", "P x 1e-5",
                "Confidence interval", "Observed", "[l_min, l_max]");
  out << line;
  for (const auto& r : rows) {
    const auto& e = r.estimate;
    std::string ci = "---";
    if (e.ci_low) ci = "[" + fmt_scaled(*e.ci_low) + ", " + fmt_scaled(*e.ci_high) + "]";
    const std::string range = "[" + std::to_string(r.length_min) + ", " + std::to_string(r.length_max) + "]";
    std::snprintf(line, sizeof line, "%-8s %-10s %12s  %-22s %9llu  %s\n", r.start.c_str(), r.target.c_str(),
                  fmt_scaled(e.p_hat).c_str(), ci.c_str(), static_cast<unsigned long long>(e.observed),
                  range.c_str());
    out << line;
  }
}

std::vector<TransitionRecord> read_transitions(std::istream& in) {
  std::vector<TransitionRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("event,", 0) == 0) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 13) {
      throw ParseError(line_no, "expected 13 fields, found " + std::to_string(f.size()));
    }
    TransitionRecord r;
    try {
      auto to_u = [](const std::string& s) {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument("bad unsigned '" + s + "'");
        return v;
      };
      auto to_i = [](const std::string& s) {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
        return v;
      };
      r.event = to_u(f[0]);
      r.before = f[1];
      r.after = f[2];
      if (f[3] == "identified") r.after_kind = IdKind::kIdentified;
      else if (f[3] == "ambiguous") r.after_kind = IdKind::kAmbiguous;
      else if (f[3] == "unknown") r.after_kind = IdKind::kUnknown;
      else throw std::invalid_argument("bad after_kind '" + f[3] + "'");
      r.length = to_u(f[4]);
      r.anchor = make_vec(to_i(f[5]), to_i(f[6]), to_i(f[7]));
      r.edge_a = to_u(f[8]);
      r.edge_b = to_u(f[9]);
      r.seed = to_u(f[10]);
      r.step = to_u(f[11]);
      r.conformation = to_u(f[12]);
      if (r.before.empty() || r.after.empty()) throw std::invalid_argument("empty knot name");
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bandsurg
