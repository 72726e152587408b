#include "bandsurg/knot_table.hpp"

#include "bandsurg/kauffman.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef BANDSURG_DEFAULT_DATA_DIR
#define BANDSURG_DEFAULT_DATA_DIR "data"
#endif

namespace bandsurg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(std::string(trim(cur)));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::map<std::string, std::string> read_pd_file(const std::string& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos || line.empty() || line[0] == '#') continue;
    out[std::string(trim(std::string_view(line).substr(0, colon)))] =
        std::string(trim(std::string_view(line).substr(colon + 1)));
  }
  return out;
}

bool parse_flag(const std::string& s, std::size_t line) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError(line, "expected 0/1 flag, got '" + s + "'");
}

KnotRecord unknot_record() {
  KnotRecord r;
  r.type = KnotType{"0_1", false};
  r.crossing_number = 0;
  r.chiral = false;
  r.det = 1;
  r.signature = 0;
  r.qa = true;
  r.homfly = LaurentPoly2(1);
  return r;
}

}  // namespace

int KnotType::crossing_number() const {
  const auto us = base.find('_');
  return std::stoi(base.substr(0, us));
}

KnotType KnotType::parse(std::string_view text) {
  text = trim(text);
  if (text == "unknot" || text == "0_1" || text == "0_1*") return {"0_1", false};
  KnotType t;
  if (!text.empty() && text.back() == '*') {
    t.mirror = true;
    text.remove_suffix(1);
  }
  const auto us = text.find('_');
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (us == std::string_view::npos || !digits(text.substr(0, us)) || !digits(text.substr(us + 1))) {
    throw std::invalid_argument("malformed knot name '" + std::string(text) + "'");
  }
  t.base = std::string(text);
  return t;
}

std::string_view to_string(IdKind kind) {
  switch (kind) {
    case IdKind::kIdentified: return "identified";
    case IdKind::kAmbiguous: return "ambiguous";
    case IdKind::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string Identification::label() const {
  if (kind == IdKind::kIdentified) return types.front().name();
  if (kind == IdKind::kUnknown) return "unknown";
  std::string s = "ambiguous(";
  for (std::size_t k = 0; k < types.size(); ++k) s += (k ? "|" : "") + types[k].name();
  return s + ")";
}

KnotTable::KnotTable(std::vector<KnotRecord> records) : records_(std::move(records)) {
  for (std::size_t k = 0; k < records_.size(); ++k) {
    by_name_[records_[k].type.name()] = k;
    by_poly_[records_[k].homfly].push_back(k);
  }
}

const KnotRecord* KnotTable::find(const KnotType& t) const {
  if (auto it = by_name_.find(t.name()); it != by_name_.end()) return &records_[it->second];
  if (t.mirror) {
    // achiral knots have a single record
    if (auto it = by_name_.find(t.base); it != by_name_.end() && !records_[it->second].chiral) {
      return &records_[it->second];
    }
  }
  return nullptr;
}

const KnotRecord* KnotTable::find(std::string_view name) const {
  try {
    return find(KnotType::parse(name));
  } catch (const std::invalid_argument&) {
    return nullptr;
  }
}

const KnotRecord& KnotTable::at(std::string_view name) const {
  if (const auto* r = find(name)) return *r;
  std::string msg = "unknown knot '" + std::string(name) + "'; valid names:";
  for (const auto& n : names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

std::vector<std::string> KnotTable::names() const {
  std::vector<std::string> out;
  for (const auto& r : records_) out.push_back(r.type.name());
  return out;
}

Identification KnotTable::identify(const LaurentPoly2& p) const {
  Identification id;
  id.homfly = p;
  auto it = by_poly_.find(p);
  if (it == by_poly_.end()) {
    id.kind = IdKind::kUnknown;
    id.note = "HOMFLY not in table";
    return id;
  }
  for (std::size_t k : it->second) id.types.push_back(records_[k].type);
  std::sort(id.types.begin(), id.types.end(), [](const KnotType& a, const KnotType& b) {
    const int ca = a.crossing_number(), cb = b.crossing_number();
    return ca != cb ? ca < cb : a < b;
  });
  id.kind = id.types.size() == 1 ? IdKind::kIdentified : IdKind::kAmbiguous;
  return id;
}

LaurentPoly2 KnotTable::kauffman_of(const KnotRecord& rec) const {
  if (rec.pd.empty() && !rec.type.is_unknot()) {
    throw std::invalid_argument("no bundled diagram for " + rec.type.name());
  }
  std::lock_guard<std::mutex> guard(kauffman_cache_->lock);
  auto it = kauffman_cache_->values.find(rec.type.name());
  if (it != kauffman_cache_->values.end()) return it->second;
  const LaurentPoly2 f = rec.type.is_unknot() ? LaurentPoly2(1) : kauffman(parse_pd(rec.pd));
  kauffman_cache_->values.emplace(rec.type.name(), f);
  return f;
}

void KnotTable::write_csv(std::ostream& out) const {
  out << "name,crossing_number,chiral,det,signature,qa,homfly\n";
  for (const auto& r : records_) {
    out << r.type.name() << ',' << r.crossing_number << ',' << (r.chiral ? 1 : 0) << ',' << r.det << ','
        << r.signature << ',' << (r.qa ? 1 : 0) << ',' << r.homfly.canonical() << '\n';
  }
}

KnotTable KnotTable::load(const std::string& dir) {
  const std::string path = dir + "/knot_table.csv";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open knot table: " + path);
  const auto pds = read_pd_file(dir + "/knots_pd.txt");
  std::vector<KnotRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw ParseError(line_no, "knot table row needs 7 fields");
    KnotRecord r;
    try {
      r.type = KnotType::parse(f[0]);
      r.crossing_number = std::stoi(f[1]);
      r.chiral = parse_flag(f[2], line_no);
      r.det = std::stoll(f[3]);
      r.signature = std::stoi(f[4]);
      r.qa = parse_flag(f[5], line_no);
      r.homfly = LaurentPoly2::parse_canonical(f[6]);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (auto it = pds.find(r.type.base); it != pds.end()) {
      r.pd = r.type.mirror ? format_pd(mirror_diagram(parse_pd(it->second))) : it->second;
    }
    records.push_back(std::move(r));
  }
  return KnotTable(std::move(records));
}

KnotTable KnotTable::build(const std::string& dir) {
  const auto pds = read_pd_file(dir + "/knots_pd.txt");
  const std::string path = dir + "/knot_invariants.csv";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open invariants file: " + path);
  std::vector<KnotRecord> records{unknot_record()};
  HomflyEngine engine(HomflyOptions{64, 1u << 20});
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() < 6) throw ParseError(line_no, "invariants row needs at least 6 fields");
    KnotRecord r;
    r.type = KnotType::parse(f[0]);
    r.crossing_number = std::stoi(f[1]);
    r.chiral = parse_flag(f[2], line_no);
    r.det = std::stoll(f[3]);
    r.signature = std::stoi(f[4]);
    r.qa = parse_flag(f[5], line_no);
    auto it = pds.find(r.type.base);
    if (it == pds.end()) throw std::runtime_error("no PD code for " + r.type.base);
    r.pd = it->second;
    r.homfly = engine.evaluate(parse_pd(r.pd));
    records.push_back(r);
    if (r.chiral) {
      KnotRecord m = r;
      m.type.mirror = true;
      m.signature = -r.signature;
      m.homfly = mirror_poly(r.homfly);
      m.pd = format_pd(mirror_diagram(parse_pd(r.pd)));
      records.push_back(std::move(m));
    }
  }
  return KnotTable(std::move(records));
}

bool is_reserve_alias(const KnotType& t) { return t.crossing_number() > 8; }

Identification resolve_aliases(const KnotTable& table, const KnotDiagram& d, Identification id,
                               const HomflyOptions& opt) {
  if (id.kind != IdKind::kAmbiguous) return id;
  auto settle = [&](KnotType t, std::string note) {
    id.candidates = id.types;
    id.types = {std::move(t)};
    id.kind = IdKind::kIdentified;
    id.note = std::move(note);
    return id;
  };
  const auto n = static_cast<int>(d.crossings.size());
  std::vector<KnotType> possible;
  for (const auto& t : id.types) {
    if (t.crossing_number() <= n) possible.push_back(t);
  }
  if (possible.size() == 1) {
    return settle(possible.front(), "HOMFLY tie settled by a " + std::to_string(n) + "-crossing diagram");
  }
  if (possible.empty()) return id;
  LaurentPoly2 f;
  try {
    f = kauffman(d, opt);
  } catch (const HomflyBudgetExceeded&) {
    return id;
  }
  std::vector<KnotType> keep;
  for (const auto& t : possible) {
    const KnotRecord* rec = table.find(t);
    if (rec == nullptr || rec->pd.empty()) return id;
    if (table.kauffman_of(*rec) == f) keep.push_back(t);
  }
  if (keep.size() != 1) return id;
  return settle(keep.front(), "HOMFLY tie settled by the Kauffman polynomial");
}

Identification identify_polygon(const KnotTable& table, const LatticePolygon& poly, const IdentifyOptions& opt) {
  KnotDiagram d = simplify(project(poly, opt.projection));
  if (d.crossings.empty()) return table.identify(LaurentPoly2(1));
  try {
    Identification id = table.identify(homfly(d, opt.homfly));
    if (!opt.resolve_aliases || id.kind != IdKind::kAmbiguous) return id;
    ProjectionOptions wide = opt.projection;
    wide.directions = std::max(wide.directions, opt.alias_directions);
    KnotDiagram smaller = simplify(project(poly, wide));
    if (smaller.crossings.size() < d.crossings.size()) d = std::move(smaller);
    HomflyOptions budget = opt.homfly;
    budget.max_crossings = std::min(budget.max_crossings, opt.alias_max_crossings);
    return resolve_aliases(table, d, std::move(id), budget);
  } catch (const HomflyBudgetExceeded& e) {
    Identification id;
    id.kind = IdKind::kUnknown;
    id.note = e.what();
    return id;
  }
}

std::string default_data_dir() {
  if (const char* env = std::getenv("BANDSURG_DATA_DIR"); env && *env) return env;
  return BANDSURG_DEFAULT_DATA_DIR;
}

Nomenclature parse_nomenclature(std::string_view s) {
  if (s == "table") return Nomenclature::kTable;
  if (s == "rolfsen") return Nomenclature::kRolfsen;
  if (s == "knotplot") return Nomenclature::kKnotPlot;
  throw std::invalid_argument("unknown nomenclature '" + std::string(s) + "' (table|rolfsen|knotplot)");
}

std::string convert_name(const KnotType& t, Nomenclature to) {
  if (to == Nomenclature::kTable || t.is_unknot()) return t.name();
  const int cn = t.crossing_number();
  const std::string idx = t.base.substr(t.base.find('_') + 1);
  const bool torus = idx == "1" && cn % 2 == 1 && cn >= 3;
  const bool listed = torus || t.base == "5_2" || t.base == "6_2" || t.base == "8_8" || t.base == "8_19" ||
                      t.base == "8_20";
  if (!listed) {
    throw std::invalid_argument("no nomenclature conversion listed for " + t.name());
  }
  // 8_8 and 8_19 keep their name in Rolfsen's column; everything else keeps it in KnotPlot's
  const bool rolfsen_same = t.base == "8_8" || t.base == "8_19";
  const bool flip = (to == Nomenclature::kRolfsen) ? !rolfsen_same : rolfsen_same;
  KnotType out = t;
  if (flip) out.mirror = !out.mirror;
  return out.name();
}

}  // namespace bandsurg
