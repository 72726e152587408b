#include "bandsurg/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include "json.hpp"

namespace bandsurg {

namespace fs = std::filesystem;

std::string version_string() { return "bandsurg 1.0.0"; }

RunConfig RunConfig::parse(const std::string& text) {
  // ini_parser only knows ';' comments
  std::istringstream in(text);
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    cleaned << line << '\n';
  }
  boost::property_tree::ptree tree;
  std::istringstream src(cleaned.str());
  try {
    boost::property_tree::ini_parser::read_ini(src, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw UsageError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig cfg;
  for (const auto& [key, node] : tree) {
    if (!node.empty()) {
      for (const auto& [sub, leaf] : node) cfg.values_[key + "." + sub] = leaf.data();
    } else {
      cfg.values_[key] = node.data();
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string RunConfig::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) throw UsageError("missing required parameter '" + key + "'");
  return it->second;
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& s = it->second;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos, 0);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || s[0] == '-' || pos != s.size()) throw UsageError("parameter '" + key + "' is not a count: " + s);
  return v;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size()) throw UsageError("parameter '" + key + "' is not a number: " + it->second);
  return v;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& s = it->second;
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw UsageError("parameter '" + key + "' is not a boolean: " + s);
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  auto it = values_.find(key);
  if (it == values_.end()) return out;
  std::string s = it->second;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != tok.size()) throw UsageError("parameter '" + key + "' has a bad entry: " + tok);
    out.push_back(v);
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path + "': " + ec.message());
  }
}

std::vector<SampledConformation> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open samples '" + path + "'");
  std::ostringstream whole;
  whole << in.rdbuf();
  const std::string text = whole.str();

  std::vector<std::pair<std::size_t, std::uint64_t>> meta;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    unsigned long long chain = 0, step = 0;
    if (std::sscanf(line.c_str(), "# chain=%llu step=%llu", &chain, &step) == 2) meta.emplace_back(chain, step);
  }
  std::istringstream body(text);
  auto polys = read_polygons(body);
  std::vector<SampledConformation> out;
  out.reserve(polys.size());
  const bool annotated = meta.size() == polys.size();
  for (std::size_t k = 0; k < polys.size(); ++k) {
    SampledConformation s{std::move(polys[k]), 0, 0};
    if (annotated) {
      s.chain = meta[k].first;
      s.step = meta[k].second;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_samples(const std::vector<EnsembleSample>& samples) {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : samples) {
    if (!first) out << '\n';
    first = false;
    out << "# chain=" << s.chain << " step=" << s.step << '\n';
    for (const Vec3& v : s.polygon.vertices()) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
  }
  return out.str();
}

namespace {

std::vector<int> braid_word(const std::string& data_dir, const std::string& base) {
  const std::string path = data_dir + "/braids.txt";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos || line.substr(0, colon) != base) continue;
    std::istringstream ws(line.substr(colon + 1));
    std::vector<int> word;
    int g = 0;
    while (ws >> g) word.push_back(g);
    return word;
  }
  throw std::invalid_argument("no braid word for " + base);
}

}  // namespace

LatticePolygon reference_conformation(const KnotTable& table, const std::string& data_dir, const KnotType& type) {
  const KnotRecord* rec = table.find(type);
  if (!rec) throw std::invalid_argument("unknown knot '" + type.name() + "'");
  const KnotType want = rec->type;
  if (want.is_unknot()) {
    return LatticePolygon({make_vec(0, 0, 0), make_vec(1, 0, 0), make_vec(1, 1, 0), make_vec(0, 1, 0)});
  }
  const fs::path bundled = fs::path(data_dir) / "conformations" / (want.base + ".txt");
  LatticePolygon poly = fs::exists(bundled) ? read_polygon_file(bundled.string()).at(0)
                                             : braid_closure(braid_word(data_dir, want.base));
  IdentifyOptions opt;
  Identification id = identify_polygon(table, poly, opt);
  auto has = [&](const Identification& i, const KnotType& t) {
    return std::find(i.types.begin(), i.types.end(), t) != i.types.end();
  };
  if (!has(id, want)) {
    poly = reflected(poly);
    id = identify_polygon(table, poly, opt);
    if (!has(id, want)) {
      throw std::runtime_error("reference conformation for " + want.name() + " identifies as " + id.label());
    }
  }
  return poly;
}

namespace {

std::vector<double> ladder_from(const RunConfig& cfg) {
  auto z = cfg.get_list("z_ladder");
  if (!z.empty()) return z;
  if (cfg.has("z_min") || cfg.has("z_max") || cfg.has("chains")) {
    return geometric_ladder(cfg.get_double("z_min", 0.117), cfg.get_double("z_max", 0.2125),
                            cfg.get_u64("chains", 8));
  }
  return default_ladder();
}

KnotType declared_knot(const RunConfig& cfg, const KnotTable& table) {
  const std::string name = cfg.require("knot");
  return table.at(name).type;
}

std::string data_dir_of(const RunConfig& cfg) { return cfg.get("data_dir", default_data_dir()); }

}  // namespace

SampleSummary run_sample(const RunConfig& cfg, const KnotTable& table) {
  const KnotType knot = declared_knot(cfg, table);
  const std::string out_path = cfg.require("out");
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  const std::uint64_t steps = cfg.get_u64("steps", 100000);
  const std::uint64_t burn_in = cfg.get_u64("burn_in", 0);
  const std::uint64_t sample_interval = cfg.get_u64("sample_interval", 1000);
  const std::uint64_t exchange_interval = cfg.get_u64("exchange_interval", 100);
  const auto threads = static_cast<unsigned>(cfg.get_u64("threads", 1));
  const std::size_t max_length = cfg.get_u64("max_length", 0);
  if (sample_interval == 0) throw UsageError("sample_interval must be positive");
  const auto ladder = ladder_from(cfg);
  for (double z : ladder) check_params({z, 1.0, max_length});

  auto pick_start = [&]() {
    if (!cfg.has("seed_conformation")) return reference_conformation(table, data_dir_of(cfg), knot);
    const auto polys = read_polygon_file(cfg.get("seed_conformation", ""));
    if (polys.empty()) throw std::invalid_argument("seed conformation file holds no polygon");
    const LatticePolygon& start = polys.front();
    const Identification id = identify_polygon(table, start);
    if (std::find(id.types.begin(), id.types.end(), knot) == id.types.end()) {
      throw std::invalid_argument("knot mismatch: seed conformation identifies as " + id.label() + ", expected " +
                                  knot.name());
    }
    return start;
  };
  const LatticePolygon start = pick_start();

  Ensemble ens(start, ladder, seed, max_length);
  if (burn_in > 0) ens.run(burn_in, burn_in + 1, exchange_interval, threads);
  auto samples = ens.run(steps, sample_interval, exchange_interval, threads);

  SampleSummary sum;
  sum.seed = seed;
  sum.samples = samples.size();
  sum.min_length = SIZE_MAX;
  for (const auto& s : samples) {
    const auto rep = validate(s.polygon.vertices());
    if (!rep.valid) throw std::logic_error("sampled polygon failed validation at step " + std::to_string(s.step));
    sum.min_length = std::min(sum.min_length, s.polygon.length());
    sum.max_length = std::max(sum.max_length, s.polygon.length());
  }
  if (samples.empty()) sum.min_length = 0;
  for (const auto& e : ens.exchange_log()) {
    ++sum.exchanges;
    sum.accepted_exchanges += e.accepted;
  }
  if (cfg.get_bool("verify_samples", false)) {
    for (const auto& s : samples) {
      const Identification id = identify_polygon(table, s.polygon);
      if (std::find(id.types.begin(), id.types.end(), knot) == id.types.end()) ++sum.mismatched;
    }
  }

  write_file_atomic(out_path, format_samples(samples));

  nlohmann::json m;
  m["command"] = "sample";
  m["version"] = version_string();
  m["knot"] = knot.name();
  m["seed"] = seed;
  m["z_ladder"] = ladder;
  m["steps"] = steps;
  m["burn_in"] = burn_in;
  m["sample_interval"] = sample_interval;
  m["exchange_interval"] = exchange_interval;
  m["threads"] = threads;
  m["max_length"] = max_length;
  m["start_length"] = start.length();
  m["samples"] = sum.samples;
  m["length_range"] = {sum.min_length, sum.max_length};
  m["exchanges"] = {{"attempted", sum.exchanges}, {"accepted", sum.accepted_exchanges}};
  if (cfg.get_bool("verify_samples", false)) m["mismatched_samples"] = sum.mismatched;
  m["output"] = out_path;
  m["config"] = cfg.values();
  write_file_atomic(cfg.get("manifest", out_path + ".manifest.json"), m.dump(2) + "\n");
  return sum;
}

ReconnectSummary run_reconnect(const RunConfig& cfg, const KnotTable& table) {
  const KnotType knot = declared_knot(cfg, table);
  const std::string samples_path = cfg.require("samples");
  const std::string out_path = cfg.require("out");
  SurveyOptions opt;
  opt.events = cfg.get_u64("events", 1000);
  opt.seed = cfg.get_u64("seed", 1);
  try {
    opt.policy = parse_site_policy(cfg.get("policy", "uniform-pair"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  opt.identify.projection.directions = static_cast<int>(cfg.get_u64("directions", 3));
  opt.identify.homfly.max_crossings = static_cast<int>(cfg.get_u64("max_crossings", 40));
  opt.identify.resolve_aliases = cfg.get_bool("resolve_aliases", true);
  opt.identify.alias_directions = static_cast<int>(cfg.get_u64("alias_directions", 24));
  opt.identify.alias_max_crossings = cfg.get_u64("alias_max_crossings", 16);
  opt.stop_target = cfg.get("stop_target", "");
  opt.stop_after_hits = cfg.get_u64("stop_after_hits", 0);
  opt.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, cfg.get_u64("threads", 1)));
  if (!opt.stop_target.empty()) opt.stop_target = table.at(opt.stop_target).type.name();

  const auto ensemble = read_samples(samples_path);
  if (ensemble.empty()) throw std::invalid_argument("samples file '" + samples_path + "' holds no polygon");

  SurveyLog log;
  const auto records = reconnect_survey(ensemble, knot.name(), table, opt, &log);

  std::ostringstream csv, amb;
  write_transitions_header(csv);
  write_alias_header(amb);
  ReconnectSummary sum;
  for (const auto& r : records) {
    write_transition(csv, r);
    if (r.after_kind == IdKind::kAmbiguous || !r.candidates.empty()) write_alias_row(amb, r);
    ++sum.products[r.after];
  }
  sum.events = records.size();
  sum.ambiguous = log.ambiguous;
  sum.unknown = log.unknown;
  sum.skipped_conformations = log.skipped_conformations;
  sum.resolved = log.resolved;

  write_file_atomic(out_path, csv.str());
  const std::string amb_path = cfg.get("ambiguous_out", out_path + ".ambiguous.csv");
  write_file_atomic(amb_path, amb.str());

  nlohmann::json m;
  m["command"] = "reconnect";
  m["version"] = version_string();
  m["knot"] = knot.name();
  m["seed"] = opt.seed;
  m["policy"] = std::string(to_string(opt.policy));
  m["threads"] = opt.threads;
  m["events_requested"] = opt.events;
  m["events"] = sum.events;
  m["ambiguous"] = sum.ambiguous;
  m["unknown"] = sum.unknown;
  m["resolved_by_kauffman"] = sum.resolved;
  m["resolve_aliases"] = opt.identify.resolve_aliases;
  m["alias_directions"] = opt.identify.alias_directions;
  m["alias_max_crossings"] = opt.identify.alias_max_crossings;
  m["skipped_conformations"] = sum.skipped_conformations;
  m["conformations"] = ensemble.size();
  m["products"] = sum.products;
  m["samples"] = samples_path;
  m["output"] = out_path;
  m["ambiguous_output"] = amb_path;
  m["config"] = cfg.values();
  write_file_atomic(cfg.get("manifest", out_path + ".manifest.json"), m.dump(2) + "\n");
  return sum;
}

}  // namespace bandsurg
