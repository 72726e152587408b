#include "bandsurg/bandsurg.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bandsurg/diagram.hpp"
#include "bandsurg/homfly.hpp"
#include "bandsurg/invariants.hpp"
#include "bandsurg/knot_table.hpp"
#include "bandsurg/pipeline.hpp"
#include "bandsurg/stats.hpp"

struct bs_table {
  bandsurg::KnotTable table;
};

struct bs_config {
  bandsurg::RunConfig cfg;
};

struct bs_polygons {
  std::vector<bandsurg::LatticePolygon> polys;
};

namespace {

thread_local std::string g_last_error;

bs_status fail(bs_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F>
bs_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const bandsurg::UsageError& e) {
    return fail(BS_ERR_USAGE, e.what());
  } catch (const bandsurg::ParseError& e) {
    return fail(BS_ERR_PARSE, e.what());
  } catch (const bandsurg::DiagramError& e) {
    return fail(BS_ERR_PARSE, e.what());
  } catch (const std::domain_error& e) {
    return fail(BS_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(BS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(BS_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(BS_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(BS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BS_ERR_INTERNAL, "unknown error");
  }
}

#define BS_REQUIRE(cond, what) \
  if (!(cond)) return fail(BS_ERR_INVALID_ARGUMENT, what)

std::string dir_or_default(const char* data_dir) {
  return data_dir && *data_dir ? std::string(data_dir) : bandsurg::default_data_dir();
}

}  // namespace

extern "C" {

const char* bs_version(void) {
  static const std::string v = bandsurg::version_string();
  return v.c_str();
}

const char* bs_last_error(void) { return g_last_error.c_str(); }

const char* bs_status_name(bs_status s) {
  switch (s) {
    case BS_OK: return "ok";
    case BS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BS_ERR_USAGE: return "usage error";
    case BS_ERR_IO: return "i/o error";
    case BS_ERR_PARSE: return "parse error";
    case BS_ERR_DOMAIN: return "domain error";
    case BS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void bs_string_free(char* s) { std::free(s); }

bs_status bs_table_load(const char* data_dir, bs_table** out) {
  BS_REQUIRE(out, "null output handle");
  *out = nullptr;
  return guarded([&] {
    *out = new bs_table{bandsurg::KnotTable::load(dir_or_default(data_dir))};
    return BS_OK;
  });
}

void bs_table_free(bs_table* t) { delete t; }

size_t bs_table_size(const bs_table* t) { return t ? t->table.records().size() : 0; }

bs_status bs_table_build(const char* data_dir, const char* out_path) {
  BS_REQUIRE(out_path, "null output path");
  return guarded([&] {
    const auto table = bandsurg::KnotTable::build(dir_or_default(data_dir));
    std::ostringstream csv;
    table.write_csv(csv);
    bandsurg::write_file_atomic(out_path, csv.str());
    return BS_OK;
  });
}

bs_status bs_table_dump(const bs_table* t, char** out) {
  BS_REQUIRE(t && out, "null argument");
  return guarded([&] {
    std::ostringstream os;
    for (const auto& r : t->table.records()) {
      os << r.type.name() << ' ' << r.crossing_number << ' ' << r.det << ' ' << r.signature << ' '
         << (r.chiral ? "chiral" : "achiral") << ' ' << (r.qa ? "qa" : "non-qa") << ' ' << r.homfly.pretty() << '\n';
    }
    *out = dup(os.str());
    return BS_OK;
  });
}

bs_status bs_convert_name(const char* name, const char* nomenclature, char** out) {
  BS_REQUIRE(name && nomenclature && out, "null argument");
  return guarded([&] {
    const auto to = bandsurg::parse_nomenclature(nomenclature);
    *out = dup(bandsurg::convert_name(bandsurg::KnotType::parse(name), to));
    return BS_OK;
  });
}

bs_status bs_config_load(const char* path, bs_config** out) {
  BS_REQUIRE(out, "null output handle");
  *out = nullptr;
  return guarded([&] {
    *out = new bs_config{path && *path ? bandsurg::RunConfig::load(path) : bandsurg::RunConfig{}};
    return BS_OK;
  });
}

bs_status bs_config_set(bs_config* c, const char* key, const char* value) {
  BS_REQUIRE(c && key && value, "null argument");
  return guarded([&] {
    c->cfg.set(key, value);
    return BS_OK;
  });
}

bs_status bs_config_has(const bs_config* c, const char* key, int* present) {
  BS_REQUIRE(c && key && present, "null argument");
  *present = c->cfg.has(key) ? 1 : 0;
  return BS_OK;
}

void bs_config_free(bs_config* c) { delete c; }

bs_status bs_sample(const bs_config* c, const bs_table* t, char** summary) {
  BS_REQUIRE(c && t, "null argument");
  return guarded([&] {
    const auto s = bandsurg::run_sample(c->cfg, t->table);
    if (summary) {
      std::ostringstream os;
      os << "samples " << s.samples << "\nlength_range " << s.min_length << ' ' << s.max_length << "\nexchanges "
         << s.accepted_exchanges << '/' << s.exchanges << "\nseed " << s.seed << '\n';
      if (c->cfg.get_bool("verify_samples", false)) os << "mismatched " << s.mismatched << '\n';
      *summary = dup(os.str());
    }
    return BS_OK;
  });
}

bs_status bs_reconnect(const bs_config* c, const bs_table* t, char** summary) {
  BS_REQUIRE(c && t, "null argument");
  return guarded([&] {
    const auto s = bandsurg::run_reconnect(c->cfg, t->table);
    if (summary) {
      std::ostringstream os;
      os << "events " << s.events << "\nambiguous " << s.ambiguous << "\nunknown " << s.unknown
         << "\nresolved " << s.resolved << "\nskipped_conformations " << s.skipped_conformations << '\n';
      for (const auto& [name, n] : s.products) os << "product " << name << ' ' << n << '\n';
      *summary = dup(os.str());
    }
    return BS_OK;
  });
}

bs_status bs_polygons_read(const char* path, bs_polygons** out) {
  BS_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new bs_polygons{bandsurg::read_polygon_file(path)};
    return BS_OK;
  });
}

void bs_polygons_free(bs_polygons* p) { delete p; }

size_t bs_polygons_count(const bs_polygons* p) { return p ? p->polys.size() : 0; }

size_t bs_polygon_length(const bs_polygons* p, size_t k) {
  return p && k < p->polys.size() ? p->polys[k].length() : 0;
}

bs_status bs_polygon_identify(const bs_polygons* p, size_t k, const bs_table* t, uint64_t seed, char** label) {
  BS_REQUIRE(p && t && label, "null argument");
  BS_REQUIRE(k < p->polys.size(), "polygon index out of range");
  return guarded([&] {
    bandsurg::IdentifyOptions opt;
    opt.projection.seed = seed;
    *label = dup(bandsurg::identify_polygon(t->table, p->polys[k], opt).label());
    return BS_OK;
  });
}

bs_status bs_validate_file(const char* path, char** report, size_t* n_invalid) {
  BS_REQUIRE(path && report && n_invalid, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open '") + path + "'");
    std::vector<std::vector<bandsurg::Vec3>> polys(1);
    std::vector<std::size_t> first_line(1, 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] == '#') continue;
      if (line.find_first_not_of(" \t") == std::string::npos) {
        if (!polys.back().empty()) {
          polys.emplace_back();
          first_line.push_back(0);
        }
        continue;
      }
      std::istringstream ls(line);
      long x = 0, y = 0, z = 0;
      std::string extra;
      if (!(ls >> x >> y >> z) || (ls >> extra)) throw bandsurg::ParseError(line_no, "expected three integers");
      if (polys.back().empty()) first_line.back() = line_no;
      polys.back().push_back(bandsurg::make_vec(static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)));
    }
    if (polys.back().empty()) {
      polys.pop_back();
      first_line.pop_back();
    }
    std::ostringstream os;
    std::size_t bad = 0;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      const auto rep = bandsurg::validate(polys[k]);
      os << "polygon " << k << " (line " << first_line[k] << ", " << polys[k].size() << " vertices): "
         << (rep.valid ? "valid" : "INVALID") << '\n';
      for (const auto& v : rep.violations) {
        os << "  " << bandsurg::to_string(v.rule) << " at vertex " << v.vertex << '\n';
      }
      bad += rep.valid ? 0 : 1;
    }
    *n_invalid = bad;
    *report = dup(os.str());
    return BS_OK;
  });
}

bs_status bs_identify_pd(const char* pd, const bs_table* t, char** label, char** homfly) {
  BS_REQUIRE(pd && t && label, "null argument");
  return guarded([&] {
    const auto d = bandsurg::parse_pd(pd);
    const auto poly = bandsurg::homfly(d);
    const auto id = t->table.identify(poly);
    *label = dup(id.label());
    if (homfly) *homfly = dup(poly.pretty());
    return BS_OK;
  });
}

bs_status bs_obstruct(const bs_table* t, const char* a, const char* b, int* verdict, char** reason) {
  BS_REQUIRE(t && a && b && verdict, "null argument");
  return guarded([&] {
    const auto v = bandsurg::band_obstruction(t->table.at(a), t->table.at(b));
    *verdict = v.status == bandsurg::Verdict::kExcluded ? 0 : v.status == bandsurg::Verdict::kNotExcluded ? 1 : 2;
    if (reason) *reason = dup(v.reason);
    return BS_OK;
  });
}

bs_status bs_obstruct_table(const bs_table* t, int csv, char** out) {
  BS_REQUIRE(t && out, "null argument");
  return guarded([&] {
    if (!csv) {
      *out = dup(bandsurg::classification_matrix(t->table.records()));
      return BS_OK;
    }
    std::ostringstream os;
    os << "knot_a,knot_b,det,verdict,reason\n";
    for (const auto& p : bandsurg::table_classification(t->table.records())) {
      os << p.a << ',' << p.b << ',' << p.det << ',' << bandsurg::to_string(p.verdict.status) << ",\""
         << p.verdict.reason << "\"\n";
    }
    *out = dup(os.str());
    return BS_OK;
  });
}

bs_status bs_lens_d(int64_t p, int64_t q, int64_t i, int64_t* num, int64_t* den) {
  BS_REQUIRE(num && den, "null argument");
  return guarded([&] {
    const auto d = bandsurg::d_lens(p, q, i);
    *num = d.numerator();
    *den = d.denominator();
    return BS_OK;
  });
}

bs_status bs_lens_self_conjugate(int64_t p, int64_t q, char** out) {
  BS_REQUIRE(out, "null argument");
  return guarded([&] {
    std::ostringstream os;
    for (const auto i : bandsurg::self_conjugate_spins(p, q)) {
      os << i << ' ' << bandsurg::to_string(bandsurg::d_lens(p, q, i)) << '\n';
    }
    *out = dup(os.str());
    return BS_OK;
  });
}

bs_status bs_chirally_cosmetic(int64_t m, int* result) {
  BS_REQUIRE(result, "null argument");
  return guarded([&] {
    *result = bandsurg::chirally_cosmetic_lens(m) ? 1 : 0;
    return BS_OK;
  });
}

bs_status bs_stats(const char* transitions_path, const bs_table* t, size_t n_blocks, const char* targets, int csv,
                   char** out) {
  BS_REQUIRE(transitions_path && out, "null argument");
  return guarded([&] {
    std::ifstream in(transitions_path);
    if (!in) throw std::runtime_error(std::string("cannot open '") + transitions_path + "'");
    const auto records = bandsurg::read_transitions(in);
    std::vector<std::string> wanted;
    if (targets && *targets) {
      std::istringstream ts(targets);
      std::string name;
      while (std::getline(ts, name, ',')) {
        if (name.empty()) continue;
        wanted.push_back(t ? t->table.at(name).type.name() : bandsurg::KnotType::parse(name).name());
      }
    }
    bandsurg::TallyOptions opt;
    opt.n_blocks = n_blocks == 0 ? 100 : n_blocks;
    const auto rows = bandsurg::report(records, t ? &t->table : nullptr, wanted, opt);
    std::ostringstream os;
    if (csv) bandsurg::write_report_csv(os, rows);
    else bandsurg::write_report_text(os, rows);
    *out = dup(os.str());
    return BS_OK;
  });
}

}  // extern "C"
