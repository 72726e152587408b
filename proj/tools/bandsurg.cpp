// bandsurg command-line front end. Talks to the library through the C API only.

#include <cinttypes>
#include <cstdio>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bandsurg/bandsurg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int report(bs_status s) {
  if (s == BS_OK) return kExitOk;
  std::fprintf(stderr, "error: %s: %s\n", bs_status_name(s), bs_last_error());
  return s == BS_ERR_USAGE ? kExitUsage : kExitDomain;
}

struct Owned {
  char* p = nullptr;
  ~Owned() { bs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct TableHandle {
  bs_table* t = nullptr;
  ~TableHandle() { bs_table_free(t); }
};

struct ConfigHandle {
  bs_config* c = nullptr;
  ~ConfigHandle() { bs_config_free(c); }
};

// knot names in printed text, rewritten to another nomenclature when the chart covers them
std::string rename(const std::string& text, const std::string& nomenclature) {
  if (nomenclature == "table") return text;
  static const std::regex name_re(R"(\b\d+_\d+\*?)");
  std::string out;
  auto last = text.cbegin();
  for (std::sregex_iterator it(text.begin(), text.end(), name_re), end; it != end; ++it) {
    out.append(last, text.cbegin() + it->position());
    Owned conv;
    if (bs_convert_name(it->str().c_str(), nomenclature.c_str(), &conv.p) == BS_OK) out += conv.str();
    else out += it->str();
    last = text.cbegin() + it->position() + it->length();
  }
  out.append(last, text.cend());
  return out;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct RunFlags {
  std::string config;
  std::vector<std::string> sets;
  std::string seed;
};

int build_config(const RunFlags& f, const std::vector<std::pair<std::string, std::string>>& overrides,
                 ConfigHandle& cfg) {
  if (int rc = report(bs_config_load(f.config.empty() ? nullptr : f.config.c_str(), &cfg.c))) return rc;
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return kExitUsage;
    }
    if (int rc = report(bs_config_set(cfg.c, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()))) return rc;
  }
  for (const auto& [k, v] : overrides) {
    if (v.empty()) continue;
    if (int rc = report(bs_config_set(cfg.c, k.c_str(), v.c_str()))) return rc;
  }
  return kExitOk;
}

// randomized commands need a seed; without one a fresh seed is drawn and printed
int ensure_seed(ConfigHandle& cfg) {
  int present = 0;
  if (int rc = report(bs_config_has(cfg.c, "seed", &present))) return rc;
  if (present) return kExitOk;
  const std::uint64_t s = fresh_seed();
  std::fprintf(stderr, "seed: %" PRIu64 "\n", s);
  return report(bs_config_set(cfg.c, "seed", std::to_string(s).c_str()));
}

int load_table(const std::string& data_dir, TableHandle& table) {
  return report(bs_table_load(data_dir.empty() ? nullptr : data_dir.c_str(), &table.t));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band surgery on lattice knots: sampling, reconnection, identification, obstructions."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", bs_version());
  std::string data_dir;
  std::string nomenclature = "table";
  app.add_option("--data-dir", data_dir, "Knot data directory (default: bundled data or $BANDSURG_DATA_DIR)");
  app.add_option("--nomenclature", nomenclature, "Print knot names in this convention")
      ->check(CLI::IsMember({"table", "rolfsen", "knotplot"}));

  // validate
  auto* validate = app.add_subcommand("validate", "Check polygon files against the lattice invariants");
  std::string validate_path;
  validate->add_option("file", validate_path, "Polygon file")->required();

  // sample
  auto* sample = app.add_subcommand("sample", "Run the composite-chain BFACF sampler");
  RunFlags sf;
  std::string s_knot, s_out, s_steps, s_threads, s_start;
  sample->add_option("-c,--config", sf.config, "Key=value config file");
  sample->add_option("--set", sf.sets, "Override a config key (key=value)");
  sample->add_option("--seed", sf.seed, "Master seed");
  sample->add_option("--knot", s_knot, "Declared knot type");
  sample->add_option("--seed-conformation", s_start, "Starting polygon file");
  sample->add_option("--out", s_out, "Samples output file");
  sample->add_option("--steps", s_steps, "Steps per chain after burn-in");
  sample->add_option("--threads", s_threads, "Worker threads");

  // reconnect
  auto* reconnect = app.add_subcommand("reconnect", "Apply non-coherent band moves to sampled conformations");
  RunFlags rf;
  std::string r_knot, r_samples, r_out, r_events, r_policy, r_threads;
  reconnect->add_option("-c,--config", rf.config, "Key=value config file");
  reconnect->add_option("--set", rf.sets, "Override a config key (key=value)");
  reconnect->add_option("--seed", rf.seed, "Master seed");
  reconnect->add_option("--knot", r_knot, "Knot type of the sampled ensemble");
  reconnect->add_option("--samples", r_samples, "Samples file from 'sample'");
  reconnect->add_option("--out", r_out, "Transitions CSV");
  reconnect->add_option("--events", r_events, "Number of reconnection events");
  reconnect->add_option("--policy", r_policy, "Site selection: uniform-pair | conformation-first");
  reconnect->add_option("--threads", r_threads, "Identification workers");

  // identify
  auto* identify = app.add_subcommand("identify", "Identify the knot type of polygons or a PD code");
  std::string id_path, id_pd;
  std::uint64_t id_seed = 1;
  auto* id_file_opt = identify->add_option("file", id_path, "Polygon file");
  auto* id_pd_opt = identify->add_option("--pd", id_pd, "Planar diagram code");
  identify->add_option("--seed", id_seed, "Projection seed")->capture_default_str();
  id_file_opt->excludes(id_pd_opt);

  // obstruct
  auto* obstruct = app.add_subcommand("obstruct", "Signature/determinant band obstruction");
  std::vector<std::string> ob_knots;
  bool ob_table = false, ob_csv = false;
  obstruct->add_option("knots", ob_knots, "Two knot names")->expected(0, 2);
  obstruct->add_flag("--table", ob_table, "Classify every same-determinant pair of the table");
  obstruct->add_flag("--csv", ob_csv, "CSV output for --table");

  // lens-d
  auto* lens = app.add_subcommand("lens-d", "Heegaard Floer d-invariants of lens spaces");
  std::vector<std::int64_t> lens_args;
  bool lens_self = false;
  std::int64_t lens_cosmetic = 0;
  lens->add_option("pqi", lens_args, "p q [i]")->expected(0, 3);
  lens->add_flag("--self-conjugate", lens_self, "Only the self-conjugate labels");
  lens->add_option("--cosmetic", lens_cosmetic, "Whether L(m,1) can be -L(m,1) via a chirally cosmetic banding");

  // stats
  auto* stats = app.add_subcommand("stats", "Transition probabilities with confidence intervals");
  std::string st_path, st_targets;
  std::size_t st_blocks = 100;
  bool st_csv = false;
  stats->add_option("file", st_path, "Transitions CSV")->required();
  stats->add_option("--blocks", st_blocks, "Number of contiguous blocks")->capture_default_str();
  stats->add_option("--targets", st_targets, "Comma-separated target knots (default: mirror + observed products)");
  stats->add_flag("--csv", st_csv, "CSV instead of the text table");

  // table
  auto* table_cmd = app.add_subcommand("table", "Show or rebuild the knot table");
  std::string tb_build;
  table_cmd->add_option("--build", tb_build, "Recompute HOMFLY data and write knot_table.csv here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (validate->parsed()) {
    Owned text;
    std::size_t bad = 0;
    if (int rc = report(bs_validate_file(validate_path.c_str(), &text.p, &bad))) return rc;
    std::fputs(text.str().c_str(), stdout);
    return bad == 0 ? kExitOk : kExitDomain;
  }

  if (sample->parsed() || reconnect->parsed()) {
    const bool is_sample = sample->parsed();
    const RunFlags& f = is_sample ? sf : rf;
    ConfigHandle cfg;
    std::vector<std::pair<std::string, std::string>> ov;
    if (is_sample) {
      ov = {{"knot", s_knot}, {"out", s_out}, {"steps", s_steps}, {"threads", s_threads},
            {"seed_conformation", s_start}, {"seed", f.seed}};
    } else {
      ov = {{"knot", r_knot}, {"samples", r_samples}, {"out", r_out}, {"events", r_events},
            {"policy", r_policy}, {"threads", r_threads}, {"seed", f.seed}};
    }
    if (!data_dir.empty()) ov.emplace_back("data_dir", data_dir);
    if (int rc = build_config(f, ov, cfg)) return rc;
    if (int rc = ensure_seed(cfg)) return rc;
    TableHandle table;
    if (int rc = load_table(data_dir, table)) return rc;
    Owned summary;
    const bs_status s = is_sample ? bs_sample(cfg.c, table.t, &summary.p) : bs_reconnect(cfg.c, table.t, &summary.p);
    if (int rc = report(s)) return rc;
    std::fputs(rename(summary.str(), nomenclature).c_str(), stdout);
    return kExitOk;
  }

  if (identify->parsed()) {
    if (id_path.empty() == id_pd.empty()) {
      std::fprintf(stderr, "error: give a polygon file or --pd\n");
      return kExitUsage;
    }
    TableHandle table;
    if (int rc = load_table(data_dir, table)) return rc;
    if (!id_pd.empty()) {
      Owned label, poly;
      if (int rc = report(bs_identify_pd(id_pd.c_str(), table.t, &label.p, &poly.p))) return rc;
      std::printf("%s\t%s\n", rename(label.str(), nomenclature).c_str(), poly.str().c_str());
      return kExitOk;
    }
    bs_polygons* polys = nullptr;
    if (int rc = report(bs_polygons_read(id_path.c_str(), &polys))) return rc;
    int rc = kExitOk;
    for (std::size_t k = 0; k < bs_polygons_count(polys); ++k) {
      Owned label;
      if ((rc = report(bs_polygon_identify(polys, k, table.t, id_seed, &label.p)))) break;
      std::printf("%zu\t%zu\t%s\n", k, bs_polygon_length(polys, k), rename(label.str(), nomenclature).c_str());
    }
    bs_polygons_free(polys);
    return rc;
  }

  if (obstruct->parsed()) {
    TableHandle table;
    if (int rc = load_table(data_dir, table)) return rc;
    if (ob_table) {
      Owned text;
      if (int rc = report(bs_obstruct_table(table.t, ob_csv ? 1 : 0, &text.p))) return rc;
      std::fputs(rename(text.str(), nomenclature).c_str(), stdout);
      return kExitOk;
    }
    if (ob_knots.size() != 2) {
      std::fprintf(stderr, "error: obstruct needs two knot names or --table\n");
      return kExitUsage;
    }
    int verdict = 0;
    Owned reason;
    if (int rc = report(bs_obstruct(table.t, ob_knots[0].c_str(), ob_knots[1].c_str(), &verdict, &reason.p))) {
      return rc;
    }
    static const char* names[] = {"Excluded", "NotExcluded", "Inapplicable"};
    std::printf("%s: %s\n", names[verdict], rename(reason.str(), nomenclature).c_str());
    return kExitOk;
  }

  if (lens->parsed()) {
    if (lens->count("--cosmetic")) {
      int yes = 0;
      if (int rc = report(bs_chirally_cosmetic(lens_cosmetic, &yes))) return rc;
      std::printf("%s\n", yes ? "possible" : "obstructed");
      return kExitOk;
    }
    if (lens_args.size() < 2) {
      std::fprintf(stderr, "error: lens-d needs p and q\n");
      return kExitUsage;
    }
    const std::int64_t p = lens_args[0], q = lens_args[1];
    auto print_one = [&](std::int64_t i) {
      std::int64_t num = 0, den = 1;
      if (int rc = report(bs_lens_d(p, q, i, &num, &den))) return rc;
      if (den == 1) std::printf("%" PRId64 "\n", num);
      else std::printf("%" PRId64 "/%" PRId64 "\n", num, den);
      return kExitOk;
    };
    if (lens_self) {
      Owned text;
      if (int rc = report(bs_lens_self_conjugate(p, q, &text.p))) return rc;
      std::fputs(text.str().c_str(), stdout);
      return kExitOk;
    }
    if (lens_args.size() == 3) return print_one(lens_args[2]);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(p, 1); ++i) {
      if (int rc = print_one(i)) return rc;
    }
    return kExitOk;
  }

  if (stats->parsed()) {
    TableHandle table;
    if (int rc = load_table(data_dir, table)) return rc;
    Owned text;
    if (int rc = report(bs_stats(st_path.c_str(), table.t, st_blocks, st_targets.empty() ? nullptr : st_targets.c_str(),
                                 st_csv ? 1 : 0, &text.p))) {
      return rc;
    }
    std::fputs(rename(text.str(), nomenclature).c_str(), stdout);
    return kExitOk;
  }

  if (table_cmd->parsed()) {
    if (!tb_build.empty()) {
      if (int rc = report(bs_table_build(data_dir.empty() ? nullptr : data_dir.c_str(), tb_build.c_str()))) return rc;
      std::printf("wrote %s\n", tb_build.c_str());
      return kExitOk;
    }
    TableHandle table;
    if (int rc = load_table(data_dir, table)) return rc;
    Owned text;
    if (int rc = report(bs_table_dump(table.t, &text.p))) return rc;
    std::fputs(rename(text.str(), nomenclature).c_str(), stdout);
    return kExitOk;
  }
  return kExitUsage;
}
