#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bandsurg/pipeline.hpp"
#include "bandsurg/stats.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace bandsurg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bandsurg_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig sample_config(const fs::path& dir, const std::string& knot, std::uint64_t seed) {
  RunConfig c;
  c.set("knot", knot);
  c.set("seed", std::to_string(seed));
  c.set("steps", "3000");
  c.set("sample_interval", "500");
  c.set("z_ladder", "0.15, 0.18, 0.2");
  c.set("out", (dir / "samples.txt").string());
  c.set("data_dir", testing::data_dir());
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = RunConfig::parse("# comment\nknot = 3_1   # trailing\nsteps=10\n; other\n[chain]\nz = 0.1\n");
  CHECK(c.get("knot", "") == "3_1");
  CHECK(c.get_u64("steps", 0) == 10);
  CHECK(c.get_double("chain.z", 0) == doctest::Approx(0.1));
  CHECK(c.get_u64("missing", 7) == 7);
  CHECK_THROWS_AS(c.require("missing"), UsageError);
  RunConfig d;
  d.set("n", "-3");
  CHECK_THROWS_AS(d.get_u64("n", 0), UsageError);
  d.set("b", "maybe");
  CHECK_THROWS_AS(d.get_bool("b", false), UsageError);
  d.set("l", "0.1 0.2,0.3");
  CHECK(d.get_list("l") == std::vector<double>{0.1, 0.2, 0.3});
  d.set("l", "0.1 x");
  CHECK_THROWS_AS(d.get_list("l"), UsageError);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/config.ini"), UsageError);
}

TEST_CASE("atomic write leaves no temporary behind") {
  const auto dir = scratch("atomic");
  const auto path = dir / "sub" / "out.txt";
  write_file_atomic(path.string(), "hello\n");
  CHECK(slurp(path) == "hello\n");
  write_file_atomic(path.string(), "again\n");
  CHECK(slurp(path) == "again\n");
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("sample files round trip with chain annotations") {
  std::vector<EnsembleSample> s = {{0, 100, testing::unit_square()}, {3, 200, testing::rectangle_2x1()}};
  const auto dir = scratch("roundtrip");
  write_file_atomic((dir / "s.txt").string(), format_samples(s));
  const auto back = read_samples((dir / "s.txt").string());
  REQUIRE(back.size() == 2);
  CHECK(back[1].chain == 3);
  CHECK(back[1].step == 200);
  CHECK(back[1].polygon.same_sequence(testing::rectangle_2x1()));
}

TEST_CASE("unknot sampling run") {
  const auto dir = scratch("unknot");
  auto cfg = sample_config(dir, "0_1", 5);
  cfg.set("verify_samples", "true");
  const auto sum = run_sample(cfg, testing::table());
  CHECK(sum.samples == 18);
  CHECK(sum.mismatched == 0);
  const auto samples = read_samples((dir / "samples.txt").string());
  CHECK(samples.size() == 18);
  for (const auto& s : samples) CHECK(identify_polygon(testing::table(), s.polygon).label() == "0_1");
  const auto manifest = nlohmann::json::parse(slurp(dir / "samples.txt.manifest.json"));
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["knot"] == "0_1");
  CHECK(manifest["z_ladder"].size() == 3);
}

TEST_CASE("sampling is byte-identical for a fixed seed") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  run_sample(sample_config(a, "3_1", 77), testing::table());
  run_sample(sample_config(b, "3_1", 77), testing::table());
  CHECK(slurp(a / "samples.txt") == slurp(b / "samples.txt"));
  const auto c = scratch("det_c");
  run_sample(sample_config(c, "3_1", 78), testing::table());
  CHECK(slurp(a / "samples.txt") != slurp(c / "samples.txt"));
}

TEST_CASE("declared knot must match the seed conformation") {
  const auto dir = scratch("mismatch");
  const LatticePolygon sq = testing::unit_square();
  write_polygon_file((dir / "start.txt").string(), std::span<const LatticePolygon>(&sq, 1));
  auto cfg = sample_config(dir, "3_1", 1);
  cfg.set("seed_conformation", (dir / "start.txt").string());
  try {
    run_sample(cfg, testing::table());
    FAIL("expected a mismatch");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("knot mismatch") != std::string::npos);
  }
  cfg.set("knot", "0_1");
  CHECK_NOTHROW(run_sample(cfg, testing::table()));
}

TEST_CASE("sampler config errors") {
  const auto dir = scratch("errors");
  auto cfg = sample_config(dir, "3_1", 1);
  cfg.set("z_ladder", "0.1 0.3");
  CHECK_THROWS_AS(run_sample(cfg, testing::table()), std::invalid_argument);
  auto no_out = sample_config(dir, "3_1", 1);
  no_out.set("out", "");
  CHECK_THROWS_AS(run_sample(no_out, testing::table()), UsageError);
  auto bad_knot = sample_config(dir, "9_99", 1);
  CHECK_THROWS_AS(run_sample(bad_knot, testing::table()), std::invalid_argument);
}

TEST_CASE("reconnection run writes CSV, alias log and manifest") {
  const auto dir = scratch("reconnect");
  auto scfg = sample_config(dir, "0_1", 3);
  // most unknot samples are too short to carry a site; take many
  scfg.set("z_ladder", "0.21 0.2125");
  scfg.set("steps", "200000");
  scfg.set("sample_interval", "100");
  run_sample(scfg, testing::table());
  RunConfig r;
  r.set("knot", "0_1");
  r.set("samples", (dir / "samples.txt").string());
  r.set("out", (dir / "t.csv").string());
  r.set("events", "0");
  const auto empty = run_reconnect(r, testing::table());
  CHECK(empty.events == 0);
  std::istringstream head(slurp(dir / "t.csv"));
  std::string line;
  CHECK(std::getline(head, line));
  CHECK(line.rfind("event,before_knot,after_knot", 0) == 0);
  CHECK_FALSE(std::getline(head, line));

  r.set("events", "200");
  r.set("seed", "4");
  const auto sum = run_reconnect(r, testing::table());
  CHECK(sum.events == 200);
  std::istringstream csv(slurp(dir / "t.csv"));
  const auto recs = read_transitions(csv);
  REQUIRE(recs.size() == 200);
  for (const auto& x : recs) CHECK(x.before == "0_1");
  CHECK(fs::exists(dir / "t.csv.ambiguous.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "t.csv.manifest.json"));
  CHECK(manifest["events"] == 200);
  CHECK(manifest["seed"] == 4);

  RunConfig missing = r;
  missing.set("samples", (dir / "nope.txt").string());
  CHECK_THROWS(run_reconnect(missing, testing::table()));
  RunConfig policy = r;
  policy.set("policy", "whatever");
  CHECK_THROWS_AS(run_reconnect(policy, testing::table()), UsageError);
}
