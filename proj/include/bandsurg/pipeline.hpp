#pragma once

// Command-level workflows shared by the C API and the tests: configs,
// reference conformations, sampling and reconnection runs, manifests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bandsurg/bfacf.hpp"
#include "bandsurg/knot_table.hpp"
#include "bandsurg/reconnection.hpp"

namespace bandsurg {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key=value configuration; later set() calls override file values.
class RunConfig {
 public:
  /// Reads "key = value" lines; '#' and ';' start comments. Throws UsageError.
  static RunConfig load(const std::string& path);
  static RunConfig parse(const std::string& text);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  /// Throws UsageError when the key is missing.
  std::string require(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

/// Polygon file with "# chain=<k> step=<s>" annotations ahead of each polygon.
std::vector<SampledConformation> read_samples(const std::string& path);
std::string format_samples(const std::vector<EnsembleSample>& samples);

/// A small conformation of the requested knot type: a bundled file from
/// <data>/conformations when present, otherwise a braid-closure embedding
/// (reflected when needed so that it identifies as `type`).
LatticePolygon reference_conformation(const KnotTable& table, const std::string& data_dir, const KnotType& type);

struct SampleSummary {
  std::size_t samples = 0;
  std::size_t min_length = 0, max_length = 0;
  std::size_t exchanges = 0, accepted_exchanges = 0;
  std::size_t mismatched = 0;  // samples not identifying as the declared knot (when verified)
  std::uint64_t seed = 0;
};

/// Runs the sampler per config and writes the samples file and manifest.
/// Keys: knot, seed_conformation, z_ladder | z_min z_max chains, steps,
/// burn_in, sample_interval, exchange_interval, seed, threads, max_length,
/// out, manifest, verify_samples, data_dir.
SampleSummary run_sample(const RunConfig& cfg, const KnotTable& table);

struct ReconnectSummary {
  std::size_t events = 0;
  std::size_t ambiguous = 0;
  std::size_t unknown = 0;
  std::size_t skipped_conformations = 0;
  std::size_t resolved = 0;
  std::map<std::string, std::size_t> products;
};

/// Keys: samples, knot, events, seed, policy, out, ambiguous_out, manifest,
/// directions, stop_target, stop_after_hits, max_crossings, resolve_aliases,
/// alias_directions, alias_max_crossings, threads.
ReconnectSummary run_reconnect(const RunConfig& cfg, const KnotTable& table);

std::string version_string();

}  // namespace bandsurg
