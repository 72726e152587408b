#pragma once

// BFACF sampler for lattice polygons of fixed knot type, plus composite
// Markov chains (replica exchange across a fugacity ladder).

#include <cstddef>
#include <cstdint>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "bandsurg/lattice.hpp"
#include "bandsurg/rng.hpp"

namespace bandsurg {

inline constexpr double kCriticalFugacity = 0.2135;

struct FugacityParams {
  double z = 0.18;
  double q = 1.0;
  /// Proposals that would exceed this length are rejected; 0 = no cap.
  std::size_t max_length = 0;
};

/// Throws std::invalid_argument unless q == 1 and 0 < z < kCriticalFugacity.
void check_params(const FugacityParams& params);

enum class MoveKind { kRejected, kShrink, kSlide, kGrow };

class Chain {
 public:
  Chain(const LatticePolygon& start, FugacityParams params, std::uint64_t seed);

  /// One BFACF proposal: pick an edge and a perpendicular unit direction,
  /// translate the edge, accept with the Metropolis ratio for weight z^n.
  MoveKind step();

  LatticePolygon polygon() const { return LatticePolygon::adopt_unchecked(verts_); }
  const std::vector<Vec3>& vertices() const { return verts_; }
  std::size_t length() const { return verts_.size(); }
  const FugacityParams& params() const { return params_; }
  std::uint64_t step_count() const { return steps_; }
  std::uint64_t seed() const { return seed_; }
  const Rng& rng() const { return rng_; }

  /// Exchange conformations with another chain (CMC swap).
  void swap_state(Chain& other);
  /// Full self-avoidance / closure check of the current state.
  bool consistent() const;

 private:
  void rebuild_occupancy();

  std::vector<Vec3> verts_;
  absl::flat_hash_set<std::uint64_t> occupied_;
  FugacityParams params_;
  Rng rng_;
  std::uint64_t seed_;
  std::uint64_t steps_ = 0;
};

/// Probability of accepting a +2 move from length n.
double grow_acceptance(double z, std::size_t n);

/// Advance n_steps; after every sample_interval-th step the polygon is recorded.
/// Throws std::invalid_argument when sample_interval == 0.
std::vector<LatticePolygon> run_chain(Chain& chain, std::uint64_t n_steps,
                                      std::uint64_t sample_interval);

/// min(1, (z_lo / z_hi)^(n_hi - n_lo)) for chains at z_lo < z_hi holding lengths n_lo, n_hi.
double swap_acceptance(double z_lo, double z_hi, std::size_t n_lo, std::size_t n_hi);

struct ExchangeRecord {
  std::uint64_t step = 0;
  std::size_t pair = 0;  // chains (pair, pair + 1)
  bool accepted = false;
};

struct EnsembleSample {
  std::size_t chain = 0;
  std::uint64_t step = 0;
  LatticePolygon polygon;
};

/// Geometric ladder of `count` values spanning [lo, hi].
std::vector<double> geometric_ladder(double lo, double hi, std::size_t count);
std::vector<double> default_ladder();

class Ensemble {
 public:
  /// Chains get seeds stream_seed(seed, k); exchanges use stream_seed(seed, count).
  Ensemble(const LatticePolygon& start, const std::vector<double>& z_ladder, std::uint64_t seed,
           std::size_t max_length = 0);

  std::size_t size() const { return chains_.size(); }
  const Chain& chain(std::size_t k) const { return chains_[k]; }
  Chain& chain(std::size_t k) { return chains_[k]; }
  const std::vector<ExchangeRecord>& exchange_log() const { return log_; }
  std::uint64_t step_count() const { return steps_; }

  /// One swap attempt between a uniformly chosen adjacent pair.
  ExchangeRecord exchange();

  /// Runs every chain n_steps, attempting an exchange after each block of
  /// exchange_interval steps (0 = never). Samples every chain each
  /// sample_interval steps. threads > 1 runs chains concurrently; output is
  /// identical for any thread count.
  std::vector<EnsembleSample> run(std::uint64_t n_steps, std::uint64_t sample_interval,
                                  std::uint64_t exchange_interval, unsigned threads = 1);

 private:
  std::vector<Chain> chains_;
  std::vector<ExchangeRecord> log_;
  Rng rng_;
  std::uint64_t steps_ = 0;
};

}  // namespace bandsurg
