#pragma once

// Transition probabilities with block-mean ratio-estimator confidence intervals.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bandsurg/reconnection.hpp"

namespace bandsurg {

struct BlockCount {
  std::uint64_t hits = 0;    // events landing on the target
  std::uint64_t events = 0;  // events counted in the denominator
};

struct ProbabilityEstimate {
  double p_hat = 0;
  std::optional<double> ci_low;  // absent when nothing was observed
  std::optional<double> ci_high;
  std::size_t n_blocks = 0;
  std::uint64_t observed = 0;
  std::uint64_t total = 0;
};

/// Splits a 0/1 stream into n contiguous blocks whose sizes differ by at most one.
/// `counted[i]` false drops event i from both numerator and denominator.
std::vector<BlockCount> make_blocks(const std::vector<char>& hit, const std::vector<char>& counted,
                                    std::size_t n_blocks);

/// Blocks for `hits` target events among `total`, spread evenly (synthetic tallies).
std::vector<BlockCount> uniform_blocks(std::uint64_t hits, std::uint64_t total, std::size_t n_blocks);

/// Ratio estimator R = sum(hits)/sum(events) with a 95% normal interval from
/// between-block scatter, clamped to [0, 1].
ProbabilityEstimate estimate_from_blocks(const std::vector<BlockCount>& blocks, double z_score = 1.959963984540054);

struct TallyOptions {
  std::size_t n_blocks = 100;
  double z_score = 1.959963984540054;
};

/// Estimate for one target over an ordered transition stream. Ambiguous
/// events are excluded; unknown products stay in the denominator.
/// Throws std::invalid_argument when there are no events or fewer events than blocks.
ProbabilityEstimate estimate_probability(const std::vector<TransitionRecord>& records, const std::string& target,
                                         const TallyOptions& opt = {});

struct ReportRow {
  std::string start;
  std::string target;
  ProbabilityEstimate estimate;
  std::uint64_t ambiguous = 0;
  std::uint64_t unknown = 0;
  std::optional<std::size_t> contributing_min, contributing_max;  // lengths of target events
  std::size_t length_min = 0, length_max = 0;                     // lengths over all events
};

/// One row per (start, target). With no explicit targets: the mirror of each
/// start knot plus every identified product.
std::vector<ReportRow> report(const std::vector<TransitionRecord>& records, const KnotTable* table,
                              const std::vector<std::string>& targets = {}, const TallyOptions& opt = {});

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_report_text(std::ostream& out, const std::vector<ReportRow>& rows);

/// Reads the reconnection CSV; throws ParseError naming the line.
std::vector<TransitionRecord> read_transitions(std::istream& in);

}  // namespace bandsurg
