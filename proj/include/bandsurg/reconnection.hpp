#pragma once

// Reconnection sites (two polygon edges on opposite sides of a free unit
// square) and non-coherent band surgery.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bandsurg/knot_table.hpp"
#include "bandsurg/lattice.hpp"
#include "bandsurg/rng.hpp"

namespace bandsurg {

struct ReconnectionSite {
  std::size_t edge_a = 0;  // edge_a < edge_b
  std::size_t edge_b = 0;
  /// Corners in cyclic order: tail(a), head(a), then the two ends of edge b.
  std::array<Vec3, 4> square{};
  bool parallel = false;

  Vec3 anchor() const;
  friend bool operator==(const ReconnectionSite&, const ReconnectionSite&) = default;
};

enum class BandKind { kCoherent, kNonCoherent };
std::string_view to_string(BandKind k);

struct BandMoveResult {
  LatticePolygon polygon_after;
  int components_after = 1;
  ReconnectionSite site;
};

std::vector<ReconnectionSite> find_sites(const LatticePolygon& poly);
/// Sites with parallel edges only.
std::vector<ReconnectionSite> find_noncoherent_sites(const LatticePolygon& poly);
std::size_t count_noncoherent_sites(const LatticePolygon& poly);

BandKind classify(const ReconnectionSite& site);

/// Edge multiset after exchanging the two site edges for the free square sides.
std::vector<UndirectedEdge> band_edge_set(const LatticePolygon& poly, const ReconnectionSite& site);

/// Throws std::invalid_argument for coherent or stale sites.
BandMoveResult apply_band(const LatticePolygon& poly, const ReconnectionSite& site);

enum class SitePolicy { kUniformPair, kConformationFirst };
SitePolicy parse_site_policy(std::string_view s);
std::string_view to_string(SitePolicy p);

struct SampledConformation {
  LatticePolygon polygon;
  std::uint64_t step = 0;
  std::size_t chain = 0;
};

struct TransitionRecord {
  std::size_t event = 0;  // position in the event stream
  std::string before;
  std::string after;      // knot name, ambiguous(...) or unknown
  IdKind after_kind = IdKind::kUnknown;
  std::size_t length = 0;
  Vec3 anchor;
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
  std::size_t conformation = 0;
  /// HOMFLY candidates ("8_8*|10_129") when the Kauffman polynomial settled a tie.
  std::string candidates;
};

struct SurveyOptions {
  std::uint64_t events = 0;
  std::uint64_t seed = 1;
  SitePolicy policy = SitePolicy::kUniformPair;
  IdentifyOptions identify{};
  /// Stop once this many events identify as `stop_target` (0 = run the full budget).
  std::uint64_t stop_after_hits = 0;
  std::string stop_target;
  /// Identification workers; records are the same for any count.
  unsigned threads = 1;
};

struct SurveyLog {
  std::size_t skipped_conformations = 0;  // no non-coherent site
  std::size_t ambiguous = 0;
  std::size_t unknown = 0;
  std::size_t resolved = 0;  // HOMFLY ties settled by the Kauffman polynomial
};

/// Draws `events` (conformation, site) pairs, applies the band and identifies
/// the product. Deterministic given the options.
std::vector<TransitionRecord> reconnect_survey(const std::vector<SampledConformation>& ensemble,
                                               const std::string& before, const KnotTable& table,
                                               const SurveyOptions& opt, SurveyLog* log = nullptr);

void write_transitions_header(std::ostream& out);
void write_transition(std::ostream& out, const TransitionRecord& r);
/// Log of events whose HOMFLY lookup was ambiguous: transition columns plus candidates.
void write_alias_header(std::ostream& out);
void write_alias_row(std::ostream& out, const TransitionRecord& r);

}  // namespace bandsurg
