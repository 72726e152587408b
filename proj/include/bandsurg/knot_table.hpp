#pragma once

// Knot types, the bundled knot table and HOMFLY-based identification.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bandsurg/diagram.hpp"
#include "bandsurg/homfly.hpp"
#include "bandsurg/laurent.hpp"
#include "bandsurg/lattice.hpp"

namespace bandsurg {

/// Knot name in the table's convention ("8_20"), mirror flagged by '*'.
struct KnotType {
  std::string base;
  bool mirror = false;

  std::string name() const { return mirror ? base + "*" : base; }
  int crossing_number() const;
  bool is_unknot() const { return base == "0_1"; }

  /// Accepts "3_1", "3_1*", "unknot". Throws std::invalid_argument.
  static KnotType parse(std::string_view text);
  friend bool operator==(const KnotType&, const KnotType&) = default;
  friend auto operator<=>(const KnotType&, const KnotType&) = default;
};

struct KnotRecord {
  KnotType type;
  int crossing_number = 0;
  bool chiral = false;
  std::int64_t det = 1;
  int signature = 0;
  bool qa = true;
  LaurentPoly2 homfly{1};
  std::string pd;  // empty when not bundled
};

enum class IdKind { kIdentified, kAmbiguous, kUnknown };

struct Identification {
  IdKind kind = IdKind::kUnknown;
  std::vector<KnotType> types;  // one for kIdentified, several for kAmbiguous
  LaurentPoly2 homfly;
  std::string note;  // e.g. why the result is unknown
  /// HOMFLY matches that the Kauffman polynomial narrowed down to `types`.
  std::vector<KnotType> candidates;

  /// "3_1", "ambiguous(5_1|10_132*)" or "unknown".
  std::string label() const;
};

std::string_view to_string(IdKind kind);

class KnotTable {
 public:
  KnotTable() = default;
  explicit KnotTable(std::vector<KnotRecord> records);

  /// Reads knot_table.csv (and knots_pd.txt when present) from `dir`.
  static KnotTable load(const std::string& dir);
  /// Builds records from knots_pd.txt and knot_invariants.csv, computing HOMFLY.
  static KnotTable build(const std::string& dir);

  const std::vector<KnotRecord>& records() const { return records_; }
  const KnotRecord* find(const KnotType& t) const;
  const KnotRecord* find(std::string_view name) const;
  /// Throws std::invalid_argument listing valid names.
  const KnotRecord& at(std::string_view name) const;

  Identification identify(const LaurentPoly2& p) const;
  /// Kauffman polynomial of a record's bundled diagram (cached). Throws when
  /// the record has no diagram.
  LaurentPoly2 kauffman_of(const KnotRecord& rec) const;

  void write_csv(std::ostream& out) const;
  std::vector<std::string> names() const;

 private:
  std::vector<KnotRecord> records_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::unordered_map<LaurentPoly2, std::vector<std::size_t>, LaurentHash> by_poly_;
  struct KauffmanCache {
    std::mutex lock;
    std::map<std::string, LaurentPoly2> values;
  };
  std::shared_ptr<KauffmanCache> kauffman_cache_ = std::make_shared<KauffmanCache>();
};

/// Names of knots whose reference data ships with the table, besides the unknot.
bool is_reserve_alias(const KnotType& t);

struct IdentifyOptions {
  ProjectionOptions projection{1, 64, 3, true};
  HomflyOptions homfly{};
  /// Settle HOMFLY ties (5_1/10_132, 8_8/10_129) with the Kauffman polynomial.
  bool resolve_aliases = true;
  /// Directions tried for a smaller diagram before settling a tie.
  int alias_directions = 24;
  /// Kauffman is only evaluated on diagrams up to this size; larger ties stay ambiguous.
  std::size_t alias_max_crossings = 16;
};

/// Drops candidates whose crossing number exceeds the diagram's crossing
/// count, then keeps those whose Kauffman polynomial matches the diagram's.
/// Unchanged when the tie persists or the budget is exceeded.
Identification resolve_aliases(const KnotTable& table, const KnotDiagram& d, Identification id,
                               const HomflyOptions& opt = {});

/// Project, simplify, compute HOMFLY and look up. Budget overruns yield kUnknown.
Identification identify_polygon(const KnotTable& table, const LatticePolygon& poly,
                                const IdentifyOptions& opt = {});

/// Default data directory (compile-time, overridable with BANDSURG_DATA_DIR).
std::string default_data_dir();

enum class Nomenclature { kTable, kRolfsen, kKnotPlot };

/// Converts a name in the table convention to another column of the
/// conversion chart. Throws std::invalid_argument for knots outside the chart.
std::string convert_name(const KnotType& t, Nomenclature to);
Nomenclature parse_nomenclature(std::string_view s);

}  // namespace bandsurg
