#pragma once

// Lens-space correction terms and the signature obstruction to band moves
// between knots of equal determinant.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "bandsurg/knot_table.hpp"

namespace bandsurg {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// d(L(p,q), i) by the reciprocity recursion; p > q > 0 coprime or p = q = 1.
/// 0 <= i < p + q, reduced mod p. Throws std::invalid_argument otherwise.
Rational d_lens(std::int64_t p, std::int64_t q, std::int64_t i);

/// Self-conjugate Spin^c labels: integers among (p+q-1)/2 and (q-1)/2, mod p.
std::set<std::int64_t> self_conjugate_spins(std::int64_t p, std::int64_t q);

/// -signature/2 for knots covered by the delta/signature theorem (quasi-alternating
/// or at most nine crossings). Throws std::domain_error otherwise.
int delta_from_signature(const KnotRecord& rec);

/// Throws std::invalid_argument for m < 1.
bool is_square_free(std::int64_t m);

enum class Verdict { kExcluded, kNotExcluded, kInapplicable };
std::string_view to_string(Verdict v);

struct ObstructionVerdict {
  Verdict status = Verdict::kInapplicable;
  std::string reason;
};

ObstructionVerdict band_obstruction(const KnotRecord& a, const KnotRecord& b);

/// |sigma(a) - sigma(b)| == |det(a) - det(b)| (mod 4).
bool murasugi_congruence_check(const KnotRecord& a, const KnotRecord& b);

/// Whether L(m,1) can arise as -L(m,1) through a chirally cosmetic banding of T(2,m).
/// m must be odd and square-free.
bool chirally_cosmetic_lens(std::int64_t m);

struct PairVerdict {
  std::string a;
  std::string b;
  std::int64_t det = 0;
  ObstructionVerdict verdict;
};

/// Every unordered pair of distinct records sharing a determinant.
std::vector<PairVerdict> table_classification(const std::vector<KnotRecord>& records);

/// Text layout grouped by determinant: one block per determinant listing knots
/// by signature and then the excluded pairs.
std::string classification_matrix(const std::vector<KnotRecord>& records);

}  // namespace bandsurg
