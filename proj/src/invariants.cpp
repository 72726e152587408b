#include "bandsurg/invariants.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace bandsurg {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

void check_lens(std::int64_t p, std::int64_t q) {
  if (p == 1 && q == 1) return;
  if (!(p > q && q > 0)) throw std::invalid_argument("lens space needs p > q > 0");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("lens space needs gcd(p, q) = 1");
}

Rational d_rec(std::int64_t p, std::int64_t q, std::int64_t i) {
  if (p == 1) return Rational(0);
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Rational> cache;
  const auto key = std::make_tuple(p, q, i);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::int64_t t = 2 * i + 1 - p - q;
  Rational v = Rational(-1, 4) + Rational(t * t, 4 * p * q) - d_rec(q, p % q, i % q);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, v);
  return v;
}

}  // namespace

Rational d_lens(std::int64_t p, std::int64_t q, std::int64_t i) {
  check_lens(p, q);
  if (i < 0 || i >= p + q) throw std::invalid_argument("Spin^c index must satisfy 0 <= i < p + q");
  return d_rec(p, q, i % p);
}

std::set<std::int64_t> self_conjugate_spins(std::int64_t p, std::int64_t q) {
  check_lens(p, q);
  std::set<std::int64_t> out;
  if ((p + q - 1) % 2 == 0) out.insert(((p + q - 1) / 2) % p);
  if ((q - 1) % 2 == 0) out.insert(((q - 1) / 2) % p);
  return out;
}

int delta_from_signature(const KnotRecord& rec) {
  if (!rec.qa && rec.crossing_number > 9) {
    throw std::domain_error(rec.type.name() + " is neither quasi-alternating nor of crossing number <= 9");
  }
  return -rec.signature / 2;
}

bool is_square_free(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("is_square_free needs m >= 1");
  for (std::int64_t f = 2; f * f <= m; ++f) {
    if (m % f == 0) {
      m /= f;
      if (m % f == 0) return false;
    }
  }
  return true;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kExcluded: return "Excluded";
    case Verdict::kNotExcluded: return "NotExcluded";
    case Verdict::kInapplicable: return "Inapplicable";
  }
  return "Inapplicable";
}

ObstructionVerdict band_obstruction(const KnotRecord& a, const KnotRecord& b) {
  ObstructionVerdict v;
  const std::string an = a.type.name(), bn = b.type.name();
  if (!a.qa || !b.qa) {
    v.status = Verdict::kInapplicable;
    v.reason = (!a.qa ? an : bn) + " is not quasi-alternating";
    return v;
  }
  if (a.det != b.det) {
    v.status = Verdict::kInapplicable;
    v.reason = "determinants differ (" + std::to_string(a.det) + " vs " + std::to_string(b.det) + ")";
    return v;
  }
  if (!is_square_free(a.det)) {
    v.status = Verdict::kInapplicable;
    v.reason = "determinant " + std::to_string(a.det) + " is not square-free";
    return v;
  }
  const int diff = std::abs(a.signature - b.signature);
  if (diff != 0 && diff != 8) {
    v.status = Verdict::kExcluded;
    v.reason = "|sigma difference| = " + std::to_string(diff) + ", not 0 or 8: no non-coherent band move";
  } else {
    v.status = Verdict::kNotExcluded;
    v.reason = "|sigma difference| = " + std::to_string(diff) + ": no conclusion (a band move may or may not exist)";
  }
  return v;
}

bool murasugi_congruence_check(const KnotRecord& a, const KnotRecord& b) {
  const std::int64_t ds = std::abs(a.signature - b.signature);
  const std::int64_t dd = a.det > b.det ? a.det - b.det : b.det - a.det;
  return ds % 4 == dd % 4;
}

bool chirally_cosmetic_lens(std::int64_t m) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("chirally_cosmetic_lens needs odd m >= 1");
  if (!is_square_free(m)) throw std::invalid_argument("chirally_cosmetic_lens needs square-free m");
  const Rational d = m == 1 ? d_lens(1, 1, 0) : d_lens(m, 1, 0);
  return d == Rational(0) || d == Rational(1);
}

std::vector<PairVerdict> table_classification(const std::vector<KnotRecord>& records) {
  std::vector<PairVerdict> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (records[i].det != records[j].det) continue;
      out.push_back({records[i].type.name(), records[j].type.name(), records[i].det,
                     band_obstruction(records[i], records[j])});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PairVerdict& x, const PairVerdict& y) { return x.det < y.det; });
  return out;
}

std::string classification_matrix(const std::vector<KnotRecord>& records) {
  std::map<std::int64_t, std::vector<const KnotRecord*>> groups;
  for (const auto& r : records) groups[r.det].push_back(&r);
  const auto pairs = table_classification(records);
  std::ostringstream os;
  for (auto& [det, members] : groups) {
    std::stable_sort(members.begin(), members.end(),
                     [](const KnotRecord* a, const KnotRecord* b) { return a->signature < b->signature; });
    os << "det " << det << (is_square_free(det) ? "" : " (not square-free)") << ":";
    for (const auto* r : members) {
      const std::string name = r->type.name();
      os << ' ' << (r->qa ? name : "[" + name + "]") << '(' << r->signature << ')';
    }
    os << '\n';
    for (Verdict v : {Verdict::kExcluded, Verdict::kNotExcluded, Verdict::kInapplicable}) {
      std::string line;
      for (const auto& p : pairs) {
        if (p.det == det && p.verdict.status == v) line += " " + p.a + "--" + p.b;
      }
      if (!line.empty()) os << "  " << to_string(v) << ":" << line << '\n';
    }
  }
  return os.str();
}

}  // namespace bandsurg
