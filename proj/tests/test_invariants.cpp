#include <doctest.h>

#include <map>
#include <set>

#include "bandsurg/invariants.hpp"
#include "oracles/lens_recursion.hpp"
#include "oracles/table2_lines.hpp"
#include "support.hpp"

using namespace bandsurg;

namespace {

const KnotRecord& rec(const char* n) { return testing::table().at(n); }

bool coprime(std::int64_t a, std::int64_t b) { return std::gcd(a, b) == 1; }

}  // namespace

TEST_CASE("lens d-invariant values") {
  CHECK(d_lens(1, 1, 0) == Rational(0));
  CHECK(d_lens(5, 1, 0) == Rational(1));
  CHECK(d_lens(3, 1, 0) == Rational(1, 2));
  CHECK(d_lens(3, 1, 1) == Rational(-1, 6));
  CHECK(d_lens(3, 1, 2) == Rational(-1, 6));
  for (std::int64_t m = 1; m <= 99; m += 2) CHECK(d_lens(m, 1, 0) == Rational(m - 1, 4));
}

TEST_CASE("lens d-invariant against an independent recursion") {
  for (std::int64_t p = 2; p <= 40; ++p) {
    for (std::int64_t q = 1; q < p; ++q) {
      if (!coprime(p, q)) continue;
      for (std::int64_t i = 0; i < p; ++i) {
        const auto want = oracle::lens_d(p, q, i);
        const auto got = d_lens(p, q, i);
        INFO("L(" << p << "," << q << ") i=" << i);
        CHECK(got.numerator() == want.num);
        CHECK(got.denominator() == want.den);
        // exactness and conjugation symmetry
        CHECK((got * Rational(4 * p * q)).denominator() == 1);
        CHECK(got == d_lens(p, q, ((q - 1 - i) % p + p) % p));
      }
    }
  }
}

TEST_CASE("lens index range and argument checks") {
  CHECK(d_lens(7, 3, 8) == d_lens(7, 3, 1));
  CHECK_THROWS_AS(d_lens(6, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(d_lens(3, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(d_lens(5, 1, 6), std::invalid_argument);
  CHECK_THROWS_AS(d_lens(5, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(d_lens(0, 0, 0), std::invalid_argument);
}

TEST_CASE("self-conjugate labels") {
  CHECK(self_conjugate_spins(5, 1) == std::set<std::int64_t>{0});
  CHECK(self_conjugate_spins(4, 1) == std::set<std::int64_t>{0, 2});
  for (std::int64_t p = 3; p <= 99; p += 2) {
    CHECK(self_conjugate_spins(p, 1) == std::set<std::int64_t>{0});
    for (std::int64_t q = 1; q < p; ++q) {
      if (coprime(p, q)) CHECK(self_conjugate_spins(p, q).size() == 1);
    }
  }
  CHECK_THROWS_AS(self_conjugate_spins(4, 2), std::invalid_argument);
}

TEST_CASE("delta from signature") {
  CHECK(delta_from_signature(rec("4_1")) == 0);
  CHECK(delta_from_signature(rec("5_1")) == 2);
  CHECK(Rational(delta_from_signature(rec("5_1"))) == Rational(2) * d_lens(5, 1, 0));
  CHECK(delta_from_signature(rec("7_1")) == 3);
  // not quasi-alternating, but under ten crossings
  CHECK(delta_from_signature(rec("8_19")) == 3);
  CHECK_THROWS_AS(delta_from_signature(rec("10_132")), std::domain_error);
}

TEST_CASE("square-free test") {
  CHECK(is_square_free(1));
  CHECK(is_square_free(7));
  CHECK_FALSE(is_square_free(49));
  CHECK_FALSE(is_square_free(45));
  CHECK(is_square_free(999983));
  CHECK_FALSE(is_square_free(4 * 999983));
  CHECK_THROWS_AS(is_square_free(0), std::invalid_argument);
  std::set<std::int64_t> sieve;
  for (std::int64_t k = 2; k * k <= 2000; ++k) {
    for (std::int64_t m = k * k; m <= 2000; m += k * k) sieve.insert(m);
  }
  for (std::int64_t m = 1; m <= 2000; ++m) CHECK(is_square_free(m) == (sieve.count(m) == 0));
}

TEST_CASE("band obstruction examples") {
  CHECK(band_obstruction(rec("7_1"), rec("5_2")).status == Verdict::kExcluded);
  CHECK(band_obstruction(rec("7_1"), rec("5_2*")).status == Verdict::kNotExcluded);
  CHECK(band_obstruction(rec("6_2"), rec("7_2*")).status == Verdict::kExcluded);
  CHECK(band_obstruction(rec("6_2"), rec("7_2")).status == Verdict::kNotExcluded);
  CHECK(band_obstruction(rec("3_1"), rec("3_1*")).status == Verdict::kExcluded);
  CHECK(band_obstruction(rec("8_8"), rec("8_8*")).status == Verdict::kInapplicable);
  CHECK(band_obstruction(rec("8_19"), rec("3_1*")).status == Verdict::kInapplicable);
  CHECK(band_obstruction(rec("3_1"), rec("4_1")).status == Verdict::kInapplicable);
  const auto ne = band_obstruction(rec("5_1"), rec("5_1*"));
  CHECK(ne.status == Verdict::kNotExcluded);
  CHECK_FALSE(ne.reason.empty());
}

TEST_CASE("obstruction is symmetric and agrees with Murasugi's congruence") {
  const auto& recs = testing::table().records();
  for (const auto& a : recs) {
    for (const auto& b : recs) {
      const auto ab = band_obstruction(a, b), ba = band_obstruction(b, a);
      CHECK(ab.status == ba.status);
      CHECK(murasugi_congruence_check(a, b));
      if (ab.status == Verdict::kExcluded) {
        const int ds = std::abs(a.signature - b.signature);
        CHECK(ds % 4 == 0);
        CHECK(ds != 0);
        CHECK(ds != 8);
      }
    }
  }
}

TEST_CASE("record invariants: odd det, even signature, Murasugi mod 4") {
  for (const auto& r : testing::table().records()) {
    INFO(r.type.name());
    CHECK(r.det % 2 == 1);
    CHECK(r.signature % 2 == 0);
    CHECK((std::abs(r.signature) % 4 == 0) == (r.det % 4 == 1));
  }
}

TEST_CASE("chirally cosmetic lens spaces") {
  CHECK(chirally_cosmetic_lens(1));
  CHECK(chirally_cosmetic_lens(5));
  CHECK_FALSE(chirally_cosmetic_lens(3));
  CHECK_FALSE(chirally_cosmetic_lens(7));
  CHECK_FALSE(chirally_cosmetic_lens(9997));
  CHECK_THROWS_AS(chirally_cosmetic_lens(9999), std::invalid_argument);
  CHECK_THROWS_AS(chirally_cosmetic_lens(6), std::invalid_argument);
  CHECK_THROWS_AS(chirally_cosmetic_lens(9), std::invalid_argument);
}

TEST_CASE("pairwise classification reproduces the dashed and solid lines") {
  const auto pairs = table_classification(testing::table().records());
  std::set<oracle::KnotPair> excluded;
  std::map<oracle::KnotPair, Verdict> verdict;
  for (const auto& p : pairs) {
    CHECK(testing::table().at(p.a).det == p.det);
    CHECK(testing::table().at(p.b).det == p.det);
    const auto key = oracle::unordered(p.a, p.b);
    verdict[key] = p.verdict.status;
    const bool small = testing::table().at(p.a).crossing_number <= 8 && testing::table().at(p.b).crossing_number <= 8;
    if (p.verdict.status == Verdict::kExcluded && small) excluded.insert(key);
  }
  CHECK(excluded == oracle::dashed_lines());
  for (const auto& s : oracle::solid_lines()) {
    INFO(s.first << " " << s.second);
    REQUIRE(verdict.count(s));
    CHECK(verdict[s] != Verdict::kExcluded);
  }
  // det 7 block
  CHECK(verdict[oracle::unordered("7_1", "5_2")] == Verdict::kExcluded);
  CHECK(verdict[oracle::unordered("7_1*", "5_2*")] == Verdict::kExcluded);
  CHECK(verdict[oracle::unordered("7_1", "5_2*")] == Verdict::kNotExcluded);
  CHECK(verdict[oracle::unordered("7_1*", "5_2")] == Verdict::kNotExcluded);
  // det 25: not square-free
  for (const char* other : {"8_8*", "8_9"}) CHECK(verdict[oracle::unordered("8_8", other)] == Verdict::kInapplicable);
}

TEST_CASE("text matrix groups by determinant") {
  const auto text = classification_matrix(testing::table().records());
  CHECK(text.find("det 7") != std::string::npos);
  CHECK(text.find("7_1") != std::string::npos);
  CHECK(text.find("det 45") != std::string::npos);
}
