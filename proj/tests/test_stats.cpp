#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bandsurg/stats.hpp"
#include "support.hpp"

using namespace bandsurg;

namespace {

TransitionRecord rec(std::size_t event, const std::string& after, IdKind kind = IdKind::kIdentified,
                     std::size_t length = 50) {
  TransitionRecord r;
  r.event = event;
  r.before = "5_1";
  r.after = after;
  r.after_kind = kind;
  r.length = length;
  return r;
}

}  // namespace

TEST_CASE("synthetic tally: 104 of 3e6") {
  const auto est = estimate_from_blocks(uniform_blocks(104, 3000000, 100));
  CHECK(est.observed == 104);
  CHECK(est.total == 3000000);
  CHECK(est.p_hat * 1e5 == doctest::Approx(3.467).epsilon(1e-4));
  REQUIRE(est.ci_low.has_value());
  CHECK(*est.ci_low <= est.p_hat);
  CHECK(*est.ci_high >= est.p_hat);
}

TEST_CASE("zero observations give no interval") {
  const auto est = estimate_from_blocks(uniform_blocks(0, 3000000, 100));
  CHECK(est.p_hat == 0);
  CHECK_FALSE(est.ci_low.has_value());
  CHECK_FALSE(est.ci_high.has_value());
}

TEST_CASE("identical blocks give a zero-width interval") {
  std::vector<BlockCount> blocks(10, BlockCount{3, 1000});
  const auto est = estimate_from_blocks(blocks);
  REQUIRE(est.ci_low.has_value());
  CHECK(*est.ci_low == doctest::Approx(est.p_hat));
  CHECK(*est.ci_high == doctest::Approx(est.p_hat));
}

TEST_CASE("ratio estimator matches a hand computation") {
  // blocks (hits, events): (1,10) (3,10) (2,20)
  const std::vector<BlockCount> b = {{1, 10}, {3, 10}, {2, 20}};
  const auto est = estimate_from_blocks(b);
  const double r = 6.0 / 40.0;
  const double ss = std::pow(1 - r * 10, 2) + std::pow(3 - r * 10, 2) + std::pow(2 - r * 20, 2);
  const double se = std::sqrt(3.0 / 2.0 * ss) / 40.0;
  CHECK(est.p_hat == doctest::Approx(r));
  CHECK(*est.ci_low == doctest::Approx(std::max(0.0, r - 1.959963984540054 * se)));
  CHECK(*est.ci_high == doctest::Approx(r + 1.959963984540054 * se));
}

TEST_CASE("interval endpoints stay inside [0, 1]") {
  const std::vector<BlockCount> b = {{10, 10}, {0, 10}, {10, 10}};
  const auto est = estimate_from_blocks(b);
  CHECK(*est.ci_low >= 0.0);
  CHECK(*est.ci_high <= 1.0);
  const std::vector<BlockCount> c = {{1, 100}, {0, 100}, {0, 100}};
  CHECK(*estimate_from_blocks(c).ci_low == 0.0);
}

TEST_CASE("p_hat ignores block count; doubling counts keeps it") {
  std::vector<TransitionRecord> recs;
  for (std::size_t k = 0; k < 1000; ++k) recs.push_back(rec(k, k % 37 == 0 ? "5_1*" : "0_1"));
  const double base = estimate_probability(recs, "5_1*", {10}).p_hat;
  for (std::size_t nb : {2, 7, 50, 100, 1000}) CHECK(estimate_probability(recs, "5_1*", {nb}).p_hat == base);
  const auto x = estimate_from_blocks(uniform_blocks(52, 3000, 10));
  const auto y = estimate_from_blocks(uniform_blocks(104, 6000, 10));
  CHECK(x.p_hat == y.p_hat);
}

TEST_CASE("ambiguous events leave the tally, unknown ones stay in the denominator") {
  std::vector<TransitionRecord> recs;
  for (std::size_t k = 0; k < 100; ++k) {
    if (k < 10) recs.push_back(rec(k, "ambiguous(5_1|10_132*)", IdKind::kAmbiguous));
    else if (k < 20) recs.push_back(rec(k, "unknown", IdKind::kUnknown));
    else if (k < 29) recs.push_back(rec(k, "5_1*"));
    else recs.push_back(rec(k, "0_1"));
  }
  const auto est = estimate_probability(recs, "5_1*", {10});
  CHECK(est.observed == 9);
  CHECK(est.total == 90);
  CHECK_THROWS_AS(estimate_probability(recs, "5_1*", {101}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_probability({}, "5_1*", {10}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_probability(recs, "5_1*", {1}), std::invalid_argument);
}

TEST_CASE("blocks split the stream evenly") {
  std::vector<char> hit(103, 0), counted(103, 1);
  const auto b = make_blocks(hit, counted, 10);
  std::uint64_t total = 0, lo = 1000, hi = 0;
  for (const auto& x : b) {
    total += x.events;
    lo = std::min(lo, x.events);
    hi = std::max(hi, x.events);
  }
  CHECK(total == 103);
  CHECK(hi - lo <= 1);
}

TEST_CASE("report rows") {
  CHECK(report({}, &testing::table()).empty());
  std::vector<TransitionRecord> recs;
  for (std::size_t k = 0; k < 400; ++k) {
    recs.push_back(rec(k, k % 100 == 7 ? "5_1*" : (k % 3 ? "0_1" : "3_1"), IdKind::kIdentified, 40 + k % 50));
  }
  const auto rows = report(recs, &testing::table());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].target == "5_1*");
  CHECK(rows[0].estimate.observed == 4);
  CHECK(rows[0].estimate.p_hat == doctest::Approx(0.01));
  CHECK(rows[0].contributing_min == 47);
  CHECK(rows[0].contributing_max == 47);
  CHECK(rows[0].length_min == 40);
  CHECK(rows[0].length_max == 89);
  std::ostringstream csv, text;
  write_report_csv(csv, rows);
  write_report_text(text, rows);
  CHECK(csv.str().rfind("start_knot,target_knot,p_hat", 0) == 0);
  CHECK(text.str().find("5_1*") != std::string::npos);

  const auto only = report(recs, &testing::table(), {"8_20"});
  REQUIRE(only.size() == 1);
  CHECK(only[0].estimate.observed == 0);
  CHECK_FALSE(only[0].estimate.ci_low.has_value());
  CHECK_FALSE(only[0].contributing_min.has_value());
  std::ostringstream zero;
  write_report_csv(zero, only);
  CHECK(zero.str().find("5_1,8_20,0,,,0,400,100,") != std::string::npos);
}

TEST_CASE("achiral start knots target themselves") {
  std::vector<TransitionRecord> recs;
  for (std::size_t k = 0; k < 10; ++k) {
    auto r = rec(k, "0_1");
    r.before = "4_1";
    recs.push_back(r);
  }
  CHECK(report(recs, &testing::table()).front().target == "4_1");
}

TEST_CASE("reading transition CSV") {
  std::istringstream ok(
      "event,before_knot,after_knot,after_kind,polygon_length,anchor_x,anchor_y,anchor_z,edge_a,edge_b,seed,step,"
      "conformation\n0,5_1,5_1*,identified,42,-1,2,3,4,20,7,1000,2\n");
  const auto recs = read_transitions(ok);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].after == "5_1*");
  CHECK(recs[0].anchor == make_vec(-1, 2, 3));

  std::istringstream bad(
      "event,before_knot,after_knot,after_kind,polygon_length,anchor_x,anchor_y,anchor_z,edge_a,edge_b,seed,step,"
      "conformation\n0,5_1,5_1*,identified,42,-1,2,3,4,20,7,1000,2\n1,5_1,0_1,identified,forty,0,0,0,1,2,7,0,0\n");
  try {
    read_transitions(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream short_row("0,5_1,5_1*\n");
  CHECK_THROWS_AS(read_transitions(short_row), ParseError);
  std::istringstream empty("");
  CHECK(read_transitions(empty).empty());
}
