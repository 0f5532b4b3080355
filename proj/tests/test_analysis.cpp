#include "mteval/analysis.hpp"

#include <doctest.h>

#include <limits>
#include <random>

#include "mteval/error.hpp"
#include "testutil.hpp"

using namespace mteval;

TEST_CASE("matched n-gram report basics") {
  std::vector<TokenSeq> hyp = {{"a", "b", "c", "d"}};
  NgramMatchReport report = matched_ngram_report(hyp, hyp, 4, 10);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].ngram == Ngram{"a", "b", "c", "d"});
  CHECK(report.rows[0].count == 1);
  CHECK(!report.order_exceeds_segments);
}

TEST_CASE("rows are sorted by count, then lexicographically, and truncated") {
  std::vector<TokenSeq> hyps = {{"x", "x", "x", "a", "b"}, {"x", "x", "a", "b"}};
  std::vector<TokenSeq> refs = {{"x", "x", "x", "b", "a"}, {"x", "x", "b", "a"}};
  NgramMatchReport report = matched_ngram_report(hyps, refs, 2, 10);
  REQUIRE(!report.rows.empty());
  CHECK(report.rows[0].ngram == Ngram{"x", "x"});
  CHECK(report.rows[0].count == 3);  // 2 in segment one, 1 in segment two
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i - 1].count >= report.rows[i].count);
    if (report.rows[i - 1].count == report.rows[i].count)
      CHECK(report.rows[i - 1].ngram < report.rows[i].ngram);
  }

  NgramMatchReport top1 = matched_ngram_report(hyps, refs, 2, 1);
  CHECK(top1.rows.size() == 1);
}

TEST_CASE("order larger than every segment flags an empty report") {
  std::vector<TokenSeq> tiny = {{"a"}, {"b", "c"}};
  NgramMatchReport report = matched_ngram_report(tiny, tiny, 4, 10);
  CHECK(report.rows.empty());
  CHECK(report.order_exceeds_segments);
}

TEST_CASE("identity report reproduces the reference's own n-gram counts") {
  std::mt19937 rng(59);
  std::vector<TokenSeq> corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back(testutil::random_sentence(rng, 3, 10, 4));
  for (int order = 1; order <= 3; ++order) {
    NgramMatchReport report =
        matched_ngram_report(corpus, corpus, order, std::numeric_limits<std::size_t>::max());
    NgramCounts expected;
    for (const auto& sent : corpus)
      for (const auto& [gram, count] : ngram_counts(sent, order))
        if (static_cast<int>(gram.size()) == order) expected[gram] += count;
    REQUIRE(report.rows.size() == expected.size());
    for (const auto& row : report.rows) CHECK(expected.at(row.ngram) == row.count);
  }
}

TEST_CASE("report totals agree with BLEU clipped counts") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TokenSeq> hyps, refs;
    for (int i = 0; i < 4; ++i) {
      hyps.push_back(testutil::random_sentence(rng, 2, 9, 5));
      refs.push_back(testutil::random_sentence(rng, 2, 9, 5));
    }
    BleuStats stats;
    for (std::size_t i = 0; i < hyps.size(); ++i)
      stats += bleu_segment_stats(hyps[i], {refs[i]});
    for (int order = 1; order <= 4; ++order) {
      NgramMatchReport report = matched_ngram_report(
          hyps, refs, order, std::numeric_limits<std::size_t>::max());
      std::int64_t total = 0;
      for (const auto& row : report.rows) total += row.count;
      CHECK(total == stats.correct[order - 1]);
    }
  }
}

TEST_CASE("monotonicity fixtures") {
  AlignmentSet identity{"id", {{{0, 0}, {1, 1}, {2, 2}}}};
  MonotonicityScore score = monotonicity(identity);
  CHECK(score.mean_abs_distance == 0.0);
  CHECK(score.link_count == 3);

  AlignmentSet crossing{"cross", {{{0, 2}, {2, 0}}}};
  CHECK(monotonicity(crossing).mean_abs_distance == doctest::Approx(2.0));

  AlignmentSet empty{"none", {{}, {}}};
  CHECK_THROWS_WITH_AS(monotonicity(empty), doctest::Contains("ZeroLinks"), Error);
}

TEST_CASE("monotonicity ignores segment and link order") {
  AlignmentSet a{"a", {{{0, 3}, {5, 1}}, {{2, 2}}}};
  AlignmentSet b{"b", {{{2, 2}}, {{5, 1}, {0, 3}}}};
  CHECK(monotonicity(a).mean_abs_distance == monotonicity(b).mean_abs_distance);
}

TEST_CASE("report TSV export") {
  NgramMatchReport report;
  report.order = 2;
  report.rows.push_back({{",", "sagte", "er", "."}, 28});
  report.rows.push_back({{"Wheeling", ",", "West", "Virginia"}, 3});
  CHECK(report_to_tsv(report) ==
        "1\t, sagte er .\t28\n2\tWheeling , West Virginia\t3\n");
}
