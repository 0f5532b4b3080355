#include "mteval/refsets.hpp"

#include <doctest.h>

#include <random>

#include "mteval/error.hpp"

using namespace mteval;

namespace {

ReferenceSet make_set(const std::string& name, std::vector<std::string> lines,
                      RefKind kind = RefKind::standard) {
  return {name, kind, std::move(lines)};
}

void rate(AdequacyRatings& ratings, std::size_t segment, const std::string& set, double value,
          const std::string& rater = "r1") {
  ratings.entries[{segment, set, rater}] = value;
}

}  // namespace

TEST_CASE("average_segment_ratings takes the arithmetic mean over raters") {
  AdequacyRatings ratings;
  rate(ratings, 0, "WMT", 80, "r1");
  rate(ratings, 0, "WMT", 90, "r2");
  rate(ratings, 0, "WMT", 100, "r3");
  rate(ratings, 1, "WMT", 85, "r1");
  auto means = average_segment_ratings(ratings);
  CHECK(means.at({0, "WMT"}) == doctest::Approx(90.0));
  CHECK(means.at({1, "WMT"}) == doctest::Approx(85.0));
}

TEST_CASE("compose_hq picks the best-rated member per segment") {
  ReferenceSet wmt = make_set("WMT", {"wmt0", "wmt1"});
  ReferenceSet ar = make_set("AR", {"ar0", "ar1"});
  AdequacyRatings ratings;
  rate(ratings, 0, "WMT", 85);
  rate(ratings, 0, "AR", 90);
  rate(ratings, 1, "WMT", 95);
  rate(ratings, 1, "AR", 60);

  auto [composed, trace] = compose_hq({&wmt, &ar}, ratings);
  CHECK(composed.name == "HQ(WMT,AR)");
  CHECK(composed.kind == RefKind::composed);
  CHECK(composed.translations == std::vector<std::string>{"ar0", "wmt1"});
  REQUIRE(trace.choices.size() == 2);
  CHECK(trace.choices[0].chosen_set == "AR");
  CHECK(trace.choices[0].chosen_rating == 90);
  CHECK(trace.choices[0].runner_up_rating == 85);
  CHECK(!trace.choices[0].tie);
}

TEST_CASE("compose_hq ties go to the earlier member and are flagged") {
  ReferenceSet wmt = make_set("WMT", {"wmt0"});
  ReferenceSet ar = make_set("AR", {"ar0"});
  AdequacyRatings ratings;
  rate(ratings, 0, "WMT", 85);
  rate(ratings, 0, "AR", 85);

  auto [composed, trace] = compose_hq({&wmt, &ar}, ratings);
  CHECK(composed.translations[0] == "wmt0");
  CHECK(trace.choices[0].tie);

  auto [swapped, trace2] = compose_hq({&ar, &wmt}, ratings);
  CHECK(swapped.translations[0] == "ar0");
  CHECK(swapped.name == "HQ(AR,WMT)");
}

TEST_CASE("compose_hq over a single member reproduces it") {
  ReferenceSet wmt = make_set("WMT", {"a", "b", "c"});
  AdequacyRatings ratings;
  for (std::size_t i = 0; i < 3; ++i) rate(ratings, i, "WMT", 70);
  auto [composed, trace] = compose_hq({&wmt}, ratings);
  CHECK(composed.translations == wmt.translations);
  CHECK(composed.name == "HQ(WMT)");
  for (const auto& choice : trace.choices) {
    CHECK(!choice.tie);
    CHECK(!choice.runner_up_rating.has_value());
  }
}

TEST_CASE("compose_hq requires full coverage") {
  ReferenceSet wmt = make_set("WMT", {"a", "b"});
  AdequacyRatings ratings;
  rate(ratings, 0, "WMT", 70);  // segment 1 missing
  CHECK_THROWS_WITH_AS(compose_hq({&wmt}, ratings), doctest::Contains("MissingRating"), Error);
}

TEST_CASE("permuting members changes the output only on tied segments") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> score(0, 100);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 8;
    ReferenceSet a = make_set("A", {}), b = make_set("B", {}), c = make_set("C", {});
    AdequacyRatings ratings;
    for (std::size_t i = 0; i < n; ++i) {
      a.translations.push_back("a" + std::to_string(i));
      b.translations.push_back("b" + std::to_string(i));
      c.translations.push_back("c" + std::to_string(i));
      // Coarse grid so ties actually happen.
      rate(ratings, i, "A", std::round(score(rng) / 25) * 25);
      rate(ratings, i, "B", std::round(score(rng) / 25) * 25);
      rate(ratings, i, "C", std::round(score(rng) / 25) * 25);
    }
    auto [fwd, fwd_trace] = compose_hq({&a, &b, &c}, ratings);
    auto [rev, rev_trace] = compose_hq({&c, &b, &a}, ratings);
    for (std::size_t i = 0; i < n; ++i) {
      if (!fwd_trace.choices[i].tie && !rev_trace.choices[i].tie)
        CHECK(fwd.translations[i] == rev.translations[i]);
      // Rating dominance: the chosen rating is the max over members.
      CHECK(fwd_trace.choices[i].chosen_rating >=
            ratings.entries.at({i, "A", "r1"}));
      CHECK(fwd_trace.choices[i].chosen_rating >=
            ratings.entries.at({i, "B", "r1"}));
      CHECK(fwd_trace.choices[i].chosen_rating >=
            ratings.entries.at({i, "C", "r1"}));
    }
  }
}

TEST_CASE("assemble_multi keeps member order and projects losslessly") {
  ReferenceSet wmt = make_set("WMT", {"w0", "w1"});
  ReferenceSet ar = make_set("AR", {"a0", "a1"});
  MultiReference multi = assemble_multi({&wmt, &ar});
  CHECK(multi.name() == "WMT+AR");
  CHECK(multi.per_segment[0] == std::vector<std::string>{"w0", "a0"});
  CHECK(multi.per_segment[1] == std::vector<std::string>{"w1", "a1"});
  // Projection onto member i recovers member i.
  for (std::size_t m = 0; m < multi.member_names.size(); ++m) {
    std::vector<std::string> projected;
    for (const auto& seg : multi.per_segment) projected.push_back(seg[m]);
    CHECK(projected == (m == 0 ? wmt.translations : ar.translations));
  }
}

TEST_CASE("assemble_multi validation") {
  ReferenceSet wmt = make_set("WMT", {"w0"});
  CHECK_THROWS_WITH_AS(assemble_multi({&wmt}), doctest::Contains("TooFewMembers"), Error);
  ReferenceSet shorter = make_set("AR", {"a0", "a1"});
  CHECK_THROWS_WITH_AS(assemble_multi({&wmt, &shorter}), doctest::Contains("LengthMismatch"),
                       Error);
}

TEST_CASE("four-member bundle mirrors the all-4 configuration") {
  ReferenceSet wmt = make_set("WMT", {"w"});
  ReferenceSet ar = make_set("AR", {"a"});
  ReferenceSet wmtp = make_set("WMT.p", {"wp"}, RefKind::paraphrase);
  ReferenceSet arp = make_set("AR.p", {"ap"}, RefKind::paraphrase);
  MultiReference multi = assemble_multi({&wmt, &ar, &wmtp, &arp});
  CHECK(multi.member_names ==
        std::vector<std::string>{"WMT", "AR", "WMT.p", "AR.p"});
  CHECK(multi.per_segment[0].size() == 4);
}

TEST_CASE("trace export format") {
  CompositionTrace trace;
  trace.choices.push_back({0, "WMT", 85.0, std::nullopt, false});
  trace.choices.push_back({1, "AR", 90.5, 85.0, true});
  CHECK(trace_to_tsv(trace) == "0\tWMT\t85.0000\t0\n1\tAR\t90.5000\t1\n");
}
