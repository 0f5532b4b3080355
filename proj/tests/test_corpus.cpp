#include "mteval/corpus.hpp"

#include <doctest.h>

#include "mteval/error.hpp"
#include "testutil.hpp"

using namespace mteval;
using testutil::TempDir;

TEST_CASE("load_lines reads newline-insensitively and preserves bytes") {
  TempDir dir;
  CHECK(load_lines(dir.write("a.txt", "a\nb\n")) == std::vector<std::string>{"a", "b"});
  CHECK(load_lines(dir.write("b.txt", "a\nb")) == std::vector<std::string>{"a", "b"});
  CHECK(load_lines(dir.write("c.txt", "a\n\nb\n")) == std::vector<std::string>{"a", "", "b"});
  CHECK(load_lines(dir.write("d.txt", "a\r\nb  c\r\n")) ==
        std::vector<std::string>{"a", "b  c"});
  CHECK(load_lines(dir.write("e.txt", " a \n")) == std::vector<std::string>{" a "});
}

TEST_CASE("load_lines error cases") {
  TempDir dir;
  CHECK_THROWS_WITH_AS(load_lines((dir.path() / "missing.txt").string()),
                       doctest::Contains("MissingFile"), Error);
  CHECK_THROWS_WITH_AS(load_lines(dir.write("empty.txt", "")),
                       doctest::Contains("EmptyFile"), Error);
  CHECK_THROWS_WITH_AS(load_lines(dir.write("bad.txt", "a\xff\xfe\n")),
                       doctest::Contains("InvalidEncoding"), Error);
}

TEST_CASE("text round trip is byte exact") {
  TempDir dir;
  std::string content = "Die Glocken von St. Martin\tverstummen\nzweite  Zeile\n";
  auto lines = load_lines(dir.write("r.txt", content));
  std::string rejoined;
  for (const auto& line : lines) rejoined += line + "\n";
  CHECK(rejoined == content);
  auto reloaded = load_lines(dir.write("r2.txt", rejoined));
  CHECK(reloaded == lines);
}

TEST_CASE("ratings TSV parsing") {
  TempDir dir;
  auto ratings = load_ratings(dir.write("r.tsv", "0\tWMT\tr1\t85.0\n1\tWMT\tr1\t90\n"));
  CHECK(ratings.entries.size() == 2);
  CHECK(ratings.entries.at({0, "WMT", "r1"}) == 85.0);

  CHECK_THROWS_WITH_AS(load_ratings(dir.write("oob.tsv", "0\tWMT\tr1\t120\n")),
                       doctest::Contains("OutOfRange"), Error);
  CHECK_THROWS_WITH_AS(
      load_ratings(dir.write("dup.tsv", "0\tWMT\tr1\t85\n0\tWMT\tr1\t86\n")),
      doctest::Contains("Duplicate"), Error);
  CHECK_THROWS_WITH_AS(load_ratings(dir.write("cols.tsv", "0\tWMT\tr1\t85\textra\n")),
                       doctest::Contains("MalformedRow"), Error);
  CHECK_THROWS_WITH_AS(load_ratings(dir.write("neg.tsv", "0\tWMT\tr1\t-3\n")),
                       doctest::Contains("OutOfRange"), Error);
}

TEST_CASE("pharaoh alignments") {
  TempDir dir;
  auto set = load_alignments(dir.write("a.align", "0-0 1-1 2-2\n\n0-2 2-0\n"));
  REQUIRE(set.segments.size() == 3);
  CHECK(set.segments[0] ==
        std::vector<AlignmentLink>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(set.segments[1].empty());
  CHECK(set.segments[2] == std::vector<AlignmentLink>{{0, 2}, {2, 0}});

  CHECK_THROWS_AS(load_alignments(dir.write("bad1.align", "0-0 xyz\n")), Error);
  CHECK_THROWS_AS(load_alignments(dir.write("bad2.align", "3-\n")), Error);
  CHECK_THROWS_AS(load_alignments(dir.write("bad3.align", "1--2\n")), Error);
}

TEST_CASE("human and external score TSVs") {
  TempDir dir;
  auto human = load_human_scores(dir.write("h.tsv", "FB\t0.347\nMSRA\t0.214\n"));
  CHECK(human.scores.at("FB") == doctest::Approx(0.347));
  CHECK(!human.normalized);

  auto external = load_external_scores(dir.write(
      "x.tsv", "BERTScore\thigher_better\tFB\t0.84\nTER\tlower_better\tFB\t0.41\n"));
  REQUIRE(external.size() == 2);
  CHECK(external[0].metric_name == "BERTScore");
  CHECK(external[0].orientation == Orientation::higher_better);
  CHECK(external[1].orientation == Orientation::lower_better);

  CHECK_THROWS_AS(load_external_scores(dir.write("dup.tsv",
                                                 "M\thigher_better\tFB\t1\nM\thigher_better\tFB\t2\n")),
                  Error);
  CHECK_THROWS_AS(load_external_scores(dir.write("or.tsv", "M\tsideways\tFB\t1\n")), Error);
}

namespace {

Workspace tiny_workspace(std::size_t n) {
  Workspace ws;
  ws.test_set.name = "tiny";
  ws.test_set.language_pair = {"en", "de"};
  for (std::size_t i = 0; i < n; ++i)
    ws.test_set.segments.push_back({i, "src " + std::to_string(i), std::nullopt});
  return ws;
}

std::vector<std::string> lines(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + " " + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("workspace validation catches length and coverage problems") {
  // Shape of the real study: 22 systems and several refsets over 1997 lines.
  const std::size_t n = 1997;
  Workspace ws = tiny_workspace(n);
  for (int s = 0; s < 22; ++s)
    ws.systems.push_back({"sys" + std::to_string(s), lines(n, "hyp")});
  ws.refsets.push_back({"WMT", RefKind::standard, lines(n, "ref")});
  ws.refsets.push_back({"WMT.p", RefKind::paraphrase, lines(n, "para")});
  CHECK(validate_workspace(ws).ok());

  SUBCASE("short reference set") {
    ws.refsets[1].translations.pop_back();
    auto report = validate_workspace(ws);
    REQUIRE(!report.ok());
    CHECK(report.errors[0].file == "WMT.p");
    CHECK(report.errors[0].what == "LengthMismatch(expected 1997, got 1996)");
  }

  SUBCASE("incomplete ratings warn but pass") {
    ws.ratings.entries[{0, "WMT", "r1"}] = 80.0;
    auto report = validate_workspace(ws);
    CHECK(report.ok());
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].what ==
          "IncompleteRatings(WMT, 1996 unrated segments)");
  }

  SUBCASE("unknown names are errors") {
    ws.human_scores = HumanSystemScores{{{"ghost", 1.0}}, false};
    ws.ratings.entries[{0, "nope", "r1"}] = 50.0;
    auto report = validate_workspace(ws);
    CHECK(!report.ok());
    CHECK(report.errors.size() == 2);
  }
}

TEST_CASE("origin filtering") {
  Workspace ws = tiny_workspace(4);
  const char* origins[] = {"en", "de", "en", "de"};
  for (std::size_t i = 0; i < 4; ++i) ws.test_set.segments[i].origin_language = origins[i];
  ws.systems.push_back({"sys", {"h0", "h1", "h2", "h3"}});
  ws.refsets.push_back({"WMT", RefKind::standard, {"r0", "r1", "r2", "r3"}});
  ws.ratings.entries[{0, "WMT", "r1"}] = 10;
  ws.ratings.entries[{2, "WMT", "r1"}] = 30;
  ws.ratings.entries[{3, "WMT", "r1"}] = 40;
  AlignmentSet align{"a", {{{0, 0}}, {{1, 1}}, {{2, 2}}, {{3, 3}}}};
  ws.alignments.push_back(align);

  auto filtered = filter_by_origin(ws, "en");
  CHECK(filtered.old_indices == std::vector<std::size_t>{0, 2});
  const Workspace& fw = filtered.workspace;
  CHECK(fw.test_set.size() == 2);
  CHECK(fw.test_set.segments[1].index == 1);
  CHECK(fw.test_set.segments[1].source_text == "src 2");
  CHECK(fw.systems[0].hypotheses == std::vector<std::string>{"h0", "h2"});
  CHECK(fw.refsets[0].translations == std::vector<std::string>{"r0", "r2"});
  CHECK(fw.alignments[0].segments[1] == std::vector<AlignmentLink>{{2, 2}});
  CHECK(fw.ratings.entries.size() == 2);
  CHECK(fw.ratings.entries.at({1, "WMT", "r1"}) == 30);

  SUBCASE("filtering twice with the same origin is the identity") {
    auto again = filter_by_origin(fw, "en");
    CHECK(again.workspace.test_set.size() == fw.test_set.size());
    CHECK(again.workspace.systems[0].hypotheses == fw.systems[0].hypotheses);
    CHECK(again.workspace.refsets[0].translations == fw.refsets[0].translations);
    CHECK(again.old_indices == std::vector<std::size_t>{0, 1});
  }

  SUBCASE("unknown origin") {
    CHECK_THROWS_WITH_AS(filter_by_origin(ws, "fr"), doctest::Contains("NoSuchOrigin"), Error);
  }

  SUBCASE("missing tags") {
    ws.test_set.segments[1].origin_language.reset();
    CHECK_THROWS_WITH_AS(filter_by_origin(ws, "en"),
                         doctest::Contains("MissingOriginTags"), Error);
  }

  SUBCASE("no matching segments") {
    for (auto& seg : ws.test_set.segments) seg.origin_language = "de";
    CHECK_THROWS_WITH_AS(filter_by_origin(ws, "en"), doctest::Contains("EmptyResult"), Error);
  }
}

TEST_CASE("origin tag sidecar") {
  TempDir dir;
  auto tags = load_origin_tags(dir.write("o.tsv", "0\ten\n1\tde\n"));
  CHECK(tags.at(0) == "en");
  CHECK(tags.at(1) == "de");
  CHECK_THROWS_AS(load_origin_tags(dir.write("dup.tsv", "0\ten\n0\tde\n")), Error);
}
