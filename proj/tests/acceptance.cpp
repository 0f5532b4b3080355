// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Two optional blocks run only when the corresponding data is present:
//   MTEVAL_WMT19_DIR   - full reproduction against the released WMT19 data
//                        (see README for the expected layout)
//   MTEVAL_ALIGN_DIR   - WMT.align / WMT.p.align files for the alignment
//                        ordering check

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mteval/analysis.hpp"
#include "mteval/bleu.hpp"
#include "mteval/chrf.hpp"
#include "mteval/cli.hpp"
#include "mteval/correlate.hpp"
#include "mteval/error.hpp"
#include "mteval/scorer.hpp"
#include "mteval/ter.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace mteval;
namespace fs = std::filesystem;

namespace {

enum class Outcome { pass, fail, skip };

struct Criterion {
  std::string name;
  std::function<std::string()> run;  // returns "" on pass, reason otherwise
  bool optional = false;
};

int failures = 0;

void report(const std::string& name, Outcome outcome, const std::string& detail) {
  const char* label = outcome == Outcome::pass ? "PASS" : outcome == Outcome::fail ? "FAIL" : "SKIP";
  std::cout << label << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n" << std::flush;
  if (outcome == Outcome::fail) ++failures;
}

void run_criterion(const Criterion& c) {
  try {
    std::string detail = c.run();
    if (detail.empty()) {
      report(c.name, Outcome::pass, "");
    } else if (c.optional && detail.rfind("skip:", 0) == 0) {
      report(c.name, Outcome::skip, detail.substr(5));
    } else {
      report(c.name, Outcome::fail, detail);
    }
  } catch (const std::exception& e) {
    report(c.name, Outcome::fail, e.what());
  }
}

std::string check(bool ok, const std::string& reason) { return ok ? "" : reason; }

// ---- metric oracle suite ---------------------------------------------------

std::string bleu_identity() {
  SystemOutput sys{"self", {"vier Worte sind genug hier", "und noch ein zweiter Satz"}};
  ReferenceSet ref{"self", RefKind::standard, sys.hypotheses};
  MetricResult r = score_system(sys, ref, MetricKind::bleu);
  return check(r.score == 100.0, "got " + std::to_string(r.score));
}

std::string bleu_smoothing_fixture() {
  SystemOutput sys{"s", {"the the the the"}};
  ReferenceSet ref{"r", RefKind::standard, {"the cat"}};
  double score = score_system(sys, ref, MetricKind::bleu).score;
  return check(std::abs(score - 15.97) <= 0.01,
               "expected 15.97 +- 0.01, got " + std::to_string(score));
}

std::string bleu_multiref_collapse() {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    BleuStats single, multi;
    std::uniform_int_distribution<int> seg_count(1, 8);
    int segments = seg_count(rng);
    for (int i = 0; i < segments; ++i) {
      TokenSeq hyp = testutil::random_sentence(rng, 4, 14, 9);
      TokenSeq ref = testutil::random_sentence(rng, 4, 14, 9);
      single += bleu_segment_stats(hyp, {ref});
      multi += bleu_segment_stats(hyp, {ref, ref, ref, ref});
    }
    if (bleu_corpus(single).score != bleu_corpus(multi).score)
      return "trial " + std::to_string(trial) + ": collapse is not exact";
  }
  return "";
}

std::string chrf_identity() {
  std::vector<std::string> corpus = {"Die Glocken von St. Martin verstummen.",
                                     "Kirchen in Harlem haben Probleme."};
  double score = chrf_corpus(corpus, corpus).score;
  return check(score == 100.0, "got " + std::to_string(score));
}

std::string ter_greedy_vs_exhaustive() {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> len(1, 6), tok(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    oracle::Seq hyp(len(rng)), ref(len(rng));
    for (auto& t : hyp) t = tok(rng);
    for (auto& t : ref) t = tok(rng);
    TokenSeq hyp_tokens, ref_tokens;
    for (int t : hyp) hyp_tokens.push_back("t" + std::to_string(t));
    for (int t : ref) ref_tokens.push_back("t" + std::to_string(t));
    int greedy = static_cast<int>(ter_segment(hyp_tokens, ref_tokens).edits);
    int best = oracle::ter_exhaustive(hyp, ref);
    if (greedy != best)
      return "trial " + std::to_string(trial) + ": greedy " + std::to_string(greedy) +
             " vs exhaustive " + std::to_string(best);
  }
  return "";
}

// ---- correlation oracle suite ----------------------------------------------

std::string kendall_matches_enumeration() {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> len(2, 10), value(0, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(len(rng)), y(x.size());
    for (auto& v : x) v = value(rng);
    for (auto& v : y) v = value(rng);
    double expected = oracle::kendall_tau_groups(x, y);
    if (std::isnan(expected)) {
      try {
        kendall_tau_b(x, y);
        return "trial " + std::to_string(trial) + ": undefined tau not reported";
      } catch (const Error&) {
      }
    } else if (kendall_tau_b(x, y) != expected) {
      return "trial " + std::to_string(trial) + ": mismatch";
    }
  }
  return "";
}

std::string spearman_fixture() {
  double rho = spearman_rho({1, 2, 3}, {1, 3, 2});
  return check(rho == 0.5, "expected exactly 0.5, got " + std::to_string(rho));
}

std::string monotone_invariance() {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> value(-5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(7), y(7);
    for (auto& v : x) v = value(rng);
    for (auto& v : y) v = value(rng);
    std::vector<double> tx(7);
    for (std::size_t i = 0; i < 7; ++i) tx[i] = std::exp(x[i] / 5.0);  // strictly increasing
    if (kendall_tau_b(tx, y) != kendall_tau_b(x, y)) return "tau not invariant";
    if (spearman_rho(tx, y) != spearman_rho(x, y)) return "rho not invariant";
  }
  return "";
}

// ---- published-result fixtures -------------------------------------------------

std::string ranking_verdicts_fixture() {
  const std::vector<double> human = {84.5, 86.1, 87.8};  // bitext, APE, BT
  const std::vector<std::pair<std::vector<double>, bool>> rows = {
      {{84.5, 86.1, 87.8}, true},   // human
      {{39.4, 34.6, 37.9}, false},  // WMT
      {{12.5, 12.7, 12.9}, true},   // WMT.p
      {{35.0, 32.1, 34.9}, false},  // HQ(R)
      {{12.4, 12.8, 13.0}, true},   // HQ(P)
      {{27.2, 25.8, 27.5}, false},  // HQ(all 4)
  };
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (ranking_agreement(rows[i].first, human) != rows[i].second)
      return "row " + std::to_string(i) + " verdict differs";
  return "";
}

std::string top7_tau_fixture() {
  const std::vector<double> bleu = {43.6, 44.8, 44.8, 46.0, 44.1, 44.6, 42.4};
  const std::vector<double> human = {0.347, 0.311, 0.296, 0.214, 0.213, 0.208, 0.189};
  double tau = kendall_tau_b(bleu, human);
  double expected = oracle::kendall_tau_groups(bleu, human);
  if (tau != expected) return "tau differs from the enumeration oracle";
  // Hand count: P=12, Q=8, Tx=1 -> 4/sqrt(420).
  return check(std::abs(tau - 4.0 / std::sqrt(420.0)) < 1e-12,
               "tau " + std::to_string(tau) + " is off the hand-derived value");
}

// ---- substituted alignment property ------------------------------------------

std::string monotonicity_properties() {
  AlignmentSet identity{"id", {{{0, 0}, {1, 1}, {2, 2}}}};
  if (monotonicity(identity).mean_abs_distance != 0.0) return "identity is not 0";
  AlignmentSet crossing{"cross", {{{0, 2}, {2, 0}}}};
  if (monotonicity(crossing).mean_abs_distance != 2.0) return "crossing pair is not 2";

  if (const char* dir = std::getenv("MTEVAL_ALIGN_DIR")) {
    fs::path wmt = fs::path(dir) / "WMT.align";
    fs::path wmtp = fs::path(dir) / "WMT.p.align";
    if (!fs::exists(wmt) || !fs::exists(wmtp))
      return "MTEVAL_ALIGN_DIR is set but WMT.align / WMT.p.align are missing";
    double base = monotonicity(load_alignments(wmt.string())).mean_abs_distance;
    double para = monotonicity(load_alignments(wmtp.string())).mean_abs_distance;
    if (!(base < para))
      return "expected WMT < WMT.p, got " + std::to_string(base) + " vs " +
             std::to_string(para);
  }
  return "";
}

// ---- fixture workspace helpers -----------------------------------------------

// Deterministic synthetic workspace shaped like the real study: 1997
// segments, 22 systems, four reference sets with realistic overlap.
struct SyntheticScale {
  std::size_t segments = 1997;
  int systems = 22;
};

std::vector<std::string> vocabulary() {
  std::vector<std::string> words;
  const char* stems[] = {"glocke", "kirche", "beben", "stadt", "wort",  "jahr",
                         "sagte",  "woche",  "mann",  "frau",  "kind",  "land",
                         "geld",   "spiel",  "markt", "regen", "licht", "nacht"};
  for (const char* stem : stems)
    for (int i = 0; i < 34; ++i) words.push_back(std::string(stem) + std::to_string(i));
  return words;
}

TokenSeq mutate(const TokenSeq& base, std::mt19937& rng, const std::vector<std::string>& vocab,
                double substitution, double indel, bool reorder) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  TokenSeq out;
  for (const auto& token : base) {
    if (coin(rng) < indel) continue;  // deletion
    out.push_back(coin(rng) < substitution ? vocab[pick(rng)] : token);
    if (coin(rng) < indel) out.push_back(vocab[pick(rng)]);  // insertion
  }
  if (out.empty()) out.push_back(vocab[pick(rng)]);
  if (reorder && out.size() > 4 && coin(rng) < 0.6) {
    std::uniform_int_distribution<std::size_t> start_dist(0, out.size() - 2);
    std::size_t start = start_dist(rng);
    std::size_t max_len = std::min<std::size_t>(4, out.size() - start);
    std::size_t len = 1 + rng() % max_len;
    TokenSeq block(out.begin() + start, out.begin() + start + len);
    out.erase(out.begin() + start, out.begin() + start + len);
    std::uniform_int_distribution<std::size_t> dest_dist(0, out.size());
    std::size_t dest = dest_dist(rng);
    out.insert(out.begin() + dest, block.begin(), block.end());
  }
  return out;
}

void write_synthetic_workspace(const fs::path& dir, const SyntheticScale& scale) {
  std::mt19937 rng(20240809);
  auto vocab = vocabulary();
  fs::create_directories(dir);

  std::vector<TokenSeq> base(scale.segments);
  for (auto& sent : base) sent = testutil::random_sentence(rng, 8, 30, 500);
  for (auto& sent : base)
    for (auto& token : sent) token = vocab[std::stoul(token.substr(1)) % vocab.size()];

  auto write_corpus = [&](const std::string& name, double substitution, double indel,
                          bool reorder) {
    std::ofstream out(dir / name, std::ios::binary);
    std::mt19937 local(std::hash<std::string>{}(name) & 0x7FFFFFFF);
    for (const auto& sent : base)
      out << testutil::join(mutate(sent, local, vocab, substitution, indel, reorder)) << "\n";
  };

  write_corpus("ref_WMT.txt", 0.0, 0.0, false);
  write_corpus("ref_AR.txt", 0.18, 0.02, false);
  write_corpus("ref_WMT.p.txt", 0.45, 0.08, true);
  write_corpus("ref_AR.p.txt", 0.5, 0.08, true);
  for (int s = 0; s < scale.systems; ++s) {
    double quality = 0.06 + 0.02 * s;  // spread of system qualities
    char name[32];
    std::snprintf(name, sizeof(name), "sys%02d.txt", s);
    write_corpus(name, quality, quality / 4, s % 3 != 0);
  }
}

cli::RunConfig synthetic_config(const fs::path& dir, const fs::path& out_dir) {
  cli::RunConfig config;
  config.systems_glob = (dir / "sys*.txt").string();
  config.refs = {{"WMT", (dir / "ref_WMT.txt").string()},
                 {"AR", (dir / "ref_AR.txt").string()},
                 {"WMT.p", (dir / "ref_WMT.p.txt").string()},
                 {"AR.p", (dir / "ref_AR.p.txt").string()}};
  config.metrics = {"bleu", "chrf", "ter"};
  config.out_dir = out_dir.string();
  return config;
}

std::string determinism() {
  testutil::TempDir dir;
  write_synthetic_workspace(dir.path() / "data", {40, 6});
  cli::RunConfig config = synthetic_config(dir.path() / "data", dir.path() / "out1");
  auto first = cli::cmd_score(config);
  config.out_dir = (dir.path() / "out2").string();
  auto second = cli::cmd_score(config);
  std::string a = testutil::slurp(first[0]);
  std::string b = testutil::slurp(second[0]);
  if (a.empty()) return "no output produced";
  return check(a == b, "two runs differ");
}

std::string performance() {
  testutil::TempDir dir;
  write_synthetic_workspace(dir.path() / "data", {});
  cli::RunConfig config = synthetic_config(dir.path() / "data", dir.path() / "out");
  auto start = std::chrono::steady_clock::now();
  cli::cmd_score(config);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(1);
  detail << elapsed << "s for 22 systems x 4 refsets x 3 metrics x 1997 segments";
  std::cout << "  info: " << detail.str() << "\n";
  return check(elapsed < 60.0, detail.str() + " exceeds 60s");
}

// ---- optional full reproduction ----------------------------------------------

struct Wmt19Data {
  fs::path root;
  std::vector<SystemOutput> systems;
  std::map<std::string, ReferenceSet> refs;
  HumanSystemScores human;
};

std::string full_reproduction() {
  const char* env = std::getenv("MTEVAL_WMT19_DIR");
  if (!env) return "skip:MTEVAL_WMT19_DIR not set; see README for the data layout";
  fs::path root(env);
  for (const char* required : {"systems", "refs/WMT.txt", "refs/WMT.p.txt", "human.tsv"})
    if (!fs::exists(root / required))
      return std::string("missing ") + required + " under " + root.string();

  Wmt19Data data;
  data.root = root;
  for (const auto& entry : fs::directory_iterator(root / "systems"))
    if (entry.is_regular_file())
      data.systems.push_back({entry.path().stem().string(), load_lines(entry.path().string())});
  std::sort(data.systems.begin(), data.systems.end(),
            [](const SystemOutput& a, const SystemOutput& b) {
              return a.system_name < b.system_name;
            });
  const std::vector<std::pair<std::string, std::string>> ref_files = {
      {"WMT", "WMT.txt"}, {"WMT.p", "WMT.p.txt"}, {"HQ(R)", "HQ-R.txt"}, {"HQ(P)", "HQ-P.txt"}};
  for (const auto& [name, file_name] : ref_files) {
    fs::path file = root / "refs" / file_name;
    if (fs::exists(file))
      data.refs.emplace(name, ReferenceSet{name, RefKind::standard, load_lines(file.string())});
  }
  data.human = load_human_scores((root / "human.tsv").string());

  // Published BLEU of the top seven submissions, +-0.05 after rounding.
  const std::vector<std::tuple<std::string, double, double>> top7 = {
      {"FB", 43.6, 15.1},      {"Micr.sd", 44.8, 14.9}, {"Micr.dl", 44.8, 14.9},
      {"MSRA", 46.0, 14.2},    {"UCAM", 44.1, 14.2},    {"NEU", 44.6, 14.0},
      {"MLLP", 42.4, 13.3}};
  std::map<std::string, std::map<std::string, double>> bleu_by_ref;
  for (const auto& [ref_name, ref] : data.refs) {
    for (const auto& system : data.systems)
      bleu_by_ref[ref_name][system.system_name] =
          score_system(system, ref, MetricKind::bleu).score;
  }
  for (const auto& [name, wmt_score, wmtp_score] : top7) {
    auto it = bleu_by_ref["WMT"].find(name);
    if (it == bleu_by_ref["WMT"].end()) return "system " + name + " not found";
    if (std::abs(it->second - wmt_score) > 0.05)
      return name + " vs WMT: got " + std::to_string(it->second) + ", expected " +
             std::to_string(wmt_score);
    double para = bleu_by_ref["WMT.p"].at(name);
    if (std::abs(para - wmtp_score) > 0.05)
      return name + " vs WMT.p: got " + std::to_string(para) + ", expected " +
             std::to_string(wmtp_score);
  }

  // Every system scores lower against the paraphrased reference.
  for (const auto& system : data.systems) {
    double wmt = bleu_by_ref["WMT"].at(system.system_name);
    double para = bleu_by_ref["WMT.p"].at(system.system_name);
    if (!(para < wmt))
      return system.system_name + ": WMT.p score " + std::to_string(para) +
             " is not below WMT score " + std::to_string(wmt);
  }

  // Published single-reference correlations over all 22 systems.
  CorrelationResult wmt_corr =
      correlate_systems(bleu_by_ref["WMT"], Orientation::higher_better, data.human);
  if (std::abs(wmt_corr.tau - 0.72) > 0.005)
    return "WMT tau " + std::to_string(wmt_corr.tau) + ", expected 0.72";
  CorrelationResult wmtp_corr =
      correlate_systems(bleu_by_ref["WMT.p"], Orientation::higher_better, data.human);
  if (std::abs(wmtp_corr.tau - 0.79) > 0.005)
    return "WMT.p tau " + std::to_string(wmtp_corr.tau) + ", expected 0.79";

  // Qualitative dominance of the paraphrased reference for small k.
  TopKCurve wmt_curve =
      topk_curve(bleu_by_ref["WMT"], Orientation::higher_better, data.human, 4);
  TopKCurve wmtp_curve =
      topk_curve(bleu_by_ref["WMT.p"], Orientation::higher_better, data.human, 4);
  for (std::size_t i = 0; i < wmt_curve.points.size(); ++i) {
    if (wmt_curve.points[i].k > 10) continue;
    if (wmtp_curve.points[i].tau < wmt_curve.points[i].tau)
      return "WMT.p curve dips below WMT at k=" + std::to_string(wmt_curve.points[i].k);
  }

  // Most-matched 4-gram of the winning submission against WMT.
  const SystemOutput* fb = nullptr;
  for (const auto& system : data.systems)
    if (system.system_name == "FB") fb = &system;
  if (!fb) return "system FB not found";
  std::vector<TokenSeq> hyp_tokens, ref_tokens;
  for (const auto& line : fb->hypotheses) hyp_tokens.push_back(tokenize_intl(line));
  for (const auto& line : data.refs.at("WMT").translations)
    ref_tokens.push_back(tokenize_intl(line));
  NgramMatchReport report = matched_ngram_report(hyp_tokens, ref_tokens, 4, 1);
  if (report.rows.empty()) return "empty 4-gram report";
  Ngram expected = {",", "sagte", "er", "."};
  if (report.rows[0].ngram != expected || report.rows[0].count != 28)
    return "top 4-gram differs from ', sagte er .' x 28";
  return "";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"metric-oracles/bleu-identity-corpus", bleu_identity},
      {"metric-oracles/bleu-exp-smoothing-fixture", bleu_smoothing_fixture},
      {"metric-oracles/bleu-multireference-collapse", bleu_multiref_collapse},
      {"metric-oracles/chrf-identity-corpus", chrf_identity},
      {"metric-oracles/ter-greedy-equals-exhaustive", ter_greedy_vs_exhaustive},
      {"correlation-oracles/kendall-pair-enumeration", kendall_matches_enumeration},
      {"correlation-oracles/spearman-fixture", spearman_fixture},
      {"correlation-oracles/monotone-transform-invariance", monotone_invariance},
      {"published-fixtures/ranking-verdicts", ranking_verdicts_fixture},
      {"published-fixtures/top7-tau-with-tie", top7_tau_fixture},
      {"alignment/monotonicity-hand-built", monotonicity_properties},
      {"determinism/score-runs-byte-identical", determinism},
      {"performance/full-grid-under-60s", performance},
      {"full-reproduction/wmt19", full_reproduction, true},
  };
  for (const auto& criterion : criteria) run_criterion(criterion);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
