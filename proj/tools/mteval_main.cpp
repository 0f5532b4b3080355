// Command-line front end: score, correlate, compose-hq, ngram-report,
// monotonicity, validate.

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mteval/cli.hpp"
#include "mteval/error.hpp"

namespace {

struct FlagState {
  mteval::cli::RunConfig config;
  std::string config_file;
  std::vector<std::string> refs_raw;
  std::vector<std::string> alignments_raw;
  std::string metrics_raw;
};

std::pair<std::string, std::string> split_name_path(const std::string& arg, const char* flag) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
    throw mteval::Error(mteval::ErrorCode::BadArgument,
                        std::string(flag) + " expects name=path, got '" + arg + "'");
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) {
      if (start < text.size()) parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

void add_common_flags(CLI::App* cmd, FlagState& state) {
  cmd->add_option("--config", state.config_file, "JSON config file; flags override it");
  cmd->add_option("--source", state.config.source_path, "test-set source file");
  cmd->add_option("--lang-pair", state.config.lang_pair, "language pair, e.g. en-de");
  cmd->add_option("--systems", state.config.systems_glob, "glob of system output files");
  cmd->add_option("--refs", state.refs_raw, "reference sets as name=path (order matters)");
  cmd->add_option("--multi-ref", state.config.multi_refs,
                  "multi-reference bundle like WMT+AR (BLEU only)");
  cmd->add_option("--metrics", state.metrics_raw, "comma list: bleu,chrf,ter");
  cmd->add_option("--ratings", state.config.ratings_path, "adequacy ratings TSV");
  cmd->add_option("--human", state.config.human_path, "human system scores TSV");
  cmd->add_option("--external-scores", state.config.external_path, "external metric TSV");
  cmd->add_option("--origin-tags", state.config.origin_tags_path, "origin-language TSV");
  cmd->add_option("--alignments", state.alignments_raw, "alignment files as name=path");
  cmd->add_option("--origin", state.config.origin, "keep only segments with this origin");
  cmd->add_option("--topk", state.config.topk_min, "emit top-k curves down to this k");
  cmd->add_option("--out", state.config.out_dir, "output directory");
  cmd->add_option("--format", state.config.format, "tsv|json|csv");
  cmd->add_flag("--lowercase", state.config.lowercase, "lowercase before tokenization");
  cmd->add_option("--order", state.config.ngram_order, "n-gram order for reports");
  cmd->add_option("--top", state.config.ngram_top, "rows in n-gram reports");
  cmd->add_option("--threads", state.config.threads, "worker threads (0 = auto)");
}

void finalize(CLI::App* cmd, FlagState& state) {
  if (!state.config_file.empty()) {
    std::map<std::string, bool> overridden = {
        {"source", cmd->count("--source") > 0},
        {"lang_pair", cmd->count("--lang-pair") > 0},
        {"systems", cmd->count("--systems") > 0},
        {"refs", cmd->count("--refs") > 0},
        {"multi_refs", cmd->count("--multi-ref") > 0},
        {"metrics", cmd->count("--metrics") > 0},
        {"ratings", cmd->count("--ratings") > 0},
        {"human", cmd->count("--human") > 0},
        {"external_scores", cmd->count("--external-scores") > 0},
        {"origin_tags", cmd->count("--origin-tags") > 0},
        {"alignments", cmd->count("--alignments") > 0},
        {"origin", cmd->count("--origin") > 0},
        {"topk_min", cmd->count("--topk") > 0},
        {"format", cmd->count("--format") > 0},
        {"lowercase", cmd->count("--lowercase") > 0},
        {"ngram_order", cmd->count("--order") > 0},
        {"ngram_top", cmd->count("--top") > 0},
        {"out", cmd->count("--out") > 0},
        {"threads", cmd->count("--threads") > 0},
    };
    // The file may carry refs/alignments/metrics directly.
    mteval::cli::apply_config_file(state.config_file, state.config, overridden);
  }
  for (const auto& raw : state.refs_raw)
    state.config.refs.push_back(split_name_path(raw, "--refs"));
  for (const auto& raw : state.alignments_raw)
    state.config.alignments.push_back(split_name_path(raw, "--alignments"));
  if (!state.metrics_raw.empty()) state.config.metrics = split_commas(state.metrics_raw);
}

int report_outputs(const std::vector<std::string>& paths) {
  for (const auto& path : paths) std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meta-evaluation toolkit for machine translation"};
  app.require_subcommand(1);

  FlagState state;
  auto* score = app.add_subcommand("score", "score systems against reference sets");
  auto* correlate = app.add_subcommand("correlate", "correlate metric scores with human scores");
  auto* compose = app.add_subcommand("compose-hq", "compose the best-rated reference set");
  auto* ngrams = app.add_subcommand("ngram-report", "report matched n-grams");
  auto* mono = app.add_subcommand("monotonicity", "mean absolute alignment distance");
  auto* validate = app.add_subcommand("validate", "check workspace consistency");
  for (auto* cmd : {score, correlate, compose, ngrams, mono, validate})
    add_common_flags(cmd, state);

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();

  try {
    finalize(cmd, state);
    if (cmd == score) return report_outputs(mteval::cli::cmd_score(state.config));
    if (cmd == correlate) return report_outputs(mteval::cli::cmd_correlate(state.config));
    if (cmd == compose) return report_outputs(mteval::cli::cmd_compose_hq(state.config));
    if (cmd == ngrams) return report_outputs(mteval::cli::cmd_ngram_report(state.config));
    if (cmd == mono) return report_outputs(mteval::cli::cmd_monotonicity(state.config));
    if (cmd == validate) {
      std::string text;
      bool ok = mteval::cli::cmd_validate(state.config, text);
      std::cout << text;
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "mteval: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
