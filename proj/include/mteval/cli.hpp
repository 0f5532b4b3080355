#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mteval/corpus.hpp"

namespace mteval::cli {

struct RunConfig {
  std::string source_path;  // test-set source lines (optional)
  std::string lang_pair = "en-de";
  std::string systems_glob;
  std::vector<std::pair<std::string, std::string>> refs;  // (name, path), order matters
  std::vector<std::string> multi_refs;                    // "A+B" bundles, BLEU only
  std::vector<std::string> metrics = {"bleu"};
  std::string ratings_path;
  std::string human_path;
  std::string external_path;
  std::string origin_tags_path;
  std::vector<std::pair<std::string, std::string>> alignments;  // (name, path)
  std::string origin;       // restrict to segments with this origin tag
  std::size_t topk_min = 0;  // 0 disables curves
  std::string format = "tsv";
  bool lowercase = false;
  int ngram_order = 4;
  std::size_t ngram_top = 20;

  // Execution details, not part of the embedded provenance.
  std::string out_dir = ".";
  int threads = 0;  // 0 = hardware concurrency
};

// Canonical single-line JSON form embedded in every report.
std::string canonical_config(const RunConfig& config);

// Merges a JSON config file under the same keys; flags override file values,
// so this fills only fields the caller has not set.
void apply_config_file(const std::string& path, RunConfig& config,
                       const std::map<std::string, bool>& overridden);

Workspace load_workspace(const RunConfig& config);

// Each command returns the paths it wrote. Validation failures throw before
// any file is written; writes are temp-file + atomic rename.
std::vector<std::string> cmd_score(const RunConfig& config);
std::vector<std::string> cmd_correlate(const RunConfig& config);
std::vector<std::string> cmd_compose_hq(const RunConfig& config);
std::vector<std::string> cmd_ngram_report(const RunConfig& config);
std::vector<std::string> cmd_monotonicity(const RunConfig& config);

// Prints the validation report; returns true when the workspace passes.
bool cmd_validate(const RunConfig& config, std::string& report_text);

}  // namespace mteval::cli
