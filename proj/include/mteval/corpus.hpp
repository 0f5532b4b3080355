#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mteval {

struct Segment {
  std::size_t index = 0;
  std::string source_text;
  std::optional<std::string> origin_language;
};

struct TestSet {
  std::string name;
  std::vector<Segment> segments;
  std::pair<std::string, std::string> language_pair;  // (source, target)

  std::size_t size() const { return segments.size(); }
};

struct SystemOutput {
  std::string system_name;
  std::vector<std::string> hypotheses;
};

enum class RefKind { standard, paraphrase, composed };

struct ReferenceSet {
  std::string name;
  RefKind kind = RefKind::standard;
  std::vector<std::string> translations;
};

// Member order is significant: it is the tie-breaking priority downstream.
struct MultiReference {
  std::vector<std::string> member_names;
  std::vector<std::vector<std::string>> per_segment;

  std::string name() const;
};

struct RatingKey {
  std::size_t segment = 0;
  std::string refset;
  std::string rater;

  auto operator<=>(const RatingKey&) const = default;
};

struct AdequacyRatings {
  std::map<RatingKey, double> entries;
};

struct HumanSystemScores {
  std::map<std::string, double> scores;
  bool normalized = false;
};

enum class Orientation { higher_better, lower_better };

struct ExternalMetricScores {
  std::string metric_name;
  Orientation orientation = Orientation::higher_better;
  std::map<std::string, double> scores;
};

struct AlignmentLink {
  std::size_t src = 0;
  std::size_t tgt = 0;

  auto operator<=>(const AlignmentLink&) const = default;
};

struct AlignmentSet {
  std::string name;
  std::vector<std::vector<AlignmentLink>> segments;
};

// Everything a run operates on. All members are immutable after loading;
// any operation may run concurrently on the same workspace.
struct Workspace {
  TestSet test_set;
  std::vector<SystemOutput> systems;
  std::vector<ReferenceSet> refsets;
  AdequacyRatings ratings;
  std::optional<HumanSystemScores> human_scores;
  std::vector<ExternalMetricScores> external_scores;
  std::vector<AlignmentSet> alignments;

  const ReferenceSet* find_refset(const std::string& name) const;
  const SystemOutput* find_system(const std::string& name) const;
};

// ---- loaders -------------------------------------------------------------

// One string per line; trailing newline insensitive; CR stripped; interior
// whitespace preserved byte for byte.
std::vector<std::string> load_lines(const std::string& path);

// Rows: segment_index<TAB>refset_name<TAB>rater_id<TAB>rating
AdequacyRatings load_ratings(const std::string& path);

// Pharaoh format: per line, space-separated `i-j` pairs, 0-based.
AlignmentSet load_alignments(const std::string& path);

// Rows: segment_index<TAB>language_code
std::map<std::size_t, std::string> load_origin_tags(const std::string& path);

// Rows: system_name<TAB>score
HumanSystemScores load_human_scores(const std::string& path, bool normalized = false);

// Rows: metric<TAB>orientation<TAB>system<TAB>score
std::vector<ExternalMetricScores> load_external_scores(const std::string& path);

// ---- validation ----------------------------------------------------------

struct Violation {
  std::string file;       // artifact name
  std::string what;       // e.g. LengthMismatch(expected 1997, got 1996)
  std::size_t line = 0;   // 1-based where meaningful, 0 otherwise
};

struct ValidationReport {
  std::vector<Violation> errors;
  std::vector<Violation> warnings;

  bool ok() const { return errors.empty(); }
};

ValidationReport validate_workspace(const Workspace& ws);

// ---- origin filtering ------------------------------------------------------

struct FilteredWorkspace {
  Workspace workspace;
  std::vector<std::size_t> old_indices;  // new index -> old index
};

// Restricts every line-aligned artifact to segments whose origin tag equals
// `origin`, renumbering contiguously.
FilteredWorkspace filter_by_origin(const Workspace& ws, const std::string& origin);

const char* to_string(RefKind kind);
const char* to_string(Orientation o);
Orientation parse_orientation(const std::string& text);

}  // namespace mteval
