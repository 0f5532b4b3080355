#include "mteval/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mteval/error.hpp"
#include "mteval/unicode.hpp"

namespace mteval {

namespace {

std::string read_file(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorCode::MissingFile, path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::size_t parse_index(const std::string& text, const std::string& path, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::MalformedRow,
                path + ":" + std::to_string(line_no) + ": bad index '" + text + "'");
  return value;
}

double parse_number(const std::string& text, const std::string& path, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedRow,
                path + ":" + std::to_string(line_no) + ": bad number '" + text + "'");
  }
}

}  // namespace

std::string MultiReference::name() const {
  std::string out;
  for (const auto& m : member_names) {
    if (!out.empty()) out += '+';
    out += m;
  }
  return out;
}

const ReferenceSet* Workspace::find_refset(const std::string& name) const {
  for (const auto& r : refsets)
    if (r.name == name) return &r;
  return nullptr;
}

const SystemOutput* Workspace::find_system(const std::string& name) const {
  for (const auto& s : systems)
    if (s.system_name == name) return &s;
  return nullptr;
}

std::vector<std::string> load_lines(const std::string& path) {
  std::string bytes = read_file(path);
  if (bytes.empty()) throw Error(ErrorCode::EmptyFile, path);
  if (!unicode::is_valid_utf8(bytes)) throw Error(ErrorCode::InvalidEncoding, path);

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= bytes.size()) {
    std::size_t nl = bytes.find('\n', start);
    if (nl == std::string::npos) {
      if (start < bytes.size()) lines.push_back(bytes.substr(start));
      break;
    }
    std::size_t end = nl;
    if (end > start && bytes[end - 1] == '\r') --end;  // CRLF
    lines.push_back(bytes.substr(start, end - start));
    start = nl + 1;
  }
  return lines;
}

AdequacyRatings load_ratings(const std::string& path) {
  AdequacyRatings ratings;
  std::vector<std::string> lines = load_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_tabs(lines[i]);
    if (fields.size() != 4)
      throw Error(ErrorCode::MalformedRow,
                  path + ":" + std::to_string(i + 1) + ": expected 4 columns, got " +
                      std::to_string(fields.size()));
    RatingKey key{parse_index(fields[0], path, i + 1), fields[1], fields[2]};
    double rating = parse_number(fields[3], path, i + 1);
    if (rating < 0.0 || rating > 100.0)
      throw Error(ErrorCode::OutOfRange,
                  path + ":" + std::to_string(i + 1) + ": rating " + fields[3]);
    if (!ratings.entries.emplace(std::move(key), rating).second)
      throw Error(ErrorCode::Duplicate,
                  path + ":" + std::to_string(i + 1) + ": repeated (segment, set, rater)");
  }
  return ratings;
}

AlignmentSet load_alignments(const std::string& path) {
  AlignmentSet set;
  set.name = std::filesystem::path(path).stem().string();
  std::vector<std::string> lines = load_lines(path);
  set.segments.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<AlignmentLink> links;
    std::istringstream in(lines[i]);
    std::string pair;
    while (in >> pair) {
      std::size_t dash = pair.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 == pair.size())
        throw Error(ErrorCode::MalformedRow,
                    path + ":" + std::to_string(i + 1) + ": bad link '" + pair + "'");
      links.push_back({parse_index(pair.substr(0, dash), path, i + 1),
                       parse_index(pair.substr(dash + 1), path, i + 1)});
    }
    set.segments.push_back(std::move(links));
  }
  return set;
}

std::map<std::size_t, std::string> load_origin_tags(const std::string& path) {
  std::map<std::size_t, std::string> tags;
  std::vector<std::string> lines = load_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_tabs(lines[i]);
    if (fields.size() != 2)
      throw Error(ErrorCode::MalformedRow,
                  path + ":" + std::to_string(i + 1) + ": expected 2 columns");
    std::size_t index = parse_index(fields[0], path, i + 1);
    if (!tags.emplace(index, fields[1]).second)
      throw Error(ErrorCode::Duplicate,
                  path + ":" + std::to_string(i + 1) + ": repeated segment index");
  }
  return tags;
}

HumanSystemScores load_human_scores(const std::string& path, bool normalized) {
  HumanSystemScores scores;
  scores.normalized = normalized;
  std::vector<std::string> lines = load_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_tabs(lines[i]);
    if (fields.size() != 2)
      throw Error(ErrorCode::MalformedRow,
                  path + ":" + std::to_string(i + 1) + ": expected 2 columns");
    if (!scores.scores.emplace(fields[0], parse_number(fields[1], path, i + 1)).second)
      throw Error(ErrorCode::Duplicate,
                  path + ":" + std::to_string(i + 1) + ": system '" + fields[0] + "'");
  }
  return scores;
}

std::vector<ExternalMetricScores> load_external_scores(const std::string& path) {
  std::vector<ExternalMetricScores> result;
  std::vector<std::string> lines = load_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_tabs(lines[i]);
    if (fields.size() != 4)
      throw Error(ErrorCode::MalformedRow,
                  path + ":" + std::to_string(i + 1) + ": expected 4 columns");
    Orientation orientation = parse_orientation(fields[1]);
    auto it = std::find_if(result.begin(), result.end(),
                           [&](const ExternalMetricScores& m) { return m.metric_name == fields[0]; });
    if (it == result.end()) {
      result.push_back({fields[0], orientation, {}});
      it = result.end() - 1;
    } else if (it->orientation != orientation) {
      throw Error(ErrorCode::MalformedRow,
                  path + ":" + std::to_string(i + 1) + ": conflicting orientation for '" +
                      fields[0] + "'");
    }
    if (!it->scores.emplace(fields[2], parse_number(fields[3], path, i + 1)).second)
      throw Error(ErrorCode::Duplicate,
                  path + ":" + std::to_string(i + 1) + ": system '" + fields[2] +
                      "' scored twice for '" + fields[0] + "'");
  }
  return result;
}

ValidationReport validate_workspace(const Workspace& ws) {
  ValidationReport report;
  const std::size_t n = ws.test_set.size();

  if (n == 0) {
    report.errors.push_back({ws.test_set.name, "EmptyTestSet", 0});
    return report;
  }

  auto check_length = [&](const std::string& name, std::size_t got) {
    if (got != n)
      report.errors.push_back({name,
                               "LengthMismatch(expected " + std::to_string(n) + ", got " +
                                   std::to_string(got) + ")",
                               got < n ? got + 1 : n + 1});
  };

  for (const auto& sys : ws.systems) check_length(sys.system_name, sys.hypotheses.size());
  for (const auto& ref : ws.refsets) check_length(ref.name, ref.translations.size());
  for (const auto& al : ws.alignments) check_length(al.name, al.segments.size());

  // Ratings must reference known refsets and in-range segments; coverage
  // gaps are warnings.
  std::set<std::string> rated_sets;
  for (const auto& [key, value] : ws.ratings.entries) {
    rated_sets.insert(key.refset);
    if (key.segment >= n)
      report.errors.push_back(
          {"ratings", "OutOfBounds(segment " + std::to_string(key.segment) + ")", 0});
    if (!ws.find_refset(key.refset))
      report.errors.push_back({"ratings", "UnknownRefset(" + key.refset + ")", 0});
  }
  for (const auto& set_name : rated_sets) {
    std::vector<bool> covered(n, false);
    for (const auto& [key, value] : ws.ratings.entries)
      if (key.refset == set_name && key.segment < n) covered[key.segment] = true;
    std::size_t missing = std::count(covered.begin(), covered.end(), false);
    if (missing > 0)
      report.warnings.push_back(
          {"ratings", "IncompleteRatings(" + set_name + ", " + std::to_string(missing) +
                          " unrated segments)",
           0});
  }

  if (ws.human_scores) {
    for (const auto& [system, score] : ws.human_scores->scores)
      if (!ws.find_system(system))
        report.errors.push_back({"human_scores", "UnknownSystem(" + system + ")", 0});
  }
  for (const auto& ext : ws.external_scores)
    for (const auto& [system, score] : ext.scores)
      if (!ws.find_system(system))
        report.errors.push_back(
            {"external:" + ext.metric_name, "UnknownSystem(" + system + ")", 0});

  return report;
}

FilteredWorkspace filter_by_origin(const Workspace& ws, const std::string& origin) {
  if (origin != ws.test_set.language_pair.first && origin != ws.test_set.language_pair.second)
    throw Error(ErrorCode::NoSuchOrigin,
                "'" + origin + "' is not a language of this pair");

  std::vector<std::size_t> keep;
  for (const auto& seg : ws.test_set.segments) {
    if (!seg.origin_language)
      throw Error(ErrorCode::MissingOriginTags,
                  "segment " + std::to_string(seg.index) + " has no origin tag");
    if (*seg.origin_language == origin) keep.push_back(seg.index);
  }
  if (keep.empty()) throw Error(ErrorCode::EmptyResult, "no segment originates in " + origin);

  FilteredWorkspace out;
  out.old_indices = keep;
  Workspace& fw = out.workspace;

  fw.test_set.name = ws.test_set.name;
  fw.test_set.language_pair = ws.test_set.language_pair;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Segment seg = ws.test_set.segments[keep[i]];
    seg.index = i;
    fw.test_set.segments.push_back(std::move(seg));
  }

  auto project = [&](const std::vector<std::string>& lines) {
    std::vector<std::string> out_lines;
    out_lines.reserve(keep.size());
    for (std::size_t old : keep) out_lines.push_back(lines[old]);
    return out_lines;
  };

  for (const auto& sys : ws.systems)
    fw.systems.push_back({sys.system_name, project(sys.hypotheses)});
  for (const auto& ref : ws.refsets)
    fw.refsets.push_back({ref.name, ref.kind, project(ref.translations)});
  for (const auto& al : ws.alignments) {
    AlignmentSet filtered{al.name, {}};
    filtered.segments.reserve(keep.size());
    for (std::size_t old : keep) filtered.segments.push_back(al.segments[old]);
    fw.alignments.push_back(std::move(filtered));
  }

  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < keep.size(); ++i) renumber[keep[i]] = i;
  for (const auto& [key, value] : ws.ratings.entries) {
    auto it = renumber.find(key.segment);
    if (it != renumber.end())
      fw.ratings.entries.emplace(RatingKey{it->second, key.refset, key.rater}, value);
  }

  fw.human_scores = ws.human_scores;
  fw.external_scores = ws.external_scores;
  return out;
}

const char* to_string(RefKind kind) {
  switch (kind) {
    case RefKind::standard: return "standard";
    case RefKind::paraphrase: return "paraphrase";
    case RefKind::composed: return "composed";
  }
  return "standard";
}

const char* to_string(Orientation o) {
  return o == Orientation::higher_better ? "higher_better" : "lower_better";
}

Orientation parse_orientation(const std::string& text) {
  if (text == "higher_better") return Orientation::higher_better;
  if (text == "lower_better") return Orientation::lower_better;
  throw Error(ErrorCode::MalformedRow, "orientation must be higher_better or lower_better, got '" +
                                           text + "'");
}

}  // namespace mteval
