#include "mteval/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>

#include <json.hpp>

#include "mteval/analysis.hpp"
#include "mteval/correlate.hpp"
#include "mteval/error.hpp"
#include "mteval/refsets.hpp"
#include "mteval/scorer.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace mteval::cli {

namespace {

// ---- small utilities -------------------------------------------------------

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
  return out;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void atomic_write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
    }
  }
  fs::rename(tmp, path);
}

bool glob_match(const std::string& pattern, const std::string& name) {
  std::size_t p = 0, n = 0, star = std::string::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  fs::path full(pattern);
  fs::path dir = full.parent_path().empty() ? fs::path(".") : full.parent_path();
  std::string file_pattern = full.filename().string();
  std::vector<fs::path> matches;
  if (!fs::exists(dir)) return matches;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && glob_match(file_pattern, entry.path().filename().string()))
      matches.push_back(entry.path());
  std::sort(matches.begin(), matches.end());
  return matches;
}

// Runs tasks over an index range on a few threads; result slots keep input
// order, so assembly is deterministic regardless of completion order.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : (hw ? hw : 1);
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= count) break;
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- config ----------------------------------------------------------------

json provenance_json(const RunConfig& c) {
  json j;
  j["command_version"] = kImplVersion;
  j["source"] = c.source_path;
  j["lang_pair"] = c.lang_pair;
  j["systems"] = c.systems_glob;
  json refs = json::array();
  for (const auto& [name, path] : c.refs) refs.push_back({{"name", name}, {"path", path}});
  j["refs"] = refs;
  j["multi_refs"] = c.multi_refs;
  j["metrics"] = c.metrics;
  j["ratings"] = c.ratings_path;
  j["human"] = c.human_path;
  j["external_scores"] = c.external_path;
  j["origin_tags"] = c.origin_tags_path;
  json aligns = json::array();
  for (const auto& [name, path] : c.alignments) aligns.push_back({{"name", name}, {"path", path}});
  j["alignments"] = aligns;
  j["origin"] = c.origin;
  j["topk_min"] = c.topk_min;
  j["format"] = c.format;
  j["lowercase"] = c.lowercase;
  j["ngram_order"] = c.ngram_order;
  j["ngram_top"] = c.ngram_top;
  return j;
}

}  // namespace

std::string canonical_config(const RunConfig& config) {
  return provenance_json(config).dump();
}

void apply_config_file(const std::string& path, RunConfig& config,
                       const std::map<std::string, bool>& overridden) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MissingFile, path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, path + ": " + e.what());
  }
  auto set = [&](const char* key, auto&& apply) {
    auto it = overridden.find(key);
    bool from_flags = it != overridden.end() && it->second;
    if (!from_flags && j.contains(key)) apply(j.at(key));
  };
  set("source", [&](const json& v) { config.source_path = v.get<std::string>(); });
  set("lang_pair", [&](const json& v) { config.lang_pair = v.get<std::string>(); });
  set("systems", [&](const json& v) { config.systems_glob = v.get<std::string>(); });
  set("refs", [&](const json& v) {
    config.refs.clear();
    for (const auto& r : v)
      config.refs.emplace_back(r.at("name").get<std::string>(), r.at("path").get<std::string>());
  });
  set("multi_refs", [&](const json& v) { config.multi_refs = v.get<std::vector<std::string>>(); });
  set("metrics", [&](const json& v) { config.metrics = v.get<std::vector<std::string>>(); });
  set("ratings", [&](const json& v) { config.ratings_path = v.get<std::string>(); });
  set("human", [&](const json& v) { config.human_path = v.get<std::string>(); });
  set("external_scores", [&](const json& v) { config.external_path = v.get<std::string>(); });
  set("origin_tags", [&](const json& v) { config.origin_tags_path = v.get<std::string>(); });
  set("alignments", [&](const json& v) {
    config.alignments.clear();
    for (const auto& a : v)
      config.alignments.emplace_back(a.at("name").get<std::string>(),
                                     a.at("path").get<std::string>());
  });
  set("origin", [&](const json& v) { config.origin = v.get<std::string>(); });
  set("topk_min", [&](const json& v) { config.topk_min = v.get<std::size_t>(); });
  set("format", [&](const json& v) { config.format = v.get<std::string>(); });
  set("lowercase", [&](const json& v) { config.lowercase = v.get<bool>(); });
  set("ngram_order", [&](const json& v) { config.ngram_order = v.get<int>(); });
  set("ngram_top", [&](const json& v) { config.ngram_top = v.get<std::size_t>(); });
  set("out", [&](const json& v) { config.out_dir = v.get<std::string>(); });
  set("threads", [&](const json& v) { config.threads = v.get<int>(); });
}

Workspace load_workspace(const RunConfig& config) {
  Workspace ws;
  auto dash = config.lang_pair.find('-');
  if (dash == std::string::npos)
    throw Error(ErrorCode::BadArgument, "lang pair must look like en-de");
  ws.test_set.language_pair = {config.lang_pair.substr(0, dash),
                               config.lang_pair.substr(dash + 1)};

  std::vector<std::string> source_lines;
  if (!config.source_path.empty()) {
    source_lines = load_lines(config.source_path);
    ws.test_set.name = fs::path(config.source_path).stem().string();
  }

  for (const auto& [name, path] : config.refs) {
    RefKind kind = name.size() > 2 && name.ends_with(".p") ? RefKind::paraphrase
                                                           : RefKind::standard;
    if (name.starts_with("HQ(")) kind = RefKind::composed;
    ws.refsets.push_back({name, kind, load_lines(path)});
  }
  std::set<std::string> seen;
  for (const auto& r : ws.refsets)
    if (!seen.insert(r.name).second)
      throw Error(ErrorCode::Duplicate, "reference set '" + r.name + "' given twice");

  if (!config.systems_glob.empty()) {
    auto files = expand_glob(config.systems_glob);
    if (files.empty())
      throw Error(ErrorCode::MissingFile, "no files match '" + config.systems_glob + "'");
    for (const auto& file : files)
      ws.systems.push_back({file.stem().string(), load_lines(file.string())});
  }

  for (const auto& [name, path] : config.alignments) {
    AlignmentSet set = load_alignments(path);
    set.name = name;
    ws.alignments.push_back(std::move(set));
  }

  // The test set is the line-count authority; without a source file it is
  // sized from the first loaded artifact.
  std::size_t n = source_lines.size();
  if (n == 0 && !ws.refsets.empty()) n = ws.refsets[0].translations.size();
  if (n == 0 && !ws.systems.empty()) n = ws.systems[0].hypotheses.size();
  if (n == 0 && !ws.alignments.empty()) n = ws.alignments[0].segments.size();
  if (n == 0) throw Error(ErrorCode::EmptyResult, "workspace has no segments");
  if (ws.test_set.name.empty()) ws.test_set.name = "testset";

  std::map<std::size_t, std::string> origin_tags;
  if (!config.origin_tags_path.empty()) origin_tags = load_origin_tags(config.origin_tags_path);

  ws.test_set.segments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Segment seg;
    seg.index = i;
    if (i < source_lines.size()) seg.source_text = source_lines[i];
    auto it = origin_tags.find(i);
    if (it != origin_tags.end()) seg.origin_language = it->second;
    ws.test_set.segments.push_back(std::move(seg));
  }

  if (!config.ratings_path.empty()) ws.ratings = load_ratings(config.ratings_path);
  if (!config.human_path.empty()) ws.human_scores = load_human_scores(config.human_path);
  if (!config.external_path.empty()) ws.external_scores = load_external_scores(config.external_path);
  return ws;
}

namespace {

std::string validation_text(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.errors) {
    out += "error: " + v.file;
    if (v.line > 0) out += ":" + std::to_string(v.line);
    out += ": " + v.what + "\n";
  }
  for (const auto& v : report.warnings) {
    out += "warning: " + v.file;
    if (v.line > 0) out += ":" + std::to_string(v.line);
    out += ": " + v.what + "\n";
  }
  out += report.ok() ? "OK" : "FAILED";
  out += ": " + std::to_string(report.errors.size()) + " error(s), " +
         std::to_string(report.warnings.size()) + " warning(s)\n";
  return out;
}

Workspace load_validated(const RunConfig& config) {
  Workspace ws = load_workspace(config);
  ValidationReport report = validate_workspace(ws);
  if (!report.ok())
    throw Error(ErrorCode::LengthMismatch, "workspace validation failed\n" + validation_text(report));
  if (!config.origin.empty()) {
    FilteredWorkspace filtered = filter_by_origin(ws, config.origin);
    ws = std::move(filtered.workspace);
  }
  return ws;
}

// One output table; formats render rows uniformly.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_table(const Table& table, const std::string& format,
                         const std::string& config_line) {
  if (format == "json") {
    json j;
    j["config"] = json::parse(config_line);
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r;
      for (std::size_t c = 0; c < table.columns.size(); ++c) r[table.columns[c]] = row[c];
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
  }
  const char sep = format == "csv" ? ',' : '\t';
  std::string out = "# config " + config_line + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += sep;
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += sep;
      out += format == "csv" ? csv_field(row[c]) : row[c];
    }
    out += '\n';
  }
  return out;
}

std::string table_extension(const std::string& format) {
  if (format == "json") return ".json";
  if (format == "csv") return ".csv";
  if (format == "tsv") return ".tsv";
  throw Error(ErrorCode::BadArgument, "format must be tsv, json or csv, got '" + format + "'");
}

ScoreOptions score_options(const RunConfig& config) {
  ScoreOptions options;
  options.casing = config.lowercase ? Casing::lower : Casing::mixed;
  return options;
}

// Scores are tabulated on a 0-100 scale, so TER appears as a percentage.
double display_score(MetricKind metric, double score) {
  return metric == MetricKind::ter ? 100.0 * score : score;
}

struct RefTarget {
  std::string name;
  const ReferenceSet* single = nullptr;
  std::optional<MultiReference> multi;
};

std::vector<RefTarget> ref_targets(const Workspace& ws, const RunConfig& config) {
  std::vector<RefTarget> targets;
  for (const auto& ref : ws.refsets) targets.push_back({ref.name, &ref, std::nullopt});
  for (const auto& bundle : config.multi_refs) {
    std::vector<const ReferenceSet*> members;
    std::string name;
    std::size_t start = 0;
    while (start <= bundle.size()) {
      std::size_t plus = bundle.find('+', start);
      std::string member =
          plus == std::string::npos ? bundle.substr(start) : bundle.substr(start, plus - start);
      const ReferenceSet* ref = ws.find_refset(member);
      if (!ref)
        throw Error(ErrorCode::BadArgument,
                    "multi-ref member '" + member + "' is not a loaded reference set");
      members.push_back(ref);
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    MultiReference multi = assemble_multi(members);
    targets.push_back({multi.name(), nullptr, std::move(multi)});
  }
  return targets;
}

}  // namespace

std::vector<std::string> cmd_score(const RunConfig& config) {
  Workspace ws = load_validated(config);
  if (ws.systems.empty()) throw Error(ErrorCode::BadArgument, "score needs --systems");
  if (ws.refsets.empty()) throw Error(ErrorCode::BadArgument, "score needs --refs");

  std::vector<MetricKind> metrics;
  for (const auto& m : config.metrics) metrics.push_back(parse_metric(m));
  std::vector<RefTarget> targets = ref_targets(ws, config);
  ScoreOptions options = score_options(config);

  struct Task {
    const SystemOutput* system;
    const RefTarget* target;
    MetricKind metric;
  };
  std::vector<Task> tasks;
  for (const auto& system : ws.systems)
    for (const auto& target : targets)
      for (MetricKind metric : metrics) {
        if (target.multi && metric != MetricKind::bleu) continue;  // multi-ref is BLEU-only
        tasks.push_back({&system, &target, metric});
      }

  std::vector<MetricResult> results(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    results[i] = t.target->multi
                     ? score_system(*t.system, *t.target->multi, t.metric, options)
                     : score_system(*t.system, *t.target->single, t.metric, options);
  });

  std::vector<std::size_t> order(tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto key = [&](std::size_t i) {
      return std::tie(tasks[i].system->system_name, tasks[i].target->name,
                      results[i].metric_name);
    };
    return key(a) < key(b);
  });

  Table table;
  table.columns = {"system", "refset", "metric", "score", "signature"};
  for (std::size_t i : order) {
    const Task& t = tasks[i];
    table.rows.push_back({t.system->system_name, t.target->name, results[i].metric_name,
                          format_fixed(display_score(t.metric, results[i].score), 1),
                          results[i].signature});
  }

  std::string config_line = canonical_config(config);
  fs::path out = fs::path(config.out_dir) / ("scores" + table_extension(config.format));
  atomic_write(out, render_table(table, config.format, config_line));
  return {out.string()};
}

std::vector<std::string> cmd_correlate(const RunConfig& config) {
  Workspace ws = load_validated(config);
  if (!ws.human_scores)
    throw Error(ErrorCode::BadArgument, "correlate needs --human scores");
  if (ws.systems.empty() && ws.external_scores.empty())
    throw Error(ErrorCode::BadArgument, "correlate needs --systems or --external-scores");

  std::vector<MetricKind> metrics;
  for (const auto& m : config.metrics) metrics.push_back(parse_metric(m));
  std::vector<RefTarget> targets = ws.systems.empty() ? std::vector<RefTarget>{}
                                                      : ref_targets(ws, config);
  ScoreOptions options = score_options(config);

  struct Entry {
    std::string metric;
    std::string refset;
    std::map<std::string, double> scores;
    Orientation orientation;
  };
  struct Task {
    MetricKind metric;
    const RefTarget* target;
  };
  std::vector<Task> tasks;
  for (MetricKind metric : metrics)
    for (const auto& target : targets) {
      if (target.multi && metric != MetricKind::bleu) continue;
      tasks.push_back({metric, &target});
    }

  std::vector<Entry> entries(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    Entry& e = entries[i];
    e.metric = to_string(t.metric);
    e.refset = t.target->name;
    for (const auto& system : ws.systems) {
      MetricResult r = t.target->multi
                           ? score_system(system, *t.target->multi, t.metric, options)
                           : score_system(system, *t.target->single, t.metric, options);
      e.orientation = r.orientation;
      e.scores[system.system_name] = r.score;
    }
  });
  for (const auto& ext : ws.external_scores)
    entries.push_back({ext.metric_name, "-", ext.scores, ext.orientation});

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.metric, a.refset) < std::tie(b.metric, b.refset);
  });

  std::string config_line = canonical_config(config);
  Table table;
  table.columns = {"metric", "refset", "rho", "tau", "n"};
  std::vector<std::string> written;
  std::vector<std::pair<fs::path, std::string>> pending;

  for (const auto& entry : entries) {
    CorrelationResult r = correlate_systems(entry.scores, entry.orientation, *ws.human_scores);
    table.rows.push_back({entry.metric, entry.refset, format_fixed(r.rho, 4),
                          format_fixed(r.tau, 4), std::to_string(r.n_systems)});
    if (config.topk_min > 0) {
      TopKCurve curve =
          topk_curve(entry.scores, entry.orientation, *ws.human_scores, config.topk_min);
      std::string csv = "# config " + config_line + "\nk,tau\n";
      for (const auto& point : curve.points)
        csv += std::to_string(point.k) + "," + format_fixed(point.tau, 4) + "\n";
      fs::path path = fs::path(config.out_dir) /
                      ("topk_" + sanitize(entry.metric) + "_" + sanitize(entry.refset) + ".csv");
      pending.emplace_back(path, std::move(csv));
    }
  }

  fs::path out = fs::path(config.out_dir) / ("correlations" + table_extension(config.format));
  pending.emplace_back(out, render_table(table, config.format, config_line));
  for (const auto& [path, content] : pending) {
    atomic_write(path, content);
    written.push_back(path.string());
  }
  return written;
}

std::vector<std::string> cmd_compose_hq(const RunConfig& config) {
  Workspace ws = load_validated(config);
  if (ws.refsets.empty()) throw Error(ErrorCode::BadArgument, "compose-hq needs --refs");
  if (ws.ratings.entries.empty())
    throw Error(ErrorCode::BadArgument, "compose-hq needs --ratings");

  std::vector<const ReferenceSet*> members;
  for (const auto& ref : ws.refsets) members.push_back(&ref);
  auto [composed, trace] = compose_hq(members, ws.ratings);

  std::string ref_text;
  for (const auto& line : composed.translations) {
    ref_text += line;
    ref_text += '\n';
  }
  // The composed reference stays a clean line-aligned segment file; the
  // provenance lives in the trace.
  std::string trace_text = "# config " + canonical_config(config) + "\n# name " + composed.name +
                           "\nsegment\tchosen_set\trating\ttie\n" + trace_to_tsv(trace);

  fs::path ref_path = fs::path(config.out_dir) / (sanitize(composed.name) + ".txt");
  fs::path trace_path = fs::path(config.out_dir) / (sanitize(composed.name) + "_trace.tsv");
  atomic_write(ref_path, ref_text);
  atomic_write(trace_path, trace_text);
  return {ref_path.string(), trace_path.string()};
}

std::vector<std::string> cmd_ngram_report(const RunConfig& config) {
  Workspace ws = load_validated(config);
  if (ws.systems.empty()) throw Error(ErrorCode::BadArgument, "ngram-report needs --systems");
  if (ws.refsets.empty()) throw Error(ErrorCode::BadArgument, "ngram-report needs --refs");
  ScoreOptions options = score_options(config);

  std::string config_line = canonical_config(config);
  std::vector<std::pair<fs::path, std::string>> pending;
  for (const auto& system : ws.systems) {
    std::vector<TokenSeq> hyps;
    hyps.reserve(system.hypotheses.size());
    for (const auto& line : system.hypotheses)
      hyps.push_back(tokenize_intl(apply_casing(line, options.casing)));
    for (const auto& ref : ws.refsets) {
      std::vector<TokenSeq> refs;
      refs.reserve(ref.translations.size());
      for (const auto& line : ref.translations)
        refs.push_back(tokenize_intl(apply_casing(line, options.casing)));
      NgramMatchReport report =
          matched_ngram_report(hyps, refs, config.ngram_order, config.ngram_top);
      std::string text = "# config " + config_line + "\n";
      if (report.order_exceeds_segments)
        text += "# warning order exceeds every segment\n";
      text += "rank\tngram\tcount\n" + report_to_tsv(report);
      pending.emplace_back(fs::path(config.out_dir) / ("ngrams_" + sanitize(system.system_name) +
                                                       "_" + sanitize(ref.name) + ".tsv"),
                           std::move(text));
    }
  }
  std::vector<std::string> written;
  for (const auto& [path, content] : pending) {
    atomic_write(path, content);
    written.push_back(path.string());
  }
  return written;
}

std::vector<std::string> cmd_monotonicity(const RunConfig& config) {
  Workspace ws = load_validated(config);
  if (ws.alignments.empty())
    throw Error(ErrorCode::BadArgument, "monotonicity needs --alignments");

  Table table;
  table.columns = {"alignment", "mean_abs_distance", "links"};
  for (const auto& set : ws.alignments) {  // row order follows the command line
    MonotonicityScore score = monotonicity(set);
    table.rows.push_back({set.name, format_fixed(score.mean_abs_distance, 4),
                          std::to_string(score.link_count)});
  }

  fs::path out = fs::path(config.out_dir) / ("monotonicity" + table_extension(config.format));
  atomic_write(out, render_table(table, config.format, canonical_config(config)));
  return {out.string()};
}

bool cmd_validate(const RunConfig& config, std::string& report_text) {
  Workspace ws = load_workspace(config);
  ValidationReport report = validate_workspace(ws);
  report_text = validation_text(report);
  return report.ok();
}

}  // namespace mteval::cli
