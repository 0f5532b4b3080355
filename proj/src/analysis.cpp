#include "mteval/analysis.hpp"

#include <algorithm>
#include <cstdlib>

#include "mteval/error.hpp"

namespace mteval {

NgramMatchReport matched_ngram_report(const std::vector<TokenSeq>& hyps,
                                      const std::vector<TokenSeq>& refs, int order,
                                      std::size_t top_m) {
  if (order < 1) throw Error(ErrorCode::BadArgument, "order must be >= 1");
  if (hyps.size() != refs.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(hyps.size()) + " hypotheses vs " +
                                               std::to_string(refs.size()) + " references");

  NgramMatchReport report;
  report.order = order;

  std::map<Ngram, std::int64_t> matched;
  bool any_segment_long_enough = false;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (hyps[i].size() >= static_cast<std::size_t>(order) ||
        refs[i].size() >= static_cast<std::size_t>(order))
      any_segment_long_enough = true;

    std::map<Ngram, std::int64_t> hyp_counts;
    for (std::size_t s = 0; s + order <= hyps[i].size(); ++s)
      ++hyp_counts[Ngram(hyps[i].begin() + s, hyps[i].begin() + s + order)];
    std::map<Ngram, std::int64_t> ref_counts;
    for (std::size_t s = 0; s + order <= refs[i].size(); ++s)
      ++ref_counts[Ngram(refs[i].begin() + s, refs[i].begin() + s + order)];

    for (const auto& [gram, hyp_count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched[gram] += std::min(hyp_count, it->second);
    }
  }
  report.order_exceeds_segments = !any_segment_long_enough;

  report.rows.reserve(matched.size());
  for (const auto& [gram, count] : matched) report.rows.push_back({gram, count});
  // std::map iteration is already lexicographic; stable sort keeps that
  // order within equal counts.
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const NgramMatchRow& a, const NgramMatchRow& b) { return a.count > b.count; });
  if (report.rows.size() > top_m) report.rows.resize(top_m);
  return report;
}

MonotonicityScore monotonicity(const AlignmentSet& alignments) {
  std::int64_t links = 0;
  std::int64_t distance_sum = 0;
  for (const auto& segment : alignments.segments) {
    for (const auto& link : segment) {
      ++links;
      distance_sum += std::llabs(static_cast<std::int64_t>(link.src) -
                                 static_cast<std::int64_t>(link.tgt));
    }
  }
  if (links == 0)
    throw Error(ErrorCode::ZeroLinks, "alignment set '" + alignments.name + "' has no links");
  return {static_cast<double>(distance_sum) / static_cast<double>(links), links};
}

std::string report_to_tsv(const NgramMatchReport& report) {
  std::string out;
  std::size_t rank = 1;
  for (const auto& row : report.rows) {
    out += std::to_string(rank++);
    out += '\t';
    for (std::size_t i = 0; i < row.ngram.size(); ++i) {
      if (i > 0) out += ' ';
      out += row.ngram[i];
    }
    out += '\t';
    out += std::to_string(row.count);
    out += '\n';
  }
  return out;
}

}  // namespace mteval
