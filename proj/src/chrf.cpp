#include "mteval/chrf.hpp"

#include <algorithm>
#include <cstdio>
#include <string_view>

#include "mteval/error.hpp"

namespace mteval {

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  if (matched.size() != other.matched.size())
    throw Error(ErrorCode::BadArgument, "chrf stats of different orders");
  for (std::size_t n = 0; n < matched.size(); ++n) {
    matched[n] += other.matched[n];
    hyp_total[n] += other.hyp_total[n];
    ref_total[n] += other.ref_total[n];
  }
  return *this;
}

namespace {

// Sorted views over all n-grams of one order; multiset intersection by merge.
std::vector<std::u32string_view> sorted_ngrams(const CharSeq& chars, int n) {
  std::vector<std::u32string_view> grams;
  if (chars.size() >= static_cast<std::size_t>(n)) {
    grams.reserve(chars.size() - n + 1);
    std::u32string_view view(chars);
    for (std::size_t i = 0; i + n <= chars.size(); ++i) grams.push_back(view.substr(i, n));
    std::sort(grams.begin(), grams.end());
  }
  return grams;
}

std::int64_t intersection_size(const std::vector<std::u32string_view>& a,
                               const std::vector<std::u32string_view>& b) {
  std::int64_t matched = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++matched;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return matched;
}

}  // namespace

ChrfStats chrf_segment_stats(const CharSeq& hyp, const CharSeq& ref, int char_order) {
  ChrfStats stats(char_order);
  for (int n = 1; n <= char_order; ++n) {
    auto hyp_grams = sorted_ngrams(hyp, n);
    auto ref_grams = sorted_ngrams(ref, n);
    stats.hyp_total[n - 1] = static_cast<std::int64_t>(hyp_grams.size());
    stats.ref_total[n - 1] = static_cast<std::int64_t>(ref_grams.size());
    stats.matched[n - 1] = intersection_size(hyp_grams, ref_grams);
  }
  return stats;
}

MetricResult chrf_from_stats(const ChrfStats& stats, const ChrfParams& params, Casing casing,
                             std::size_t numrefs) {
  const int order = params.char_order;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (int n = 0; n < order; ++n) {
    if (stats.hyp_total[n] > 0)
      precision_sum += static_cast<double>(stats.matched[n]) / stats.hyp_total[n];
    if (stats.ref_total[n] > 0)
      recall_sum += static_cast<double>(stats.matched[n]) / stats.ref_total[n];
  }
  double precision = precision_sum / order;
  double recall = recall_sum / order;

  double score = 0.0;
  if (precision + recall > 0.0) {
    double beta_sq = params.beta * params.beta;
    score = 100.0 * (1.0 + beta_sq) * precision * recall / (beta_sq * precision + recall);
  }

  char beta_text[32];
  std::snprintf(beta_text, sizeof(beta_text), "%g", params.beta);
  std::string extras = "order." + std::to_string(order) + "+beta." + beta_text + "+space." +
                       (params.remove_whitespace ? "removed" : "kept");
  MetricResult result;
  result.metric_name = "chrf";
  result.orientation = Orientation::higher_better;
  result.score = score;
  result.signature = build_signature("CHRF", to_string(casing), numrefs, "none", "char", extras);
  return result;
}

MetricResult chrf_corpus(const std::vector<std::string>& hyps,
                         const std::vector<std::string>& refs, const ChrfParams& params,
                         Casing casing) {
  if (hyps.size() != refs.size())
    throw Error(ErrorCode::LengthMismatch,
                "chrf: " + std::to_string(hyps.size()) + " hypotheses vs " +
                    std::to_string(refs.size()) + " references");
  if (hyps.empty()) throw Error(ErrorCode::DegenerateCorpus, "empty corpus");

  ChrfStats total(params.char_order);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    CharSeq hyp = char_sequence(apply_casing(hyps[i], casing), params.remove_whitespace);
    CharSeq ref = char_sequence(apply_casing(refs[i], casing), params.remove_whitespace);
    total += chrf_segment_stats(hyp, ref, params.char_order);
  }
  return chrf_from_stats(total, params, casing);
}

}  // namespace mteval
