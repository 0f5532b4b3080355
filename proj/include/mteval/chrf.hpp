#pragma once

#include <string>
#include <vector>

#include "mteval/metric_result.hpp"
#include "mteval/tokenize.hpp"

namespace mteval {

struct ChrfParams {
  int char_order = 6;
  double beta = 2.0;
  bool remove_whitespace = true;
};

// Per-order accumulated character n-gram counts; additive across segments.
struct ChrfStats {
  std::vector<std::int64_t> matched;  // multiset intersection size
  std::vector<std::int64_t> hyp_total;
  std::vector<std::int64_t> ref_total;

  explicit ChrfStats(int order = 6)
      : matched(order, 0), hyp_total(order, 0), ref_total(order, 0) {}

  ChrfStats& operator+=(const ChrfStats& other);
};

ChrfStats chrf_segment_stats(const CharSeq& hyp, const CharSeq& ref, int char_order);

// Per-order precision/recall from accumulated counts (0 on a zero
// denominator), arithmetic means over orders, then the F_beta score
// scaled to 0..100.
MetricResult chrf_from_stats(const ChrfStats& stats, const ChrfParams& params,
                             Casing casing = Casing::mixed, std::size_t numrefs = 1);

MetricResult chrf_corpus(const std::vector<std::string>& hyps,
                         const std::vector<std::string>& refs,
                         const ChrfParams& params = {}, Casing casing = Casing::mixed);

}  // namespace mteval
