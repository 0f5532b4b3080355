#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "mteval/metric_result.hpp"
#include "mteval/tokenize.hpp"

namespace mteval {

inline constexpr int kBleuOrder = 4;

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::int64_t>;

// Exact multiset counts of all n-grams of orders 1..max_order.
NgramCounts ngram_counts(const TokenSeq& tokens, int max_order);

// Additive sufficient statistics; summing per-segment values gives corpus
// statistics.
struct BleuStats {
  std::array<std::int64_t, kBleuOrder> correct{};
  std::array<std::int64_t, kBleuOrder> total{};
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

// Clipped matches against the max count over references; ref_len is the
// reference length closest to the hypothesis length (tie -> shorter).
BleuStats bleu_segment_stats(const TokenSeq& hyp, const std::vector<TokenSeq>& refs);

// Corpus BLEU with exp smoothing: each zero-match order n contributes
// 1/(2^k * total[n]) with k counting the zero orders seen so far.
MetricResult bleu_corpus(const BleuStats& stats, Casing casing = Casing::mixed,
                         std::size_t numrefs = 1);

}  // namespace mteval
