#pragma once

#include <cstdint>
#include <vector>

#include "mteval/metric_result.hpp"
#include "mteval/tokenize.hpp"

namespace mteval {

// Longest block a single shift may move.
inline constexpr int kTerMaxShiftBlock = 10;

struct TerSegment {
  std::int64_t edits = 0;
  std::int64_t ref_len = 0;

  TerSegment& operator+=(const TerSegment& other) {
    edits += other.edits;
    ref_len += other.ref_len;
    return *this;
  }
};

// Greedy shift loop: repeatedly apply the block shift (a contiguous
// hypothesis subsequence that also occurs in the reference and currently
// contains at least one misaligned token) that most reduces the word-level
// Levenshtein distance, at a cost of 1 per shift. Ties prefer the longest
// block, then the leftmost origin, then the leftmost destination.
// edits = shifts + remaining Levenshtein distance.
TerSegment ter_segment(const TokenSeq& hyp, const TokenSeq& ref);

struct TerCorpusResult {
  MetricResult ter;            // lower_better, 0 = perfect
  MetricResult one_minus_ter;  // higher_better companion
};

// Corpus TER = sum(edits) / sum(ref_len).
TerCorpusResult ter_corpus(const std::vector<TerSegment>& segments,
                           Casing casing = Casing::mixed);

}  // namespace mteval
