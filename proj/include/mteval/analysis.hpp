#pragma once

#include <string>
#include <vector>

#include "mteval/bleu.hpp"
#include "mteval/corpus.hpp"
#include "mteval/tokenize.hpp"

namespace mteval {

struct NgramMatchRow {
  Ngram ngram;
  std::int64_t count = 0;
};

struct NgramMatchReport {
  int order = 1;
  std::vector<NgramMatchRow> rows;  // count descending, then lexicographic
  bool order_exceeds_segments = false;
};

// Clipped matched counts (min of hypothesis and reference occurrences per
// segment, summed over segments), truncated to the top_m rows.
NgramMatchReport matched_ngram_report(const std::vector<TokenSeq>& hyps,
                                      const std::vector<TokenSeq>& refs, int order,
                                      std::size_t top_m);

struct MonotonicityScore {
  double mean_abs_distance = 0.0;
  std::int64_t link_count = 0;
};

// Mean |i - j| over all alignment links in the corpus.
MonotonicityScore monotonicity(const AlignmentSet& alignments);

// rank<TAB>ngram (space-joined)<TAB>count
std::string report_to_tsv(const NgramMatchReport& report);

}  // namespace mteval
