#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mteval/corpus.hpp"

namespace mteval {

struct CompositionChoice {
  std::size_t segment = 0;
  std::string chosen_set;
  double chosen_rating = 0.0;
  std::optional<double> runner_up_rating;
  bool tie = false;
};

struct CompositionTrace {
  std::vector<CompositionChoice> choices;
};

// Arithmetic mean over raters per (segment, refset).
std::map<std::pair<std::size_t, std::string>, double> average_segment_ratings(
    const AdequacyRatings& ratings);

// Per segment, pick the member whose averaged rating is highest; ties go to
// the earlier member. The result is named HQ(<m1>,<m2>,...).
std::pair<ReferenceSet, CompositionTrace> compose_hq(
    const std::vector<const ReferenceSet*>& members, const AdequacyRatings& ratings);

// Bundles >= 2 equal-length reference sets, preserving member order.
MultiReference assemble_multi(const std::vector<const ReferenceSet*>& members);

// segment<TAB>chosen_set<TAB>rating<TAB>tie
std::string trace_to_tsv(const CompositionTrace& trace);

}  // namespace mteval
