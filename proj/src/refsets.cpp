#include "mteval/refsets.hpp"

#include <cstdio>

#include "mteval/error.hpp"

namespace mteval {

std::map<std::pair<std::size_t, std::string>, double> average_segment_ratings(
    const AdequacyRatings& ratings) {
  std::map<std::pair<std::size_t, std::string>, std::pair<double, std::size_t>> acc;
  for (const auto& [key, rating] : ratings.entries) {
    auto& slot = acc[{key.segment, key.refset}];
    slot.first += rating;
    slot.second += 1;
  }
  std::map<std::pair<std::size_t, std::string>, double> means;
  for (const auto& [key, slot] : acc) means[key] = slot.first / static_cast<double>(slot.second);
  return means;
}

std::pair<ReferenceSet, CompositionTrace> compose_hq(
    const std::vector<const ReferenceSet*>& members, const AdequacyRatings& ratings) {
  if (members.empty()) throw Error(ErrorCode::TooFewMembers, "compose_hq needs >= 1 member");
  const std::size_t n = members[0]->translations.size();
  for (const auto* m : members)
    if (m->translations.size() != n)
      throw Error(ErrorCode::LengthMismatch, "member '" + m->name + "' has " +
                                                 std::to_string(m->translations.size()) +
                                                 " lines, expected " + std::to_string(n));

  auto means = average_segment_ratings(ratings);

  ReferenceSet composed;
  composed.kind = RefKind::composed;
  composed.name = "HQ(";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) composed.name += ',';
    composed.name += members[i]->name;
  }
  composed.name += ')';
  composed.translations.reserve(n);

  CompositionTrace trace;
  trace.choices.reserve(n);

  for (std::size_t seg = 0; seg < n; ++seg) {
    const ReferenceSet* chosen = nullptr;
    double chosen_rating = 0.0;
    std::optional<double> runner_up;
    for (const auto* m : members) {
      auto it = means.find({seg, m->name});
      if (it == means.end())
        throw Error(ErrorCode::MissingRating,
                    "segment " + std::to_string(seg) + ", set '" + m->name + "'");
      if (!chosen || it->second > chosen_rating) {
        if (chosen) runner_up = runner_up ? std::max(*runner_up, chosen_rating) : chosen_rating;
        chosen = m;
        chosen_rating = it->second;
      } else {
        runner_up = runner_up ? std::max(*runner_up, it->second) : it->second;
      }
    }
    bool tie = runner_up && *runner_up == chosen_rating;
    composed.translations.push_back(chosen->translations[seg]);
    trace.choices.push_back({seg, chosen->name, chosen_rating, runner_up, tie});
  }
  return {std::move(composed), std::move(trace)};
}

MultiReference assemble_multi(const std::vector<const ReferenceSet*>& members) {
  if (members.size() < 2)
    throw Error(ErrorCode::TooFewMembers,
                "multi-reference needs >= 2 members, got " + std::to_string(members.size()));
  const std::size_t n = members[0]->translations.size();
  for (const auto* m : members)
    if (m->translations.size() != n)
      throw Error(ErrorCode::LengthMismatch, "member '" + m->name + "' has " +
                                                 std::to_string(m->translations.size()) +
                                                 " lines, expected " + std::to_string(n));
  MultiReference multi;
  for (const auto* m : members) multi.member_names.push_back(m->name);
  multi.per_segment.resize(n);
  for (std::size_t seg = 0; seg < n; ++seg) {
    multi.per_segment[seg].reserve(members.size());
    for (const auto* m : members) multi.per_segment[seg].push_back(m->translations[seg]);
  }
  return multi;
}

std::string trace_to_tsv(const CompositionTrace& trace) {
  std::string out;
  for (const auto& c : trace.choices) {
    char rating[32];
    std::snprintf(rating, sizeof(rating), "%.4f", c.chosen_rating);
    out += std::to_string(c.segment);
    out += '\t';
    out += c.chosen_set;
    out += '\t';
    out += rating;
    out += '\t';
    out += c.tie ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace mteval
