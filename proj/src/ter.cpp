#include "mteval/ter.hpp"

#include <algorithm>
#include <unordered_map>

#include "mteval/error.hpp"

namespace mteval {

namespace {

using Ids = std::vector<int>;

int levenshtein(const Ids& hyp, const Ids& ref) {
  const std::size_t h = hyp.size(), r = ref.size();
  thread_local std::vector<int> prev, cur;
  prev.resize(r + 1);
  cur.resize(r + 1);
  for (std::size_t j = 0; j <= r; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= h; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= r; ++j) {
      int sub = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[r];
}

// Like levenshtein() but abandons once the result provably cannot be
// < cutoff. Row minima of the DP are non-decreasing, so a row whose minimum
// reaches the cutoff ends the candidate.
int levenshtein_bounded(const Ids& hyp, const Ids& ref, int cutoff) {
  const std::size_t h = hyp.size(), r = ref.size();
  if (static_cast<int>(h > r ? h - r : r - h) >= cutoff) return cutoff;
  thread_local std::vector<int> prev, cur;
  prev.resize(r + 1);
  cur.resize(r + 1);
  for (std::size_t j = 0; j <= r; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= h; ++i) {
    cur[0] = static_cast<int>(i);
    int row_min = cur[0];
    for (std::size_t j = 1; j <= r; ++j) {
      int sub = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min >= cutoff) return cutoff;
    std::swap(prev, cur);
  }
  return std::min(prev[r], cutoff);
}

// Canonical optimal alignment; marks hypothesis tokens aligned to an equal
// reference token. Backtrace preference: match, substitution, deletion,
// insertion.
std::vector<bool> matched_tokens(const Ids& hyp, const Ids& ref) {
  const std::size_t h = hyp.size(), r = ref.size();
  thread_local std::vector<int> dp;
  dp.resize((h + 1) * (r + 1));
  auto at = [&](std::size_t i, std::size_t j) -> int& { return dp[i * (r + 1) + j]; };
  for (std::size_t j = 0; j <= r; ++j) at(0, j) = static_cast<int>(j);
  for (std::size_t i = 1; i <= h; ++i) {
    at(i, 0) = static_cast<int>(i);
    for (std::size_t j = 1; j <= r; ++j) {
      int sub = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  std::vector<bool> matched(h, false);
  std::size_t i = h, j = r;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && hyp[i - 1] == ref[j - 1] && at(i, j) == at(i - 1, j - 1)) {
      matched[i - 1] = true;
      --i;
      --j;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      --i;
    } else {
      --j;
    }
  }
  return matched;
}

struct Block {
  std::size_t start = 0;
  std::size_t length = 0;
};

// Hypothesis blocks (length <= cap) that occur verbatim in the reference.
std::vector<Block> matching_blocks(const Ids& hyp, const Ids& ref, std::size_t cap) {
  std::unordered_map<int, std::vector<std::size_t>> ref_positions;
  for (std::size_t j = 0; j < ref.size(); ++j) ref_positions[ref[j]].push_back(j);

  std::vector<Block> blocks;
  std::vector<std::size_t> alive, next;
  for (std::size_t s = 0; s < hyp.size(); ++s) {
    auto it = ref_positions.find(hyp[s]);
    if (it == ref_positions.end()) continue;
    alive = it->second;
    std::size_t l = 1;
    while (true) {
      blocks.push_back({s, l});
      if (l >= cap || s + l >= hyp.size()) break;
      next.clear();
      for (std::size_t p : alive)
        if (p + l < ref.size() && ref[p + l] == hyp[s + l]) next.push_back(p);
      if (next.empty()) break;
      alive.swap(next);
      ++l;
    }
  }
  return blocks;
}

void apply_shift(const Ids& hyp, std::size_t start, std::size_t length, std::size_t dest,
                 Ids& out) {
  out.clear();
  out.reserve(hyp.size());
  for (std::size_t i = 0; i < hyp.size(); ++i)
    if (i < start || i >= start + length) out.push_back(hyp[i]);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(dest), hyp.begin() + start,
             hyp.begin() + start + length);
}

}  // namespace

TerSegment ter_segment(const TokenSeq& hyp, const TokenSeq& ref) {
  if (ref.empty()) throw Error(ErrorCode::EmptyReference, "ter needs a non-empty reference");

  std::unordered_map<std::string, int> vocab;
  auto intern = [&](const TokenSeq& tokens) {
    Ids ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens)
      ids.push_back(vocab.emplace(t, static_cast<int>(vocab.size())).first->second);
    return ids;
  };
  Ids h = intern(hyp);
  const Ids r = intern(ref);

  std::int64_t shifts = 0;
  int current = levenshtein(h, r);
  Ids candidate, best_hyp;

  while (current > 0 && !h.empty()) {
    std::vector<bool> matched = matched_tokens(h, r);
    std::vector<Block> blocks = matching_blocks(h, r, kTerMaxShiftBlock);

    // A shiftable block must contain at least one misaligned token.
    std::vector<int> misaligned_prefix(h.size() + 1, 0);
    for (std::size_t i = 0; i < h.size(); ++i)
      misaligned_prefix[i + 1] = misaligned_prefix[i] + (matched[i] ? 0 : 1);
    std::erase_if(blocks, [&](const Block& b) {
      return misaligned_prefix[b.start + b.length] == misaligned_prefix[b.start];
    });

    // Preference order: longest block, leftmost origin, leftmost destination.
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
      if (a.length != b.length) return a.length > b.length;
      return a.start < b.start;
    });

    int best = current;  // must strictly improve
    for (const Block& block : blocks) {
      for (std::size_t dest = 0; dest + block.length <= h.size(); ++dest) {
        if (dest == block.start) continue;
        apply_shift(h, block.start, block.length, dest, candidate);
        int dist = levenshtein_bounded(candidate, r, best);
        if (dist < best) {
          best = dist;
          best_hyp = candidate;
        }
      }
    }
    if (best >= current) break;
    h = best_hyp;
    current = best;
    ++shifts;
  }

  return {shifts + current, static_cast<std::int64_t>(ref.size())};
}

TerCorpusResult ter_corpus(const std::vector<TerSegment>& segments, Casing casing) {
  if (segments.empty()) throw Error(ErrorCode::DegenerateCorpus, "empty corpus");
  std::int64_t edits = 0, ref_len = 0;
  for (const auto& seg : segments) {
    edits += seg.edits;
    ref_len += seg.ref_len;
  }
  if (ref_len == 0) throw Error(ErrorCode::EmptyReference, "total reference length is zero");

  double ter = static_cast<double>(edits) / static_cast<double>(ref_len);
  std::string extras = "shiftcap." + std::to_string(kTerMaxShiftBlock);

  TerCorpusResult result;
  result.ter.metric_name = "ter";
  result.ter.score = ter;
  result.ter.orientation = Orientation::lower_better;
  result.ter.signature = build_signature("TER", to_string(casing), 1, "none", "intl", extras);
  result.one_minus_ter.metric_name = "1-ter";
  result.one_minus_ter.score = 1.0 - ter;
  result.one_minus_ter.orientation = Orientation::higher_better;
  result.one_minus_ter.signature = result.ter.signature;
  return result;
}

}  // namespace mteval
