#include "mteval/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "mteval/error.hpp"
#include "mteval/unicode.hpp"

namespace mteval {

NgramCounts ngram_counts(const TokenSeq& tokens, int max_order) {
  if (max_order < 1) throw Error(ErrorCode::BadArgument, "max_order must be >= 1");
  NgramCounts counts;
  for (int n = 1; n <= max_order; ++n) {
    if (tokens.size() < static_cast<std::size_t>(n)) break;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
      ++counts[Ngram(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kBleuOrder; ++n) {
    correct[n] += other.correct[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

namespace {

// Tokens interned per segment pair; ids fit in 16 bits, so an n-gram of
// order <= 4 packs exactly into one uint64 key.
struct Interner {
  std::unordered_map<std::string, std::uint16_t> ids;

  std::uint16_t intern(const std::string& token) {
    if (ids.size() >= 0xFFFF)
      throw Error(ErrorCode::BadArgument, "segment vocabulary exceeds 65535 tokens");
    auto [it, inserted] = ids.emplace(token, static_cast<std::uint16_t>(ids.size() + 1));
    return it->second;
  }
};

using Keys = std::vector<std::uint64_t>;

std::array<Keys, kBleuOrder> ngram_keys(const std::vector<std::uint16_t>& ids) {
  std::array<Keys, kBleuOrder> keys;
  for (int n = 1; n <= kBleuOrder; ++n) {
    if (ids.size() < static_cast<std::size_t>(n)) break;
    keys[n - 1].reserve(ids.size() - n + 1);
    for (std::size_t i = 0; i + n <= ids.size(); ++i) {
      std::uint64_t key = 0;
      for (int k = 0; k < n; ++k) key = (key << 16) | ids[i + k];
      keys[n - 1].push_back(key);
    }
  }
  for (auto& k : keys) std::sort(k.begin(), k.end());
  return keys;
}

std::int64_t count_in_sorted(const Keys& sorted, std::uint64_t key) {
  auto range = std::equal_range(sorted.begin(), sorted.end(), key);
  return range.second - range.first;
}

}  // namespace

BleuStats bleu_segment_stats(const TokenSeq& hyp, const std::vector<TokenSeq>& refs) {
  if (refs.empty()) throw Error(ErrorCode::EmptyReference, "bleu needs at least one reference");

  Interner interner;
  std::vector<std::uint16_t> hyp_ids;
  hyp_ids.reserve(hyp.size());
  for (const auto& t : hyp) hyp_ids.push_back(interner.intern(t));

  std::vector<std::vector<std::uint16_t>> ref_ids(refs.size());
  for (std::size_t r = 0; r < refs.size(); ++r) {
    ref_ids[r].reserve(refs[r].size());
    for (const auto& t : refs[r]) ref_ids[r].push_back(interner.intern(t));
  }

  BleuStats stats;
  stats.hyp_len = static_cast<std::int64_t>(hyp.size());

  // Closest reference length; ties prefer the shorter reference.
  std::int64_t best_len = static_cast<std::int64_t>(refs[0].size());
  for (const auto& ref : refs) {
    auto len = static_cast<std::int64_t>(ref.size());
    auto diff = std::llabs(len - stats.hyp_len);
    auto best_diff = std::llabs(best_len - stats.hyp_len);
    if (diff < best_diff || (diff == best_diff && len < best_len)) best_len = len;
  }
  stats.ref_len = best_len;

  auto hyp_keys = ngram_keys(hyp_ids);
  std::vector<std::array<Keys, kBleuOrder>> ref_keys;
  ref_keys.reserve(refs.size());
  for (const auto& ids : ref_ids) ref_keys.push_back(ngram_keys(ids));

  for (int n = 0; n < kBleuOrder; ++n) {
    const Keys& keys = hyp_keys[n];
    stats.total[n] = std::max<std::int64_t>(stats.hyp_len - n, 0);
    std::size_t i = 0;
    while (i < keys.size()) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      std::int64_t hyp_count = static_cast<std::int64_t>(j - i);
      std::int64_t ref_max = 0;
      for (const auto& rk : ref_keys)
        ref_max = std::max(ref_max, count_in_sorted(rk[n], keys[i]));
      stats.correct[n] += std::min(hyp_count, ref_max);
      i = j;
    }
  }
  return stats;
}

MetricResult bleu_corpus(const BleuStats& stats, Casing casing, std::size_t numrefs) {
  if (stats.hyp_len == 0 && stats.ref_len == 0)
    throw Error(ErrorCode::DegenerateCorpus, "zero-length corpus");
  for (int n = 0; n < kBleuOrder; ++n)
    if (stats.total[n] == 0)
      throw Error(ErrorCode::DegenerateCorpus,
                  "no hypothesis " + std::to_string(n + 1) + "-grams in the corpus");

  double log_precision_sum = 0.0;
  std::int64_t smooth = 1;
  for (int n = 0; n < kBleuOrder; ++n) {
    double p;
    if (stats.correct[n] > 0) {
      p = static_cast<double>(stats.correct[n]) / static_cast<double>(stats.total[n]);
    } else {
      smooth *= 2;
      p = 1.0 / (static_cast<double>(smooth) * static_cast<double>(stats.total[n]));
    }
    log_precision_sum += std::log(p);
  }

  double bp = 1.0;
  if (stats.hyp_len <= stats.ref_len)
    bp = std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len));

  MetricResult result;
  result.metric_name = "bleu";
  result.orientation = Orientation::higher_better;
  result.score = 100.0 * bp * std::exp(log_precision_sum / kBleuOrder);
  result.signature =
      build_signature("BLEU", to_string(casing), numrefs, "exp", "intl");
  return result;
}

}  // namespace mteval
