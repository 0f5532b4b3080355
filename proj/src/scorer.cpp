#include "mteval/scorer.hpp"

#include "mteval/error.hpp"
#include "mteval/unicode.hpp"

namespace mteval {

MetricKind parse_metric(const std::string& name) {
  if (name == "bleu") return MetricKind::bleu;
  if (name == "chrf") return MetricKind::chrf;
  if (name == "ter") return MetricKind::ter;
  throw Error(ErrorCode::BadArgument, "unknown metric '" + name + "'");
}

const char* to_string(MetricKind metric) {
  switch (metric) {
    case MetricKind::bleu: return "bleu";
    case MetricKind::chrf: return "chrf";
    case MetricKind::ter: return "ter";
  }
  return "bleu";
}

std::string build_signature(const std::string& metric, const std::string& casing,
                            std::size_t numrefs, const std::string& smooth,
                            const std::string& tok, const std::string& extras) {
  std::string sig = metric + "+case." + casing + "+numrefs." + std::to_string(numrefs) +
                    "+smooth." + smooth + "+tok." + tok;
  if (!extras.empty()) sig += "+" + extras;
  sig += "+unicode." + std::string(unicode::version()) + "+impl." + kImplVersion;
  return sig;
}

namespace {

void check_lengths(std::size_t hyp_count, std::size_t ref_count, const std::string& what) {
  if (hyp_count != ref_count)
    throw Error(ErrorCode::LengthMismatch, what + ": " + std::to_string(hyp_count) +
                                               " hypotheses vs " + std::to_string(ref_count) +
                                               " reference lines");
}

MetricResult score_against(const SystemOutput& output,
                           const std::vector<std::vector<std::string>>& refs_per_segment,
                           std::size_t numrefs, MetricKind metric, const ScoreOptions& options) {
  const std::size_t n = output.hypotheses.size();

  switch (metric) {
    case MetricKind::bleu: {
      BleuStats stats;
      std::vector<TokenSeq> ref_tokens;
      for (std::size_t i = 0; i < n; ++i) {
        TokenSeq hyp = tokenize_intl(apply_casing(output.hypotheses[i], options.casing));
        ref_tokens.clear();
        for (const auto& ref : refs_per_segment[i])
          ref_tokens.push_back(tokenize_intl(apply_casing(ref, options.casing)));
        stats += bleu_segment_stats(hyp, ref_tokens);
      }
      return bleu_corpus(stats, options.casing, numrefs);
    }
    case MetricKind::chrf: {
      ChrfStats stats(options.chrf.char_order);
      for (std::size_t i = 0; i < n; ++i) {
        CharSeq hyp = char_sequence(apply_casing(output.hypotheses[i], options.casing),
                                    options.chrf.remove_whitespace);
        CharSeq ref = char_sequence(apply_casing(refs_per_segment[i][0], options.casing),
                                    options.chrf.remove_whitespace);
        stats += chrf_segment_stats(hyp, ref, options.chrf.char_order);
      }
      return chrf_from_stats(stats, options.chrf, options.casing);
    }
    case MetricKind::ter: {
      std::vector<TerSegment> segments;
      segments.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        TokenSeq hyp = tokenize_intl(apply_casing(output.hypotheses[i], options.casing));
        TokenSeq ref = tokenize_intl(apply_casing(refs_per_segment[i][0], options.casing));
        segments.push_back(ter_segment(hyp, ref));
      }
      return ter_corpus(segments, options.casing).ter;
    }
  }
  throw Error(ErrorCode::BadArgument, "unreachable metric kind");
}

}  // namespace

MetricResult score_system(const SystemOutput& output, const ReferenceSet& refs,
                          MetricKind metric, const ScoreOptions& options) {
  check_lengths(output.hypotheses.size(), refs.translations.size(),
                output.system_name + " vs " + refs.name);
  if (output.hypotheses.empty())
    throw Error(ErrorCode::DegenerateCorpus, "empty corpus");
  std::vector<std::vector<std::string>> per_segment;
  per_segment.reserve(refs.translations.size());
  for (const auto& line : refs.translations) per_segment.push_back({line});
  return score_against(output, per_segment, 1, metric, options);
}

MetricResult score_system(const SystemOutput& output, const MultiReference& refs,
                          MetricKind metric, const ScoreOptions& options) {
  if (metric != MetricKind::bleu)
    throw Error(ErrorCode::BadArgument,
                std::string(to_string(metric)) + " does not support multi-reference scoring");
  check_lengths(output.hypotheses.size(), refs.per_segment.size(),
                output.system_name + " vs " + refs.name());
  if (output.hypotheses.empty())
    throw Error(ErrorCode::DegenerateCorpus, "empty corpus");
  return score_against(output, refs.per_segment, refs.member_names.size(), metric, options);
}

}  // namespace mteval
