#pragma once

#include <string>
#include <vector>

#include "mteval/bleu.hpp"
#include "mteval/chrf.hpp"
#include "mteval/corpus.hpp"
#include "mteval/metric_result.hpp"
#include "mteval/ter.hpp"

namespace mteval {

enum class MetricKind { bleu, chrf, ter };

MetricKind parse_metric(const std::string& name);
const char* to_string(MetricKind metric);

struct ScoreOptions {
  Casing casing = Casing::mixed;
  ChrfParams chrf;
};

// Full pipeline for one system against one reference set:
// casing -> tokenization -> segment stats -> corpus aggregation.
MetricResult score_system(const SystemOutput& output, const ReferenceSet& refs,
                          MetricKind metric, const ScoreOptions& options = {});

// Multi-reference scoring; defined for BLEU only.
MetricResult score_system(const SystemOutput& output, const MultiReference& refs,
                          MetricKind metric, const ScoreOptions& options = {});

}  // namespace mteval
