#pragma once

#include <map>
#include <optional>
#include <string>

#include "mteval/corpus.hpp"

namespace mteval {

inline constexpr const char* kImplVersion = "0.1.0";

struct MetricResult {
  std::string metric_name;
  double score = 0.0;
  Orientation orientation = Orientation::higher_better;
  std::string signature;
  std::optional<std::map<std::string, double>> per_system;
};

// `<METRIC>+case.<mode>+numrefs.<k>+smooth.<scheme>+tok.<scheme>[+extras]
//  +unicode.<version>+impl.<version>`
std::string build_signature(const std::string& metric, const std::string& casing,
                            std::size_t numrefs, const std::string& smooth,
                            const std::string& tok, const std::string& extras = "");

}  // namespace mteval
