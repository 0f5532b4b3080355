#pragma once

#include <map>
#include <string>
#include <vector>

#include "mteval/corpus.hpp"

namespace mteval {

struct CorrelationResult {
  double rho = 0.0;
  double tau = 0.0;
  std::size_t n_systems = 0;
};

struct TopKPoint {
  std::size_t k = 0;
  double tau = 0.0;
};

struct TopKCurve {
  std::vector<TopKPoint> points;  // k descending from N to k_min
  std::vector<std::string> order;  // systems sorted by human score, ties by name
};

// Tie-corrected tau-b by pair enumeration:
// tau = (P - Q) / sqrt((P + Q + Tx) (P + Q + Ty)), pairs tied in both
// vectors excluded from every term.
double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation of average (fractional) ranks.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

// Matches systems by name; lower_better metrics are negated first.
CorrelationResult correlate_systems(const std::map<std::string, double>& metric_scores,
                                    Orientation orientation,
                                    const HumanSystemScores& human);

// Kendall tau over the best k systems by human score, for k = N .. k_min.
TopKCurve topk_curve(const std::map<std::string, double>& metric_scores,
                     Orientation orientation, const HumanSystemScores& human,
                     std::size_t k_min);

// True iff the metric's strict ordering equals the humans' strict ordering;
// any tie on either side fails.
bool ranking_agreement(const std::vector<double>& metric_scores,
                       const std::vector<double>& human_scores,
                       Orientation orientation = Orientation::higher_better);

}  // namespace mteval
