#include "mteval/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mteval/error.hpp"

namespace mteval {

namespace {

void check_vectors(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(x.size()) + " vs " +
                                               std::to_string(y.size()) + " values");
  if (x.size() < 2) throw Error(ErrorCode::TooFewSystems, "need at least 2 values");
}

bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

std::vector<double> fractional_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && v[idx[j]] == v[idx[i]]) ++j;
    double avg_rank = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = avg_rank;
    i = j;
  }
  return ranks;
}

}  // namespace

double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  check_vectors(x, y);
  std::int64_t concordant = 0, discordant = 0, tied_x = 0, tied_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      double dx = x[i] - x[j];
      double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0)
        ++tied_x;
      else if (dy == 0.0)
        ++tied_y;
      else if ((dx > 0.0) == (dy > 0.0))
        ++concordant;
      else
        ++discordant;
    }
  }
  double denom_x = static_cast<double>(concordant + discordant + tied_x);
  double denom_y = static_cast<double>(concordant + discordant + tied_y);
  if (denom_x == 0.0 || denom_y == 0.0)
    throw Error(ErrorCode::ConstantVector, "kendall tau is undefined for a constant vector");
  return static_cast<double>(concordant - discordant) / std::sqrt(denom_x * denom_y);
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  check_vectors(x, y);
  if (is_constant(x) || is_constant(y))
    throw Error(ErrorCode::ConstantVector, "spearman rho is undefined for a constant vector");

  std::vector<double> rx = fractional_ranks(x);
  std::vector<double> ry = fractional_ranks(y);
  const double n = static_cast<double>(x.size());
  double mean_x = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double mean_y = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mean_x;
    double dy = ry[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  return cov / std::sqrt(var_x * var_y);
}

namespace {

// Systems present in both maps, with lower_better metrics negated.
std::pair<std::vector<double>, std::vector<double>> paired_scores(
    const std::map<std::string, double>& metric_scores, Orientation orientation,
    const HumanSystemScores& human, std::vector<std::string>* names = nullptr) {
  std::vector<double> xs, ys;
  for (const auto& [system, human_score] : human.scores) {
    auto it = metric_scores.find(system);
    if (it == metric_scores.end()) continue;
    double value = it->second;
    if (orientation == Orientation::lower_better) value = -value;
    xs.push_back(value);
    ys.push_back(human_score);
    if (names) names->push_back(system);
  }
  if (xs.size() < 2)
    throw Error(ErrorCode::TooFewSystems,
                "only " + std::to_string(xs.size()) + " systems are scored by both sides");
  return {std::move(xs), std::move(ys)};
}

}  // namespace

CorrelationResult correlate_systems(const std::map<std::string, double>& metric_scores,
                                    Orientation orientation, const HumanSystemScores& human) {
  auto [xs, ys] = paired_scores(metric_scores, orientation, human);
  CorrelationResult result;
  result.n_systems = xs.size();
  result.rho = spearman_rho(xs, ys);
  result.tau = kendall_tau_b(xs, ys);
  return result;
}

TopKCurve topk_curve(const std::map<std::string, double>& metric_scores,
                     Orientation orientation, const HumanSystemScores& human,
                     std::size_t k_min) {
  if (k_min < 3) throw Error(ErrorCode::BadArgument, "k_min must be >= 3");

  std::vector<std::string> names;
  auto [xs, ys] = paired_scores(metric_scores, orientation, human, &names);
  const std::size_t n = xs.size();
  if (k_min > n)
    throw Error(ErrorCode::BadArgument,
                "k_min " + std::to_string(k_min) + " exceeds " + std::to_string(n) + " systems");

  // Best systems first; human-score ties broken by name so curves are
  // reproducible.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (ys[a] != ys[b]) return ys[a] > ys[b];
    return names[a] < names[b];
  });

  TopKCurve curve;
  for (std::size_t i : idx) curve.order.push_back(names[i]);
  for (std::size_t k = n; k >= k_min; --k) {
    std::vector<double> mx, my;
    mx.reserve(k);
    my.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      mx.push_back(xs[idx[i]]);
      my.push_back(ys[idx[i]]);
    }
    curve.points.push_back({k, kendall_tau_b(mx, my)});
  }
  return curve;
}

bool ranking_agreement(const std::vector<double>& metric_scores,
                       const std::vector<double>& human_scores, Orientation orientation) {
  check_vectors(metric_scores, human_scores);
  const double sign = orientation == Orientation::lower_better ? -1.0 : 1.0;
  for (std::size_t i = 0; i < metric_scores.size(); ++i) {
    for (std::size_t j = i + 1; j < metric_scores.size(); ++j) {
      double dm = sign * (metric_scores[i] - metric_scores[j]);
      double dh = human_scores[i] - human_scores[j];
      if (dm == 0.0 || dh == 0.0) return false;  // any tie breaks strictness
      if ((dm > 0.0) != (dh > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace mteval
