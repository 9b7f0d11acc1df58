#include "fairmatch/metrics.hpp"

#include <algorithm>
#include <iterator>

#include "fairmatch/errors.hpp"

namespace fairmatch {

double gini_complement(std::vector<double> masses) {
  const auto n = std::ssize(masses);
  if (n < 2) {
    throw EvalError("gini complement needs at least two masses");
  }
  double total = 0.0;
  for (double x : masses) total += x;
  if (!(total > 0.0)) {
    throw EvalError("gini complement needs a positive total mass");
  }
  std::sort(masses.begin(), masses.end());
  // 1 - (1/(n-1)) * sum_k (2k - n - 1) * p_(k), k 1-based, p ascending.
  double weighted = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    weighted += static_cast<double>(2 * k - n - 1) *
                (masses[static_cast<std::size_t>(k - 1)] / total);
  }
  return 1.0 - weighted / static_cast<double>(n - 1);
}

double precision(const RecommendationMatrix& recs,
                 const std::vector<std::vector<std::int32_t>>& probe_items,
                 std::int32_t list_length) {
  if (std::ssize(probe_items) != recs.user_count()) {
    throw EvalError("probe rows do not match user count");
  }
  double sum = 0.0;
  std::int64_t probe_users = 0;
  for (std::int32_t i = 0; i < recs.user_count(); ++i) {
    const auto& probe = probe_items[static_cast<std::size_t>(i)];
    if (probe.empty()) continue;
    ++probe_users;
    std::int64_t hits = 0;
    for (std::int32_t j : recs.picks(i)) {
      if (std::binary_search(probe.begin(), probe.end(), j)) ++hits;
    }
    // Underfilled lists still divide by the nominal length.
    sum += static_cast<double>(hits) / static_cast<double>(list_length);
  }
  if (probe_users == 0) {
    throw EvalError("no user has probe interactions");
  }
  return sum / static_cast<double>(probe_users);
}

double aggregate_diversity(const RecommendationMatrix& recs) {
  const auto counts = recs.item_counts();
  std::int64_t covered = 0;
  for (auto c : counts) {
    if (c > 0) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(recs.item_count());
}

double exposure_fairness(const RecommendationMatrix& recs) {
  if (recs.item_count() < 2) {
    throw EvalError("exposure fairness needs at least two items");
  }
  if (recs.pick_count() == 0) {
    throw EvalError("exposure fairness needs at least one recommendation");
  }
  const auto counts = recs.item_counts();
  std::vector<double> masses(counts.begin(), counts.end());
  return gini_complement(std::move(masses));
}

double score_gini(const RecommendationMatrix& recs, const ScoreMatrix& scores) {
  std::vector<double> masses;
  masses.reserve(static_cast<std::size_t>(recs.pick_count()));
  for (std::int32_t i = 0; i < recs.user_count(); ++i) {
    for (std::int32_t j : recs.picks(i)) {
      masses.push_back(scores.value_at(i, j));
    }
  }
  if (masses.empty()) {
    throw EvalError("score gini needs at least one recommendation");
  }
  if (masses.size() == 1) {
    return 1.0;  // a one-element distribution is perfectly equal
  }
  double total = 0.0;
  for (double x : masses) total += x;
  if (!(total > 0.0)) {
    throw EvalError("score gini needs a positive score mass");
  }
  return gini_complement(std::move(masses));
}

}  // namespace fairmatch
