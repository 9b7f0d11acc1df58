#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fairmatch/data.hpp"
#include "fairmatch/diffusion.hpp"
#include "fairmatch/matching.hpp"

namespace fairmatch {

// Gini complement of a nonnegative mass vector: 1 is perfectly uniform,
// 0 is total concentration. Requires at least two masses with positive sum.
double gini_complement(std::vector<double> masses);

// Mean over users with at least one probe interaction of
// |picks ∩ probe| / l. Throws EvalError when no user has probe
// interactions.
double precision(const RecommendationMatrix& recs,
                 const std::vector<std::vector<std::int32_t>>& probe_items,
                 std::int32_t list_length);

// Fraction of catalog items recommended to at least one user.
double aggregate_diversity(const RecommendationMatrix& recs);

// Gini complement of the per-item recommendation counts; never-recommended
// items contribute zero-count terms.
double exposure_fairness(const RecommendationMatrix& recs);

// Gini complement of the multiset of scores attached to the picked pairs.
// A single pick is a perfectly equal one-element distribution (1.0); an
// all-zero multiset is an evaluation error.
double score_gini(const RecommendationMatrix& recs, const ScoreMatrix& scores);

struct MetricsReport {
  double precision = 0.0;
  double aggregate_diversity = 0.0;
  double exposure_fairness = 0.0;
  double score_gini = 0.0;
};

}  // namespace fairmatch
