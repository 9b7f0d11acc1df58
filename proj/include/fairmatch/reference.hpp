#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fairmatch/data.hpp"
#include "fairmatch/flow.hpp"

namespace fairmatch::reference {

// Serial dense transcription of the two-step diffusion, kept as the oracle
// for the parallel sparse kernel and as the benchmark baseline. Returns full
// m x n rows with interacted entries zeroed; nothing is dropped.
std::vector<std::vector<double>> p3_scores_dense(const InteractionDataset& ds);

// Plain successive-shortest-path min-cost max-flow using a label-correcting
// (queue-based Bellman-Ford) search, no potentials, no scaling. Slow and
// obviously correct.
FlowSolution min_cost_max_flow_spfa(FlowNetwork& net);

// Gini complement via the pairwise mean-absolute-difference form:
// 1 - sum_jk |x_j - x_k| / (2 (n-1) sum(x)). O(n^2).
double gini_complement_mad(std::span<const double> masses);

}  // namespace fairmatch::reference
