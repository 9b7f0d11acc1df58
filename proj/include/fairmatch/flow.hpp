#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fairmatch/constraints.hpp"
#include "fairmatch/data.hpp"
#include "fairmatch/diffusion.hpp"
#include "fairmatch/matching.hpp"

namespace fairmatch {

/// Integer-capacity, integer-cost directed graph with paired residual arcs.
/// Arc 2k is the forward arc of edge k; arc 2k+1 is its reverse twin with
/// capacity 0 and negated cost, so residual(reverse) always equals the
/// forward flow.
class FlowNetwork {
 public:
  struct Arc {
    std::int32_t to = 0;
    std::int32_t cap = 0;
    std::int32_t flow = 0;  // reverse arcs carry the negated forward flow
    std::int32_t cost = 0;
  };

  FlowNetwork(std::int32_t node_count, std::int32_t source, std::int32_t sink);

  // Returns the forward arc index (even). Capacity must be positive and cost
  // nonnegative.
  std::int32_t add_edge(std::int32_t from, std::int32_t to, std::int32_t cap,
                        std::int32_t cost);

  std::int32_t node_count() const noexcept { return static_cast<std::int32_t>(heads_.size()); }
  std::int32_t source() const noexcept { return source_; }
  std::int32_t sink() const noexcept { return sink_; }
  std::int32_t arc_count() const noexcept { return static_cast<std::int32_t>(arcs_.size()); }

  const Arc& arc(std::int32_t a) const { return arcs_[static_cast<std::size_t>(a)]; }
  std::int32_t arc_from(std::int32_t a) const {
    return arcs_[static_cast<std::size_t>(a ^ 1)].to;
  }
  std::int64_t residual(std::int32_t a) const {
    const Arc& e = arcs_[static_cast<std::size_t>(a)];
    return static_cast<std::int64_t>(e.cap) - e.flow;
  }
  std::span<const std::int32_t> arcs_out(std::int32_t node) const {
    return heads_[static_cast<std::size_t>(node)];
  }

  // Routes `amount` units along arc a, keeping the twin in sync.
  void push(std::int32_t a, std::int64_t amount);

 private:
  std::int32_t source_ = 0;
  std::int32_t sink_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::int32_t>> heads_;
};

struct FlowSolution {
  std::int64_t value = 0;  // net outflow of the source
  std::int64_t cost = 0;   // sum of flow*cost over forward arcs
  // Final node potentials: an optimality certificate. Every residual arc has
  // nonnegative reduced cost cost(a) + pot[from] - pot[to] under them.
  std::vector<std::int64_t> potentials;
};

// Cost of routing one unit across a user-item edge whose normalized score is
// s: 100 * (1 - s rounded UP to two decimals), clamped to [0, 100]. The
// round-up is computed as ceil(100*s) in integer space with a small epsilon
// guard against values like 0.47 that sit just above their double
// representation.
std::int32_t unit_edge_cost(double normalized_score);

// Nodes: 0 = source, 1..m = users, m+1..m+n = items, m+n+1 = sink.
// Edges: source->user cap l cost 0; item->sink cap q_j cost 0; user->item
// cap 1 for every non-interacted pair with positive score, cost
// unit_edge_cost(s). Users with fewer than l positive-score candidates get
// zero-score filler edges (cost 100) to stocked items, lowest item index
// first, so a full fill stays reachable.
FlowNetwork build_matching_network(const ScoreMatrix& normalized,
                                   const InteractionDataset& ds,
                                   std::int32_t list_length,
                                   const StockVector& stocks);

// Exact min-cost max-flow: capacity scaling over successive shortest
// augmenting paths. Shortest paths use a label-setting search on reduced
// costs with node potentials (ties: smaller node index first); a phase with
// scale delta only accepts augmenting paths whose bottleneck is at least
// delta, so every accepted path is a true shortest path and the final flow
// is a maximum flow of minimum cost. Mutates the network's flows.
FlowSolution min_cost_max_flow(FlowNetwork& net);

// Reads the unit flows off the user-item arcs; per-user lists are ordered by
// descending normalized score (ties: ascending item index).
RecommendationMatrix extract_recommendations(const FlowNetwork& net,
                                             const InteractionDataset& ds,
                                             const ScoreMatrix& normalized,
                                             std::int32_t list_length);

// Edge list dump, one "from to cap cost" line per forward arc.
void dump_network(const FlowNetwork& net, std::ostream& out);

}  // namespace fairmatch
