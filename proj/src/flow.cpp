#include "fairmatch/flow.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iterator>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace fairmatch {

namespace {
constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;
}

FlowNetwork::FlowNetwork(std::int32_t node_count, std::int32_t source,
                         std::int32_t sink)
    : source_(source), sink_(sink), heads_(static_cast<std::size_t>(node_count)) {
  if (node_count < 2 || source < 0 || source >= node_count || sink < 0 ||
      sink >= node_count || source == sink) {
    throw std::invalid_argument("flow network needs distinct source and sink");
  }
}

std::int32_t FlowNetwork::add_edge(std::int32_t from, std::int32_t to,
                                   std::int32_t cap, std::int32_t cost) {
  if (from < 0 || from >= node_count() || to < 0 || to >= node_count() || from == to) {
    throw std::invalid_argument("edge endpoints out of range");
  }
  if (cap <= 0) {
    throw std::invalid_argument("edge capacity must be positive");
  }
  if (cost < 0) {
    throw std::invalid_argument("edge cost must be nonnegative");
  }
  const auto fwd = static_cast<std::int32_t>(arcs_.size());
  arcs_.push_back({to, cap, 0, cost});
  arcs_.push_back({from, 0, 0, -cost});
  heads_[static_cast<std::size_t>(from)].push_back(fwd);
  heads_[static_cast<std::size_t>(to)].push_back(fwd + 1);
  return fwd;
}

void FlowNetwork::push(std::int32_t a, std::int64_t amount) {
  arcs_[static_cast<std::size_t>(a)].flow += static_cast<std::int32_t>(amount);
  arcs_[static_cast<std::size_t>(a ^ 1)].flow -= static_cast<std::int32_t>(amount);
}

std::int32_t unit_edge_cost(double normalized_score) {
  if (normalized_score <= 0.0) return 100;
  if (normalized_score >= 1.0) return 0;
  // ceil(100*s) with a guard against doubles sitting a hair above an exact
  // two-decimal value (e.g. 0.47 stored as 0.47000000000000003).
  const auto up = static_cast<std::int32_t>(std::ceil(normalized_score * 100.0 - 1e-9));
  return 100 - std::clamp(up, 0, 100);
}

FlowNetwork build_matching_network(const ScoreMatrix& normalized,
                                   const InteractionDataset& ds,
                                   std::int32_t list_length,
                                   const StockVector& stocks) {
  const std::int32_t m = ds.user_count();
  const std::int32_t n = ds.item_count();
  if (normalized.user_count() != m || normalized.item_count() != n) {
    throw std::invalid_argument("score matrix does not match dataset shape");
  }
  if (std::ssize(stocks.q) != n) {
    throw std::invalid_argument("stock vector size does not match item count");
  }
  if (list_length < 1) {
    throw std::invalid_argument("list length must be at least 1");
  }
  // The objective accumulates value*cost with unit costs at most 100.
  const std::int64_t demand = static_cast<std::int64_t>(m) * list_length;
  if (demand > std::numeric_limits<std::int64_t>::max() / 101) {
    throw std::invalid_argument("instance too large for the cost accumulator");
  }

  const std::int32_t source = 0;
  const std::int32_t sink = m + n + 1;
  FlowNetwork net(m + n + 2, source, sink);
  auto user_node = [](std::int32_t i) { return 1 + i; };
  auto item_node = [m](std::int32_t j) { return 1 + m + j; };

  for (std::int32_t i = 0; i < m; ++i) {
    net.add_edge(source, user_node(i), list_length, 0);
  }

  std::vector<std::int32_t> stocked;  // items with positive stock, ascending
  for (std::int32_t j = 0; j < n; ++j) {
    if (stocks.q[static_cast<std::size_t>(j)] > 0) {
      const auto cap = static_cast<std::int32_t>(
          std::min<std::int64_t>(stocks.q[static_cast<std::size_t>(j)],
                                 std::numeric_limits<std::int32_t>::max()));
      net.add_edge(item_node(j), sink, cap, 0);
      stocked.push_back(j);
    }
  }

  std::vector<char> present(static_cast<std::size_t>(n), 0);
  for (std::int32_t i = 0; i < m; ++i) {
    std::int32_t candidates = 0;
    for (const auto& e : normalized.row(i)) {
      if (e.value <= 0.0) continue;
      net.add_edge(user_node(i), item_node(e.item), 1, unit_edge_cost(e.value));
      present[static_cast<std::size_t>(e.item)] = 1;
      ++candidates;
    }
    if (candidates < list_length) {
      // Feasibility fillers: zero-score edges to stocked, non-interacted
      // items, lowest index first. Cost 100 keeps them a last resort.
      for (std::int32_t j : stocked) {
        if (candidates >= list_length) break;
        if (present[static_cast<std::size_t>(j)]) continue;
        if (ds.has_interaction(i, j)) continue;
        net.add_edge(user_node(i), item_node(j), 1, 100);
        ++candidates;
      }
    }
    for (const auto& e : normalized.row(i)) present[static_cast<std::size_t>(e.item)] = 0;
  }
  return net;
}

namespace {

struct SearchState {
  std::vector<std::int64_t> dist;
  std::vector<std::int32_t> parent_arc;
  std::vector<char> finalized;
};

// Label-setting search on reduced costs from the source, stopping once the
// sink is finalized. Ties in distance pop the smaller node index first.
bool shortest_path(const FlowNetwork& net,
                   const std::vector<std::int64_t>& potential, SearchState& st) {
  const auto nodes = static_cast<std::size_t>(net.node_count());
  st.dist.assign(nodes, kUnreachable);
  st.parent_arc.assign(nodes, -1);
  st.finalized.assign(nodes, 0);

  using Entry = std::pair<std::int64_t, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  st.dist[static_cast<std::size_t>(net.source())] = 0;
  queue.push({0, net.source()});

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (st.finalized[static_cast<std::size_t>(u)]) continue;
    st.finalized[static_cast<std::size_t>(u)] = 1;
    if (u == net.sink()) return true;
    for (std::int32_t a : net.arcs_out(u)) {
      if (net.residual(a) <= 0) continue;
      const auto& arc = net.arc(a);
      if (st.finalized[static_cast<std::size_t>(arc.to)]) continue;
      const std::int64_t reduced = arc.cost + potential[static_cast<std::size_t>(u)] -
                                   potential[static_cast<std::size_t>(arc.to)];
      assert(reduced >= 0 && "residual arcs must keep nonnegative reduced cost");
      const std::int64_t nd = d + reduced;
      if (nd < st.dist[static_cast<std::size_t>(arc.to)]) {
        st.dist[static_cast<std::size_t>(arc.to)] = nd;
        st.parent_arc[static_cast<std::size_t>(arc.to)] = a;
        queue.push({nd, arc.to});
      }
    }
  }
  return false;
}

// Raises potentials by the found distances (capped at the sink distance for
// nodes the early-terminated search never finalized), preserving
// nonnegative reduced costs on every residual arc.
void absorb_distances(const FlowNetwork& net, const SearchState& st,
                      std::vector<std::int64_t>& potential) {
  const std::int64_t cap = st.dist[static_cast<std::size_t>(net.sink())];
  for (std::size_t v = 0; v < potential.size(); ++v) {
    potential[v] += std::min(st.dist[v], cap);
  }
}

std::int64_t path_bottleneck(const FlowNetwork& net, const SearchState& st) {
  std::int64_t bottleneck = kUnreachable;
  for (std::int32_t a = st.parent_arc[static_cast<std::size_t>(net.sink())];
       a != -1; a = st.parent_arc[static_cast<std::size_t>(net.arc_from(a))]) {
    bottleneck = std::min(bottleneck, net.residual(a));
  }
  return bottleneck;
}

void augment_parent_path(FlowNetwork& net, const SearchState& st,
                         std::int64_t amount) {
  for (std::int32_t a = st.parent_arc[static_cast<std::size_t>(net.sink())];
       a != -1; a = st.parent_arc[static_cast<std::size_t>(net.arc_from(a))]) {
    net.push(a, amount);
  }
}

// Best-effort drain of the current shortest-path tier: walks the admissible
// subgraph (residual arcs with zero reduced cost) with current-arc cursors
// and saturates one simple path per descent. The admissible subgraph may
// contain zero-cost cycles once reverse arcs open up, so arcs leading back
// onto the active path are skipped. Every augmented path has reduced cost
// zero and is therefore a shortest path; missed paths are picked up by the
// next search.
void drain_admissible(FlowNetwork& net, const std::vector<std::int64_t>& potential) {
  const auto nodes = static_cast<std::size_t>(net.node_count());
  std::vector<std::size_t> cursor(nodes, 0);
  std::vector<char> on_path(nodes, 0);
  std::vector<std::int32_t> path;

  auto admissible = [&](std::int32_t from, std::int32_t a) {
    if (net.residual(a) <= 0) return false;
    const auto& arc = net.arc(a);
    if (on_path[static_cast<std::size_t>(arc.to)]) return false;
    return arc.cost + potential[static_cast<std::size_t>(from)] -
               potential[static_cast<std::size_t>(arc.to)] ==
           0;
  };

  std::int32_t node = net.source();
  on_path[static_cast<std::size_t>(node)] = 1;
  while (true) {
    if (node == net.sink()) {
      std::int64_t bottleneck = kUnreachable;
      for (std::int32_t a : path) bottleneck = std::min(bottleneck, net.residual(a));
      for (std::int32_t a : path) net.push(a, bottleneck);
      for (std::int32_t a : path) on_path[static_cast<std::size_t>(net.arc(a).to)] = 0;
      path.clear();
      node = net.source();
      continue;
    }
    const auto out = net.arcs_out(node);
    auto& cur = cursor[static_cast<std::size_t>(node)];
    while (cur < out.size() && !admissible(node, out[cur])) ++cur;
    if (cur == out.size()) {
      if (path.empty()) return;  // source exhausted
      on_path[static_cast<std::size_t>(node)] = 0;
      node = net.arc_from(path.back());
      ++cursor[static_cast<std::size_t>(node)];
      path.pop_back();
      continue;
    }
    path.push_back(out[cur]);
    node = net.arc(out[cur]).to;
    on_path[static_cast<std::size_t>(node)] = 1;
  }
}

}  // namespace

FlowSolution min_cost_max_flow(FlowNetwork& net) {
  // add_edge enforces arc pairing for networks built through the public API;
  // this re-validation protects against hand-assembled graphs.
  std::int64_t max_cap = 1;
  for (std::int32_t a = 0; a + 1 < net.arc_count(); a += 2) {
    const auto& fwd = net.arc(a);
    const auto& rev = net.arc(a + 1);
    if (fwd.cap < 0 || rev.cap != 0 || fwd.cost < 0 || rev.cost != -fwd.cost) {
      throw std::invalid_argument("malformed arc pair in flow network");
    }
    max_cap = std::max<std::int64_t>(max_cap, fwd.cap);
  }
  if (net.arc_count() % 2 != 0) {
    throw std::invalid_argument("flow network arcs must come in pairs");
  }

  std::vector<std::int64_t> potential(static_cast<std::size_t>(net.node_count()), 0);
  SearchState st;

  std::int64_t delta = 1;
  while (delta * 2 <= max_cap) delta *= 2;

  bool exhausted = false;
  for (; delta >= 1 && !exhausted; delta >>= 1) {
    while (true) {
      if (!shortest_path(net, potential, st)) {
        exhausted = true;  // sink unreachable: the flow is maximum
        break;
      }
      absorb_distances(net, st, potential);
      const std::int64_t bottleneck = path_bottleneck(net, st);
      if (bottleneck < delta) break;  // defer thin paths to later phases

      augment_parent_path(net, st, bottleneck);
      if (delta == 1) {
        // Saturate the remaining shortest paths of this tier in one pass.
        drain_admissible(net, potential);
      }
    }
  }

  FlowSolution solution;
  for (std::int32_t a : net.arcs_out(net.source())) {
    if ((a & 1) == 0) {
      solution.value += net.arc(a).flow;
    } else {
      solution.value -= net.arc(a ^ 1).flow;  // someone else's edge into the source
    }
  }
  for (std::int32_t a = 0; a < net.arc_count(); a += 2) {
    solution.cost += static_cast<std::int64_t>(net.arc(a).flow) * net.arc(a).cost;
  }
  solution.potentials = std::move(potential);
  return solution;
}

RecommendationMatrix extract_recommendations(const FlowNetwork& net,
                                             const InteractionDataset& ds,
                                             const ScoreMatrix& normalized,
                                             std::int32_t list_length) {
  const std::int32_t m = ds.user_count();
  const std::int32_t n = ds.item_count();
  std::vector<std::vector<std::int32_t>> picks(static_cast<std::size_t>(m));

  for (std::int32_t i = 0; i < m; ++i) {
    struct Picked {
      double score;
      std::int32_t item;
    };
    std::vector<Picked> chosen;
    for (std::int32_t a : net.arcs_out(1 + i)) {
      if (a & 1) continue;  // reverse twin of an inbound edge
      const auto& arc = net.arc(a);
      const std::int32_t j = arc.to - 1 - m;
      if (j < 0 || j >= n) continue;
      if (arc.flow > 0) {
        chosen.push_back({normalized.value_at(i, j), j});
      }
    }
    std::sort(chosen.begin(), chosen.end(), [](const Picked& a, const Picked& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.item < b.item;
    });
    auto& out = picks[static_cast<std::size_t>(i)];
    out.reserve(chosen.size());
    for (const auto& c : chosen) out.push_back(c.item);
  }
  return RecommendationMatrix(m, n, list_length, std::move(picks));
}

void dump_network(const FlowNetwork& net, std::ostream& out) {
  for (std::int32_t a = 0; a < net.arc_count(); a += 2) {
    const auto& arc = net.arc(a);
    out << net.arc_from(a) << ' ' << arc.to << ' ' << arc.cap << ' ' << arc.cost
        << '\n';
  }
}

}  // namespace fairmatch
