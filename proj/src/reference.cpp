#include "fairmatch/reference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace fairmatch::reference {

std::vector<std::vector<double>> p3_scores_dense(const InteractionDataset& ds) {
  const std::int32_t m = ds.user_count();
  const std::int32_t n = ds.item_count();
  const auto user_deg = ds.user_degrees();
  const auto item_deg = ds.item_degrees();

  std::vector<std::vector<double>> scores(
      static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n), 0.0));

  std::vector<double> start(static_cast<std::size_t>(n));
  std::vector<double> on_users(static_cast<std::size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) {
    std::fill(start.begin(), start.end(), 0.0);
    std::fill(on_users.begin(), on_users.end(), 0.0);
    for (std::int32_t j : ds.items_of(i)) start[static_cast<std::size_t>(j)] = 1.0;

    for (std::int32_t k = 0; k < m; ++k) {
      double mass = 0.0;
      for (std::int32_t j : ds.items_of(k)) {
        mass += start[static_cast<std::size_t>(j)] /
                static_cast<double>(item_deg[static_cast<std::size_t>(j)]);
      }
      on_users[static_cast<std::size_t>(k)] = mass;
    }
    auto& row = scores[static_cast<std::size_t>(i)];
    for (std::int32_t k = 0; k < m; ++k) {
      if (on_users[static_cast<std::size_t>(k)] == 0.0) continue;
      const double share = on_users[static_cast<std::size_t>(k)] /
                           static_cast<double>(user_deg[static_cast<std::size_t>(k)]);
      for (std::int32_t j : ds.items_of(k)) {
        row[static_cast<std::size_t>(j)] += share;
      }
    }
    for (std::int32_t j : ds.items_of(i)) row[static_cast<std::size_t>(j)] = 0.0;
  }
  return scores;
}

FlowSolution min_cost_max_flow_spfa(FlowNetwork& net) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const auto nodes = static_cast<std::size_t>(net.node_count());

  while (true) {
    std::vector<std::int64_t> dist(nodes, kInf);
    std::vector<std::int32_t> parent(nodes, -1);
    std::vector<char> queued(nodes, 0);
    std::deque<std::int32_t> queue;
    dist[static_cast<std::size_t>(net.source())] = 0;
    queue.push_back(net.source());
    queued[static_cast<std::size_t>(net.source())] = 1;

    while (!queue.empty()) {
      const std::int32_t u = queue.front();
      queue.pop_front();
      queued[static_cast<std::size_t>(u)] = 0;
      for (std::int32_t a : net.arcs_out(u)) {
        if (net.residual(a) <= 0) continue;
        const auto& arc = net.arc(a);
        const std::int64_t nd = dist[static_cast<std::size_t>(u)] + arc.cost;
        if (nd < dist[static_cast<std::size_t>(arc.to)]) {
          dist[static_cast<std::size_t>(arc.to)] = nd;
          parent[static_cast<std::size_t>(arc.to)] = a;
          if (!queued[static_cast<std::size_t>(arc.to)]) {
            queue.push_back(arc.to);
            queued[static_cast<std::size_t>(arc.to)] = 1;
          }
        }
      }
    }
    if (dist[static_cast<std::size_t>(net.sink())] >= kInf) break;

    std::int64_t bottleneck = kInf;
    for (std::int32_t a = parent[static_cast<std::size_t>(net.sink())]; a != -1;
         a = parent[static_cast<std::size_t>(net.arc_from(a))]) {
      bottleneck = std::min(bottleneck, net.residual(a));
    }
    for (std::int32_t a = parent[static_cast<std::size_t>(net.sink())]; a != -1;
         a = parent[static_cast<std::size_t>(net.arc_from(a))]) {
      net.push(a, bottleneck);
    }
  }

  FlowSolution solution;
  for (std::int32_t a : net.arcs_out(net.source())) {
    if ((a & 1) == 0) {
      solution.value += net.arc(a).flow;
    } else {
      solution.value -= net.arc(a ^ 1).flow;
    }
  }
  for (std::int32_t a = 0; a < net.arc_count(); a += 2) {
    solution.cost += static_cast<std::int64_t>(net.arc(a).flow) * net.arc(a).cost;
  }
  return solution;
}

double gini_complement_mad(std::span<const double> masses) {
  const auto n = std::ssize(masses);
  double total = 0.0;
  for (double x : masses) total += x;
  double abs_diff = 0.0;
  for (std::size_t j = 0; j < masses.size(); ++j) {
    for (std::size_t k = 0; k < masses.size(); ++k) {
      abs_diff += std::abs(masses[j] - masses[k]);
    }
  }
  return 1.0 - abs_diff / (2.0 * static_cast<double>(n - 1) * total);
}

}  // namespace fairmatch::reference
