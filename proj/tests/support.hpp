// Shared test machinery: a deterministic small-instance generator and an
// exhaustive matching oracle, both independent of the solver under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fairmatch/constraints.hpp"
#include "fairmatch/data.hpp"
#include "fairmatch/diffusion.hpp"
#include "fairmatch/flow.hpp"

namespace testsupport {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int32_t uniform_int(std::mt19937_64& rng, std::int32_t lo,
                                std::int32_t hi) {
  return lo + static_cast<std::int32_t>(uniform01(rng) * (hi - lo + 1));
}

// A small constrained-matching instance assembled the same way the pipeline
// does it: sparse interactions, positive scores on every non-interacted
// pair, row normalization, degree-proportional stocks.
struct SmallInstance {
  fairmatch::InteractionDataset dataset;
  fairmatch::ScoreMatrix raw;
  fairmatch::ScoreMatrix normalized;
  fairmatch::StockVector stocks;
  std::int32_t list_length = 1;
};

inline SmallInstance random_instance(std::mt19937_64& rng, std::int32_t max_users = 5,
                                     std::int32_t max_items = 6,
                                     std::int32_t max_list = 2) {
  while (true) {
    const std::int32_t m = uniform_int(rng, 2, max_users);
    const std::int32_t n = uniform_int(rng, 2, max_items);
    const std::int32_t l = uniform_int(rng, 1, max_list);

    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    for (std::int32_t i = 0; i < m; ++i) {
      for (std::int32_t j = 0; j < n; ++j) {
        if (uniform01(rng) < 0.35) pairs.emplace_back(i, j);
      }
    }
    if (pairs.empty()) continue;  // stocks need at least one interaction

    auto ds = fairmatch::InteractionDataset::from_pairs(m, n, std::move(pairs));

    std::vector<std::vector<fairmatch::ScoreEntry>> rows(static_cast<std::size_t>(m));
    bool any_candidate = false;
    for (std::int32_t i = 0; i < m; ++i) {
      for (std::int32_t j = 0; j < n; ++j) {
        if (ds.has_interaction(i, j)) continue;
        rows[static_cast<std::size_t>(i)].push_back(
            {j, 0.05 + 0.95 * uniform01(rng)});
        any_candidate = true;
      }
    }
    if (!any_candidate) continue;

    SmallInstance inst;
    inst.list_length = l;
    inst.stocks = fairmatch::stock_volumes(ds.item_degrees(), m, l);
    inst.raw = fairmatch::ScoreMatrix(m, n, std::move(rows));
    inst.normalized = fairmatch::normalize_rows(inst.raw, 1.0);
    inst.dataset = std::move(ds);
    return inst;
  }
}

// Exhaustive lexicographic optimum over the network's own user-item edges:
// maximize matching size first, then the quantized score total. Enumerates
// per-user candidate subsets of size <= l by depth-first search over users.
struct OracleResult {
  std::int64_t size = 0;
  std::int64_t quantized_total = 0;  // sum of (100 - cost) over matched pairs
};

inline OracleResult brute_force_best(const fairmatch::FlowNetwork& net,
                                     std::int32_t m, std::int32_t n,
                                     std::int32_t list_length,
                                     const fairmatch::StockVector& stocks) {
  struct Edge {
    std::int32_t item;
    std::int64_t gain;
  };
  std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(m));
  for (std::int32_t a = 0; a < net.arc_count(); a += 2) {
    const std::int32_t from = net.arc_from(a);
    const std::int32_t to = net.arc(a).to;
    if (from >= 1 && from <= m && to >= 1 + m && to <= m + n) {
      edges[static_cast<std::size_t>(from - 1)].push_back(
          {to - 1 - m, 100 - net.arc(a).cost});
    }
  }

  std::vector<std::int64_t> stock(stocks.q.begin(), stocks.q.end());
  OracleResult best;

  // Per-user subsets of size <= l, recursing user by user.
  std::vector<std::int32_t> chosen;
  auto consider = [&](std::int64_t size, std::int64_t total) {
    if (size > best.size ||
        (size == best.size && total > best.quantized_total)) {
      best = {size, total};
    }
  };

  std::function<void(std::int32_t, std::int64_t, std::int64_t)> recurse =
      [&](std::int32_t user, std::int64_t size, std::int64_t total) {
        if (user == m) {
          consider(size, total);
          return;
        }
        const auto& cand = edges[static_cast<std::size_t>(user)];
        // Enumerate subsets of candidates of size <= l via index recursion.
        std::function<void(std::size_t, std::int32_t, std::int64_t)> pick =
            [&](std::size_t start, std::int32_t taken, std::int64_t gained) {
              if (taken == list_length || start == cand.size()) {
                recurse(user + 1, size + taken, total + gained);
                return;
              }
              // Skip cand[start].
              pick(start + 1, taken, gained);
              // Take cand[start] if stock remains.
              auto& st = stock[static_cast<std::size_t>(cand[start].item)];
              if (st > 0) {
                --st;
                pick(start + 1, taken + 1, gained + cand[start].gain);
                ++st;
              }
            };
        pick(0, 0, 0);
      };
  recurse(0, 0, 0);
  return best;
}

// Quantized score total of a solved network, read off the user-item flows.
inline std::int64_t quantized_total(const fairmatch::FlowNetwork& net,
                                    std::int32_t m, std::int32_t n) {
  std::int64_t total = 0;
  for (std::int32_t a = 0; a < net.arc_count(); a += 2) {
    const std::int32_t from = net.arc_from(a);
    const std::int32_t to = net.arc(a).to;
    if (from >= 1 && from <= m && to >= 1 + m && to <= m + n &&
        net.arc(a).flow > 0) {
      total += static_cast<std::int64_t>(net.arc(a).flow) * (100 - net.arc(a).cost);
    }
  }
  return total;
}

}  // namespace testsupport
