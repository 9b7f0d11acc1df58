#include "fairmatch/matching.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <stdexcept>

namespace fairmatch {

RecommendationMatrix::RecommendationMatrix(
    std::int32_t user_count, std::int32_t item_count, std::int32_t list_length,
    std::vector<std::vector<std::int32_t>> picks)
    : m_(user_count), n_(item_count), l_(list_length), picks_(std::move(picks)) {
  if (std::ssize(picks_) != m_) {
    throw std::invalid_argument("pick row count does not match user count");
  }
}

std::int64_t RecommendationMatrix::underfill_total() const {
  std::int64_t total = 0;
  for (const auto& row : picks_) {
    total += l_ - std::ssize(row);
  }
  return total;
}

std::vector<std::int64_t> RecommendationMatrix::item_counts() const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_), 0);
  for (const auto& row : picks_) {
    for (std::int32_t j : row) ++counts[static_cast<std::size_t>(j)];
  }
  return counts;
}

std::int64_t RecommendationMatrix::pick_count() const {
  std::int64_t total = 0;
  for (const auto& row : picks_) total += std::ssize(row);
  return total;
}

RecommendationMatrix unconstrained_topl(const ScoreMatrix& scores,
                                        const InteractionDataset& ds,
                                        std::int32_t list_length) {
  if (list_length < 1) {
    throw std::invalid_argument("list length must be at least 1");
  }
  if (scores.user_count() != ds.user_count() ||
      scores.item_count() != ds.item_count()) {
    throw std::invalid_argument("score matrix does not match dataset shape");
  }
  const std::int32_t m = scores.user_count();
  std::vector<std::vector<std::int32_t>> picks(static_cast<std::size_t>(m));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (std::int32_t i = 0; i < m; ++i) {
    auto row = scores.row(i);
    std::vector<ScoreEntry> sorted(row.begin(), row.end());
    // Highest score first; equal scores resolve to the smaller item index.
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) {
                if (a.value != b.value) return a.value > b.value;
                return a.item < b.item;
              });
    const auto take = std::min<std::size_t>(sorted.size(),
                                            static_cast<std::size_t>(list_length));
    auto& out = picks[static_cast<std::size_t>(i)];
    out.reserve(take);
    for (std::size_t k = 0; k < take; ++k) out.push_back(sorted[k].item);
  }
  return RecommendationMatrix(m, ds.item_count(), list_length, std::move(picks));
}

RecommendationMatrix greedy_match(const ScoreMatrix& scores,
                                  const InteractionDataset& ds,
                                  std::int32_t list_length,
                                  const StockVector& stocks) {
  if (list_length < 1) {
    throw std::invalid_argument("list length must be at least 1");
  }
  const std::int32_t m = scores.user_count();
  const std::int32_t n = scores.item_count();
  if (std::ssize(stocks.q) != n) {
    throw std::invalid_argument("stock vector size does not match item count");
  }

  struct Pair {
    double score;
    std::int32_t user;
    std::int32_t item;
  };
  std::vector<Pair> order;
  order.reserve(static_cast<std::size_t>(scores.entry_count()));
  for (std::int32_t i = 0; i < m; ++i) {
    for (const auto& e : scores.row(i)) {
      if (e.value > 0.0) order.push_back({e.value, i, e.item});
    }
  }
  std::sort(order.begin(), order.end(), [](const Pair& a, const Pair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.user != b.user) return a.user < b.user;
    return a.item < b.item;
  });

  std::vector<std::int32_t> vacancies(static_cast<std::size_t>(m), list_length);
  std::vector<std::int64_t> stock(stocks.q.begin(), stocks.q.end());
  std::vector<std::vector<std::int32_t>> picks(static_cast<std::size_t>(m));
  std::int64_t open_lists = m;

  for (const auto& p : order) {
    if (open_lists == 0) break;
    auto& vac = vacancies[static_cast<std::size_t>(p.user)];
    auto& st = stock[static_cast<std::size_t>(p.item)];
    if (vac > 0 && st > 0) {
      picks[static_cast<std::size_t>(p.user)].push_back(p.item);
      --vac;
      --st;
      if (vac == 0) --open_lists;
    }
  }
  return RecommendationMatrix(m, n, list_length, std::move(picks));
}

void write_recommendations(const RecommendationMatrix& recs,
                           const InteractionDataset& ds, std::ostream& out) {
  for (std::int32_t i = 0; i < recs.user_count(); ++i) {
    out << ds.user_id(i) << ':';
    bool first = true;
    for (std::int32_t j : recs.picks(i)) {
      out << (first ? " " : ",") << ds.item_id(j);
      first = false;
    }
    out << '\n';
  }
}

}  // namespace fairmatch
