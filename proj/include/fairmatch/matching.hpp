#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fairmatch/constraints.hpp"
#include "fairmatch/data.hpp"
#include "fairmatch/diffusion.hpp"

namespace fairmatch {

/// Binary recommendation result: per-user ordered item lists of length at
/// most l. Lists shorter than l are underfilled, not an error.
class RecommendationMatrix {
 public:
  RecommendationMatrix() = default;
  RecommendationMatrix(std::int32_t user_count, std::int32_t item_count,
                       std::int32_t list_length,
                       std::vector<std::vector<std::int32_t>> picks);

  std::int32_t user_count() const noexcept { return m_; }
  std::int32_t item_count() const noexcept { return n_; }
  std::int32_t list_length() const noexcept { return l_; }

  std::span<const std::int32_t> picks(std::int32_t user) const {
    return picks_[static_cast<std::size_t>(user)];
  }
  std::int32_t fill(std::int32_t user) const {
    return static_cast<std::int32_t>(picks_[static_cast<std::size_t>(user)].size());
  }
  // Sum over users of (l - fill).
  std::int64_t underfill_total() const;
  // Per-item recommendation counts, length n.
  std::vector<std::int64_t> item_counts() const;
  std::int64_t pick_count() const;

 private:
  std::int32_t m_ = 0;
  std::int32_t n_ = 0;
  std::int32_t l_ = 0;
  std::vector<std::vector<std::int32_t>> picks_;
};

// Per-user top-l by score, ties broken by ascending item index. Only items
// with positive score are candidates; users with fewer than l candidates get
// truncated lists.
RecommendationMatrix unconstrained_topl(const ScoreMatrix& scores,
                                        const InteractionDataset& ds,
                                        std::int32_t list_length);

// Largest-score-first matching under list-length and stock constraints:
// walks all positive (user,item) pairs in descending score order (ties:
// ascending user, then item) and assigns whenever the user still has a
// vacancy and the item still has stock.
RecommendationMatrix greedy_match(const ScoreMatrix& scores,
                                  const InteractionDataset& ds,
                                  std::int32_t list_length,
                                  const StockVector& stocks);

// One line per user: "user_ext_id: item_ext_id,item_ext_id,...".
void write_recommendations(const RecommendationMatrix& recs,
                           const InteractionDataset& ds, std::ostream& out);

}  // namespace fairmatch
