#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fairmatch/data.hpp"

namespace fairmatch {

struct ScoreEntry {
  std::int32_t item = 0;
  double value = 0.0;
};

enum class ScoreKind { kRaw, kNormalized };

/// Per-user sparse score rows. Interacted items never appear (their score is
/// zero by convention) and stored entries are strictly positive; entries are
/// sorted by item index.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::int32_t user_count, std::int32_t item_count,
              std::vector<std::vector<ScoreEntry>> rows,
              ScoreKind kind = ScoreKind::kRaw, double theta = 0.0);

  std::int32_t user_count() const noexcept { return m_; }
  std::int32_t item_count() const noexcept { return n_; }
  ScoreKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }

  std::span<const ScoreEntry> row(std::int32_t user) const {
    return rows_[static_cast<std::size_t>(user)];
  }
  // 0.0 for absent entries.
  double value_at(std::int32_t user, std::int32_t item) const;
  std::int64_t entry_count() const noexcept;

 private:
  std::int32_t m_ = 0;
  std::int32_t n_ = 0;
  ScoreKind kind_ = ScoreKind::kRaw;
  double theta_ = 0.0;
  std::vector<std::vector<ScoreEntry>> rows_;
};

// Two-step mass diffusion on the bipartite interaction graph: each target
// user's interacted items spread one unit each to their users (split by item
// degree), which reflect it back to items (split by user degree). Interacted
// items are then zeroed and entries below 1e-12 dropped. Rows are
// independent, so the loop is parallel. When pre_zero_mass is given it
// receives, per user, the total diffused mass before zeroing (equals the
// user degree up to rounding).
ScoreMatrix p3_scores(const InteractionDataset& ds,
                      std::vector<double>* pre_zero_mass = nullptr);

// Divides each score by the item's degree raised to lambda in [0,1],
// demoting popular items.
ScoreMatrix rp3_rescale(const ScoreMatrix& raw,
                        std::span<const std::int32_t> item_degrees,
                        double lambda);

// Divides each row by its sum raised to theta in [0,1]. theta = 1 yields
// unit row sums; zero rows stay zero.
ScoreMatrix normalize_rows(const ScoreMatrix& raw, double theta);

// Cache: header "m n", then "i j value" lines with 17 significant digits.
void write_score_cache(const ScoreMatrix& scores, std::ostream& out);
ScoreMatrix read_score_cache(std::istream& in);

}  // namespace fairmatch
