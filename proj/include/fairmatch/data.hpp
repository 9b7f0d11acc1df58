#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairmatch/errors.hpp"

namespace fairmatch {

// One line of a rating log. user/item are external ids.
struct RatingEvent {
  std::int64_t user = 0;
  std::int64_t item = 0;
  int rating = 0;             // 1..5
  std::int64_t timestamp = 0; // seconds since epoch, >= 0
};

enum class RatingFormat { kTab, kDoubleColon };

/// Immutable sparse binary user-item adjacency with degree indexes and
/// bidirectional id maps. Internal indices are dense 0-based; external ids
/// are whatever the source log used. Row (user->items) and column
/// (item->users) views are both kept so diffusion can walk either direction.
class InteractionDataset {
 public:
  InteractionDataset() = default;

  // Builds from internal-index pairs. Duplicates collapse to one. When the
  // id vectors are empty, external ids default to the internal indices.
  static InteractionDataset from_pairs(
      std::int32_t user_count, std::int32_t item_count,
      std::vector<std::pair<std::int32_t, std::int32_t>> pairs,
      std::vector<std::int64_t> user_ids = {},
      std::vector<std::int64_t> item_ids = {});

  std::int32_t user_count() const noexcept { return m_; }
  std::int32_t item_count() const noexcept { return n_; }
  std::int64_t interaction_count() const noexcept {
    return static_cast<std::int64_t>(col_indices_.size());
  }

  // Sorted ascending.
  std::span<const std::int32_t> items_of(std::int32_t user) const;
  std::span<const std::int32_t> users_of(std::int32_t item) const;

  bool has_interaction(std::int32_t user, std::int32_t item) const;

  std::span<const std::int32_t> user_degrees() const noexcept { return user_degrees_; }
  std::span<const std::int32_t> item_degrees() const noexcept { return item_degrees_; }

  std::int64_t user_id(std::int32_t user) const { return user_ids_.at(user); }
  std::int64_t item_id(std::int32_t item) const { return item_ids_.at(item); }
  std::optional<std::int32_t> lookup_user(std::int64_t external_id) const;
  std::optional<std::int32_t> lookup_item(std::int64_t external_id) const;

 private:
  std::int32_t m_ = 0;
  std::int32_t n_ = 0;
  // CSR: user -> items.
  std::vector<std::int64_t> row_offsets_;
  std::vector<std::int32_t> col_indices_;
  // CSC: item -> users.
  std::vector<std::int64_t> col_offsets_;
  std::vector<std::int32_t> row_indices_;
  std::vector<std::int32_t> user_degrees_;
  std::vector<std::int32_t> item_degrees_;
  std::vector<std::int64_t> user_ids_;
  std::vector<std::int64_t> item_ids_;
  std::unordered_map<std::int64_t, std::int32_t> user_index_;
  std::unordered_map<std::int64_t, std::int32_t> item_index_;
};

// Training adjacency plus the held-out probe interactions, sharing one id
// space. Users/items seen only in the probe period are present in the maps
// but carry no training edges (zero degree).
struct Corpus {
  InteractionDataset train;
  std::vector<std::vector<std::int32_t>> probe_items;  // per user, sorted
  std::int64_t probe_pairs = 0;
};

// Reads "user item rating timestamp" lines. Throws ParseError (with the
// 1-based line number) on wrong field count, non-integer fields, rating
// outside 1..5 or negative timestamp. Blank lines are not tolerated either;
// the loader does not silently skip anything.
std::vector<RatingEvent> parse_ratings(std::istream& in, RatingFormat format);

// Keeps events with rating >= threshold, collapses duplicate (user,item)
// pairs to one interaction, and assembles the adjacency. Index assignment
// follows first appearance in the input order. Throws DataError when no
// event survives.
InteractionDataset build_interactions(std::span<const RatingEvent> events,
                                      int threshold = 3);

// Stable-sorts by timestamp and splits: first floor(ratio*count) events are
// train, the rest probe. Ties keep input order. Throws DataError for fewer
// than 2 events.
std::pair<std::vector<RatingEvent>, std::vector<RatingEvent>> temporal_split(
    std::span<const RatingEvent> events, double ratio = 0.8);

// Full ingestion front: filter by threshold, collapse duplicate pairs to
// their earliest timestamp, split temporally, then build the train adjacency
// with an id space spanning train and probe.
Corpus make_corpus(std::vector<RatingEvent> events, int threshold = 3,
                   double ratio = 0.8);

// Columnar cache: header "m n nnz", then one "i j" pair per line
// (zero-based internal indices, row-major).
void write_dataset_cache(const InteractionDataset& ds, std::ostream& out);
InteractionDataset read_dataset_cache(std::istream& in);

// Id map sidecar: one "internal external" pair per line.
void write_id_map(std::span<const std::int64_t> ids, std::ostream& out);
std::vector<std::int64_t> read_id_map(std::istream& in);

// Re-emits the adjacency as a rating log (rating 5, timestamp 0) so that a
// parse + build round trip reproduces it.
void serialize_as_ratings(const InteractionDataset& ds, std::ostream& out);

}  // namespace fairmatch
