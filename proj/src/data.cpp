#include "fairmatch/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>

namespace fairmatch {

namespace {

// CSR/CSC assembly from deduplicated internal-index pairs.
struct AdjacencyParts {
  std::vector<std::int64_t> row_offsets;
  std::vector<std::int32_t> col_indices;
  std::vector<std::int64_t> col_offsets;
  std::vector<std::int32_t> row_indices;
  std::vector<std::int32_t> user_degrees;
  std::vector<std::int32_t> item_degrees;
};

AdjacencyParts assemble(std::int32_t m, std::int32_t n,
                        std::vector<std::pair<std::int32_t, std::int32_t>>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  AdjacencyParts parts;
  parts.user_degrees.assign(static_cast<std::size_t>(m), 0);
  parts.item_degrees.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : pairs) {
    ++parts.user_degrees[static_cast<std::size_t>(u)];
    ++parts.item_degrees[static_cast<std::size_t>(v)];
  }

  parts.row_offsets.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::int32_t u = 0; u < m; ++u) {
    parts.row_offsets[static_cast<std::size_t>(u) + 1] =
        parts.row_offsets[static_cast<std::size_t>(u)] + parts.user_degrees[static_cast<std::size_t>(u)];
  }
  parts.col_indices.resize(pairs.size());
  {
    auto cursor = parts.row_offsets;
    for (const auto& [u, v] : pairs) {
      parts.col_indices[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
    }
  }

  parts.col_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::int32_t v = 0; v < n; ++v) {
    parts.col_offsets[static_cast<std::size_t>(v) + 1] =
        parts.col_offsets[static_cast<std::size_t>(v)] + parts.item_degrees[static_cast<std::size_t>(v)];
  }
  parts.row_indices.resize(pairs.size());
  {
    auto cursor = parts.col_offsets;
    for (const auto& [u, v] : pairs) {
      parts.row_indices[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
    }
  }
  return parts;
}

std::int64_t parse_int_field(std::string_view field, std::size_t line_no,
                             const char* what) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw ParseError(std::string("expected integer ") + what + ", got \"" +
                         std::string(field) + "\"",
                     line_no);
  }
  return value;
}

}  // namespace

InteractionDataset InteractionDataset::from_pairs(
    std::int32_t user_count, std::int32_t item_count,
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs,
    std::vector<std::int64_t> user_ids, std::vector<std::int64_t> item_ids) {
  InteractionDataset ds;
  ds.m_ = user_count;
  ds.n_ = item_count;
  for (const auto& [u, v] : pairs) {
    if (u < 0 || u >= user_count || v < 0 || v >= item_count) {
      throw DataError("interaction pair out of range");
    }
  }
  auto parts = assemble(user_count, item_count, pairs);
  ds.row_offsets_ = std::move(parts.row_offsets);
  ds.col_indices_ = std::move(parts.col_indices);
  ds.col_offsets_ = std::move(parts.col_offsets);
  ds.row_indices_ = std::move(parts.row_indices);
  ds.user_degrees_ = std::move(parts.user_degrees);
  ds.item_degrees_ = std::move(parts.item_degrees);

  if (user_ids.empty()) {
    user_ids.resize(static_cast<std::size_t>(user_count));
    for (std::int32_t i = 0; i < user_count; ++i) user_ids[static_cast<std::size_t>(i)] = i;
  }
  if (item_ids.empty()) {
    item_ids.resize(static_cast<std::size_t>(item_count));
    for (std::int32_t j = 0; j < item_count; ++j) item_ids[static_cast<std::size_t>(j)] = j;
  }
  if (std::ssize(user_ids) != user_count || std::ssize(item_ids) != item_count) {
    throw DataError("id map size does not match dataset dimensions");
  }
  ds.user_ids_ = std::move(user_ids);
  ds.item_ids_ = std::move(item_ids);
  ds.user_index_.reserve(ds.user_ids_.size());
  ds.item_index_.reserve(ds.item_ids_.size());
  for (std::int32_t i = 0; i < user_count; ++i) {
    if (!ds.user_index_.emplace(ds.user_ids_[static_cast<std::size_t>(i)], i).second) {
      throw DataError("duplicate external user id");
    }
  }
  for (std::int32_t j = 0; j < item_count; ++j) {
    if (!ds.item_index_.emplace(ds.item_ids_[static_cast<std::size_t>(j)], j).second) {
      throw DataError("duplicate external item id");
    }
  }
  return ds;
}

std::span<const std::int32_t> InteractionDataset::items_of(std::int32_t user) const {
  auto begin = static_cast<std::size_t>(row_offsets_[static_cast<std::size_t>(user)]);
  auto end = static_cast<std::size_t>(row_offsets_[static_cast<std::size_t>(user) + 1]);
  return {col_indices_.data() + begin, end - begin};
}

std::span<const std::int32_t> InteractionDataset::users_of(std::int32_t item) const {
  auto begin = static_cast<std::size_t>(col_offsets_[static_cast<std::size_t>(item)]);
  auto end = static_cast<std::size_t>(col_offsets_[static_cast<std::size_t>(item) + 1]);
  return {row_indices_.data() + begin, end - begin};
}

bool InteractionDataset::has_interaction(std::int32_t user, std::int32_t item) const {
  auto row = items_of(user);
  return std::binary_search(row.begin(), row.end(), item);
}

std::optional<std::int32_t> InteractionDataset::lookup_user(std::int64_t external_id) const {
  auto it = user_index_.find(external_id);
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int32_t> InteractionDataset::lookup_item(std::int64_t external_id) const {
  auto it = item_index_.find(external_id);
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<RatingEvent> parse_ratings(std::istream& in, RatingFormat format) {
  std::vector<RatingEvent> events;
  std::string line;
  std::size_t line_no = 0;
  const std::string_view sep = format == RatingFormat::kTab ? "\t" : "::";

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view rest(line);
    std::string_view fields[4];
    int count = 0;
    while (count < 4) {
      auto pos = rest.find(sep);
      if (pos == std::string_view::npos) {
        fields[count++] = rest;
        rest = {};
        break;
      }
      fields[count++] = rest.substr(0, pos);
      rest = rest.substr(pos + sep.size());
      if (count == 4) break;
    }
    if (count != 4 || !rest.empty()) {
      throw ParseError("expected 4 fields", line_no);
    }
    RatingEvent ev;
    ev.user = parse_int_field(fields[0], line_no, "user id");
    ev.item = parse_int_field(fields[1], line_no, "item id");
    const std::int64_t rating = parse_int_field(fields[2], line_no, "rating");
    ev.timestamp = parse_int_field(fields[3], line_no, "timestamp");
    if (rating < 1 || rating > 5) {
      throw ParseError("rating out of range 1..5", line_no);
    }
    if (ev.timestamp < 0) {
      throw ParseError("negative timestamp", line_no);
    }
    ev.rating = static_cast<int>(rating);
    events.push_back(ev);
  }
  return events;
}

namespace {

// First-appearance index assignment over events that pass the threshold.
struct IdAssignment {
  std::vector<std::int64_t> user_ids;
  std::vector<std::int64_t> item_ids;
  std::unordered_map<std::int64_t, std::int32_t> user_index;
  std::unordered_map<std::int64_t, std::int32_t> item_index;

  std::int32_t user(std::int64_t ext) {
    auto [it, inserted] = user_index.emplace(ext, static_cast<std::int32_t>(user_ids.size()));
    if (inserted) user_ids.push_back(ext);
    return it->second;
  }
  std::int32_t item(std::int64_t ext) {
    auto [it, inserted] = item_index.emplace(ext, static_cast<std::int32_t>(item_ids.size()));
    if (inserted) item_ids.push_back(ext);
    return it->second;
  }
};

}  // namespace

InteractionDataset build_interactions(std::span<const RatingEvent> events,
                                      int threshold) {
  if (threshold < 1 || threshold > 5) {
    throw std::invalid_argument("threshold must lie in [1,5]");
  }
  IdAssignment ids;
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(events.size());
  for (const auto& ev : events) {
    if (ev.rating < threshold) continue;
    pairs.emplace_back(ids.user(ev.user), ids.item(ev.item));
  }
  if (pairs.empty()) {
    throw DataError("no interaction survives the rating threshold");
  }
  const auto m = static_cast<std::int32_t>(ids.user_ids.size());
  const auto n = static_cast<std::int32_t>(ids.item_ids.size());
  return InteractionDataset::from_pairs(m, n, std::move(pairs),
                                        std::move(ids.user_ids),
                                        std::move(ids.item_ids));
}

std::pair<std::vector<RatingEvent>, std::vector<RatingEvent>> temporal_split(
    std::span<const RatingEvent> events, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("split ratio must lie strictly between 0 and 1");
  }
  if (events.size() < 2) {
    throw DataError("need at least 2 events to split");
  }
  std::vector<RatingEvent> sorted(events.begin(), events.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RatingEvent& a, const RatingEvent& b) {
                     return a.timestamp < b.timestamp;
                   });
  const auto train_count = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(sorted.size())));
  std::vector<RatingEvent> train(sorted.begin(),
                                 sorted.begin() + static_cast<std::ptrdiff_t>(train_count));
  std::vector<RatingEvent> probe(sorted.begin() + static_cast<std::ptrdiff_t>(train_count),
                                 sorted.end());
  return {std::move(train), std::move(probe)};
}

Corpus make_corpus(std::vector<RatingEvent> events, int threshold, double ratio) {
  if (threshold < 1 || threshold > 5) {
    throw std::invalid_argument("threshold must lie in [1,5]");
  }
  // Filter first so the split ratio counts surviving interactions, then
  // collapse duplicate pairs onto their earliest timestamp.
  std::erase_if(events, [&](const RatingEvent& ev) { return ev.rating < threshold; });
  if (events.empty()) {
    throw DataError("no interaction survives the rating threshold");
  }
  {
    std::unordered_map<std::int64_t, std::size_t> seen;  // packed (user,item) -> index
    seen.reserve(events.size());
    std::vector<RatingEvent> unique;
    unique.reserve(events.size());
    std::unordered_map<std::int64_t, std::int32_t> umap, imap;
    auto intern = [](std::unordered_map<std::int64_t, std::int32_t>& map, std::int64_t key) {
      return map.emplace(key, static_cast<std::int32_t>(map.size())).first->second;
    };
    for (const auto& ev : events) {
      const std::int64_t key =
          (static_cast<std::int64_t>(intern(umap, ev.user)) << 32) | intern(imap, ev.item);
      auto [it, inserted] = seen.emplace(key, unique.size());
      if (inserted) {
        unique.push_back(ev);
      } else if (ev.timestamp < unique[it->second].timestamp) {
        unique[it->second] = ev;
      }
    }
    events = std::move(unique);
  }

  auto [train_events, probe_events] = temporal_split(events, ratio);

  // One id space across train and probe, assigned in time order.
  IdAssignment ids;
  std::vector<std::pair<std::int32_t, std::int32_t>> train_pairs;
  train_pairs.reserve(train_events.size());
  for (const auto& ev : train_events) {
    train_pairs.emplace_back(ids.user(ev.user), ids.item(ev.item));
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> probe_pairs;
  probe_pairs.reserve(probe_events.size());
  for (const auto& ev : probe_events) {
    probe_pairs.emplace_back(ids.user(ev.user), ids.item(ev.item));
  }

  const auto m = static_cast<std::int32_t>(ids.user_ids.size());
  const auto n = static_cast<std::int32_t>(ids.item_ids.size());
  Corpus corpus;
  corpus.train = InteractionDataset::from_pairs(m, n, std::move(train_pairs),
                                                std::move(ids.user_ids),
                                                std::move(ids.item_ids));
  corpus.probe_items.assign(static_cast<std::size_t>(m), {});
  for (const auto& [u, v] : probe_pairs) {
    corpus.probe_items[static_cast<std::size_t>(u)].push_back(v);
  }
  for (auto& row : corpus.probe_items) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    corpus.probe_pairs += std::ssize(row);
  }
  return corpus;
}

void write_dataset_cache(const InteractionDataset& ds, std::ostream& out) {
  out << ds.user_count() << ' ' << ds.item_count() << ' '
      << ds.interaction_count() << '\n';
  for (std::int32_t u = 0; u < ds.user_count(); ++u) {
    for (std::int32_t v : ds.items_of(u)) {
      out << u << ' ' << v << '\n';
    }
  }
}

InteractionDataset read_dataset_cache(std::istream& in) {
  std::int64_t m = 0, n = 0, nnz = 0;
  if (!(in >> m >> n >> nnz) || m < 0 || n < 0 || nnz < 0) {
    throw DataError("malformed dataset cache header");
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(nnz));
  for (std::int64_t k = 0; k < nnz; ++k) {
    std::int64_t u = 0, v = 0;
    if (!(in >> u >> v) || u < 0 || u >= m || v < 0 || v >= n) {
      throw DataError("malformed dataset cache entry");
    }
    pairs.emplace_back(static_cast<std::int32_t>(u), static_cast<std::int32_t>(v));
  }
  return InteractionDataset::from_pairs(static_cast<std::int32_t>(m),
                                        static_cast<std::int32_t>(n),
                                        std::move(pairs));
}

void write_id_map(std::span<const std::int64_t> ids, std::ostream& out) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << i << ' ' << ids[i] << '\n';
  }
}

std::vector<std::int64_t> read_id_map(std::istream& in) {
  std::vector<std::int64_t> ids;
  std::int64_t index = 0, ext = 0;
  while (in >> index >> ext) {
    if (index != std::ssize(ids)) {
      throw DataError("id map indices must be dense and in order");
    }
    ids.push_back(ext);
  }
  return ids;
}

void serialize_as_ratings(const InteractionDataset& ds, std::ostream& out) {
  for (std::int32_t u = 0; u < ds.user_count(); ++u) {
    for (std::int32_t v : ds.items_of(u)) {
      out << ds.user_id(u) << '\t' << ds.item_id(v) << "\t5\t0\n";
    }
  }
}

}  // namespace fairmatch
