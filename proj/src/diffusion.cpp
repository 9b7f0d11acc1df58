#include "fairmatch/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fairmatch {

namespace {
// Entries at or below this are treated as numerically zero and dropped.
constexpr double kDropBelow = 1e-12;
}  // namespace

ScoreMatrix::ScoreMatrix(std::int32_t user_count, std::int32_t item_count,
                         std::vector<std::vector<ScoreEntry>> rows,
                         ScoreKind kind, double theta)
    : m_(user_count), n_(item_count), kind_(kind), theta_(theta),
      rows_(std::move(rows)) {
  if (std::ssize(rows_) != m_) {
    throw std::invalid_argument("score row count does not match user count");
  }
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.item < b.item; });
    for (const auto& e : row) {
      if (e.item < 0 || e.item >= n_) {
        throw std::invalid_argument("score entry item index out of range");
      }
      if (!(e.value >= 0.0)) {
        throw std::invalid_argument("score entries must be nonnegative");
      }
    }
  }
}

double ScoreMatrix::value_at(std::int32_t user, std::int32_t item) const {
  const auto& row = rows_[static_cast<std::size_t>(user)];
  auto it = std::lower_bound(row.begin(), row.end(), item,
                             [](const ScoreEntry& e, std::int32_t j) { return e.item < j; });
  if (it == row.end() || it->item != item) return 0.0;
  return it->value;
}

std::int64_t ScoreMatrix::entry_count() const noexcept {
  std::int64_t total = 0;
  for (const auto& row : rows_) total += std::ssize(row);
  return total;
}

ScoreMatrix p3_scores(const InteractionDataset& ds,
                      std::vector<double>* pre_zero_mass) {
  const std::int32_t m = ds.user_count();
  const std::int32_t n = ds.item_count();
  const auto user_deg = ds.user_degrees();
  const auto item_deg = ds.item_degrees();

  std::vector<std::vector<ScoreEntry>> rows(static_cast<std::size_t>(m));
  if (pre_zero_mass) pre_zero_mass->assign(static_cast<std::size_t>(m), 0.0);

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    // Per-thread scratch: sparse accumulators with touch lists.
    std::vector<double> user_mass(static_cast<std::size_t>(m), 0.0);
    std::vector<double> item_mass(static_cast<std::size_t>(n), 0.0);
    std::vector<char> interacted(static_cast<std::size_t>(n), 0);
    std::vector<std::int32_t> touched_users, touched_items;
    touched_users.reserve(static_cast<std::size_t>(m));
    touched_items.reserve(static_cast<std::size_t>(n));

#ifdef _OPENMP
#pragma omp for schedule(dynamic, 32)
#endif
    for (std::int32_t i = 0; i < m; ++i) {
      const auto items = ds.items_of(i);
      if (items.empty()) continue;  // probe-only user: zero row

      // Items -> users: each interacted item spreads one unit of resource
      // equally over the users that hold it.
      for (std::int32_t j : items) {
        interacted[static_cast<std::size_t>(j)] = 1;
        const double share = 1.0 / static_cast<double>(item_deg[static_cast<std::size_t>(j)]);
        for (std::int32_t k : ds.users_of(j)) {
          if (user_mass[static_cast<std::size_t>(k)] == 0.0) touched_users.push_back(k);
          user_mass[static_cast<std::size_t>(k)] += share;
        }
      }
      // Users -> items: each reached user reflects its mass equally over its
      // own items.
      for (std::int32_t k : touched_users) {
        const double share = user_mass[static_cast<std::size_t>(k)] /
                             static_cast<double>(user_deg[static_cast<std::size_t>(k)]);
        for (std::int32_t j : ds.items_of(k)) {
          if (item_mass[static_cast<std::size_t>(j)] == 0.0) touched_items.push_back(j);
          item_mass[static_cast<std::size_t>(j)] += share;
        }
      }

      if (pre_zero_mass) {
        double total = 0.0;
        std::sort(touched_items.begin(), touched_items.end());
        for (std::int32_t j : touched_items) total += item_mass[static_cast<std::size_t>(j)];
        (*pre_zero_mass)[static_cast<std::size_t>(i)] = total;
      } else {
        std::sort(touched_items.begin(), touched_items.end());
      }

      auto& row = rows[static_cast<std::size_t>(i)];
      row.reserve(touched_items.size());
      for (std::int32_t j : touched_items) {
        const double value = item_mass[static_cast<std::size_t>(j)];
        if (!interacted[static_cast<std::size_t>(j)] && value > kDropBelow) {
          row.push_back({j, value});
        }
        item_mass[static_cast<std::size_t>(j)] = 0.0;
      }
      for (std::int32_t k : touched_users) user_mass[static_cast<std::size_t>(k)] = 0.0;
      for (std::int32_t j : items) interacted[static_cast<std::size_t>(j)] = 0;
      touched_users.clear();
      touched_items.clear();
    }
  }

  return ScoreMatrix(m, n, std::move(rows), ScoreKind::kRaw, 0.0);
}

ScoreMatrix rp3_rescale(const ScoreMatrix& raw,
                        std::span<const std::int32_t> item_degrees,
                        double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("rp3 exponent must lie in [0,1]");
  }
  if (std::ssize(item_degrees) != raw.item_count()) {
    throw std::invalid_argument("item degree vector size mismatch");
  }
  const std::int32_t m = raw.user_count();
  const std::int32_t n = raw.item_count();

  std::vector<double> damp(static_cast<std::size_t>(n), 1.0);
  for (std::int32_t j = 0; j < n; ++j) {
    const auto deg = item_degrees[static_cast<std::size_t>(j)];
    if (deg > 0) damp[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(deg), lambda);
  }

  std::vector<std::vector<ScoreEntry>> rows(static_cast<std::size_t>(m));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int32_t i = 0; i < m; ++i) {
    const auto src = raw.row(i);
    auto& dst = rows[static_cast<std::size_t>(i)];
    dst.reserve(src.size());
    for (const auto& e : src) {
      dst.push_back({e.item, e.value / damp[static_cast<std::size_t>(e.item)]});
    }
  }
  return ScoreMatrix(m, n, std::move(rows), ScoreKind::kRaw, 0.0);
}

ScoreMatrix normalize_rows(const ScoreMatrix& raw, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("normalization exponent must lie in [0,1]");
  }
  const std::int32_t m = raw.user_count();
  std::vector<std::vector<ScoreEntry>> rows(static_cast<std::size_t>(m));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int32_t i = 0; i < m; ++i) {
    const auto src = raw.row(i);
    auto& dst = rows[static_cast<std::size_t>(i)];
    if (src.empty()) continue;
    double sum = 0.0;
    for (const auto& e : src) sum += e.value;
    const double divisor = theta == 0.0 ? 1.0 : std::pow(sum, theta);
    dst.reserve(src.size());
    for (const auto& e : src) {
      dst.push_back({e.item, e.value / divisor});
    }
  }
  return ScoreMatrix(m, raw.item_count(), std::move(rows),
                     ScoreKind::kNormalized, theta);
}

void write_score_cache(const ScoreMatrix& scores, std::ostream& out) {
  out << scores.user_count() << ' ' << scores.item_count() << '\n';
  char buf[64];
  for (std::int32_t i = 0; i < scores.user_count(); ++i) {
    for (const auto& e : scores.row(i)) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, e.item, e.value);
      out << buf;
    }
  }
}

ScoreMatrix read_score_cache(std::istream& in) {
  std::int32_t m = 0, n = 0;
  if (!(in >> m >> n) || m < 0 || n < 0) {
    throw DataError("malformed score cache header");
  }
  std::vector<std::vector<ScoreEntry>> rows(static_cast<std::size_t>(m));
  std::int32_t i = 0, j = 0;
  double value = 0.0;
  while (in >> i >> j >> value) {
    if (i < 0 || i >= m || j < 0 || j >= n) {
      throw DataError("score cache entry out of range");
    }
    if (value > 0.0) rows[static_cast<std::size_t>(i)].push_back({j, value});
  }
  return ScoreMatrix(m, n, std::move(rows), ScoreKind::kRaw, 0.0);
}

}  // namespace fairmatch
