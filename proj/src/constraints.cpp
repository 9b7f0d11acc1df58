#include "fairmatch/constraints.hpp"

#include <numeric>
#include <stdexcept>

#include "fairmatch/errors.hpp"

namespace fairmatch {

std::int64_t StockVector::total() const {
  return std::accumulate(q.begin(), q.end(), std::int64_t{0});
}

StockVector stock_volumes(std::span<const std::int32_t> item_degrees,
                          std::int32_t user_count, std::int32_t list_length) {
  if (list_length < 1) {
    throw std::invalid_argument("list length must be at least 1");
  }
  if (user_count < 1) {
    throw std::invalid_argument("user count must be at least 1");
  }
  std::int64_t degree_sum = 0;
  for (auto deg : item_degrees) degree_sum += deg;
  if (degree_sum <= 0) {
    throw DataError("all item degrees are zero; no stock can be assigned");
  }

  StockVector stocks;
  stocks.user_count = user_count;
  stocks.list_length = list_length;
  stocks.q.resize(item_degrees.size());
  const std::int64_t demand =
      static_cast<std::int64_t>(user_count) * list_length;
  for (std::size_t j = 0; j < item_degrees.size(); ++j) {
    // ceil(demand * deg / degree_sum) in exact integer arithmetic; the
    // ceiling is what makes sum(q) >= m*l hold unconditionally.
    const std::int64_t numer = demand * item_degrees[j];
    stocks.q[j] = (numer + degree_sum - 1) / degree_sum;
  }
  return stocks;
}

}  // namespace fairmatch
