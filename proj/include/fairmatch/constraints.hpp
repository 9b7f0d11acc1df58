#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fairmatch {

// Per-item caps on how many lists an item may enter. q sums to at least
// m*l by the ceiling rule.
struct StockVector {
  std::vector<std::int64_t> q;
  std::int32_t user_count = 0;
  std::int32_t list_length = 0;

  std::int64_t total() const;
};

// q_j = ceil(m * l * deg(v_j) / sum_k deg(v_k)), computed in integer
// arithmetic so the feasibility guarantee sum(q) >= m*l holds exactly.
// Zero-degree items get q = 0. Throws DataError when every degree is zero.
StockVector stock_volumes(std::span<const std::int32_t> item_degrees,
                          std::int32_t user_count, std::int32_t list_length);

}  // namespace fairmatch
