#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace nfih {

/// Sparse integer column: (row, value) pairs, rows strictly increasing.
using SparseColumn = std::vector<std::pair<int, long>>;

/**
 * Exact rank over Q of the matrix whose columns are given. Column reduction
 * with integer row operations and content normalisation; 64-bit arithmetic
 * with a switch to GMP integers on overflow.
 */
std::size_t exact_rank(const std::vector<SparseColumn>& columns);

}  // namespace nfih
