#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tclfuzz {

// Rows of attribute levels, one column per parameter, such that every pair of
// levels of every pair of columns appears in some row.
using CoveringArray = std::vector<std::vector<int>>;

// Strength-2 covering array for `attribute_counts` (each >= 1).
//  - no parameters: no rows
//  - one parameter: a single row {0} (that parameter mutated alone)
//  - two or three: exactly max * second-max rows (grid of the two largest,
//    third column (i + j) mod its count)
//  - more: grid of the two largest, then greedy column extension with extra
//    rows for pairs left uncovered
CoveringArray pairwise_cycle(std::span<const int> attribute_counts);

// max(B) * second-max(B), the row count no pairwise suite can go below.
std::size_t pairwise_lower_bound(std::span<const int> attribute_counts);

}  // namespace tclfuzz
