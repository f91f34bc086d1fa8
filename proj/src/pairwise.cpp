#include "tclfuzz/pairwise.hpp"

#include <algorithm>
#include <numeric>

namespace tclfuzz {

std::size_t pairwise_lower_bound(std::span<const int> counts) {
  if (counts.empty()) return 0;
  if (counts.size() == 1) return 1;
  std::vector<int> sorted(counts.begin(), counts.end());
  std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(), std::greater<>());
  return static_cast<std::size_t>(sorted[0]) * static_cast<std::size_t>(sorted[1]);
}

CoveringArray pairwise_cycle(std::span<const int> counts) {
  const std::size_t q = counts.size();
  if (q == 0) return {};
  if (q == 1) return {{0}};

  // Columns by descending attribute count; ties keep declaration order.
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  auto level_count = [&](std::size_t col) { return std::max(1, counts[col]); };

  constexpr int kDontCare = -1;
  CoveringArray rows;
  const std::size_t c0 = order[0];
  const std::size_t c1 = order[1];
  for (int i = 0; i < level_count(c0); ++i) {
    for (int j = 0; j < level_count(c1); ++j) {
      std::vector<int> row(q, kDontCare);
      row[c0] = i;
      row[c1] = j;
      if (q >= 3) row[order[2]] = (i + j) % level_count(order[2]);
      rows.push_back(std::move(row));
    }
  }

  // In-parameter-order extension for every remaining column.
  for (std::size_t k = 3; k < q; ++k) {
    const std::size_t p = order[k];
    const int np = level_count(p);
    // uncovered[m][vq * np + vp] for earlier column order[m]
    std::vector<std::vector<char>> uncovered(k);
    for (std::size_t m = 0; m < k; ++m) {
      uncovered[m].assign(static_cast<std::size_t>(level_count(order[m]) * np), 1);
    }

    for (auto& row : rows) {
      int best = 0;
      int best_gain = -1;
      for (int v = 0; v < np; ++v) {
        int gain = 0;
        for (std::size_t m = 0; m < k; ++m) {
          int vq = row[order[m]];
          if (vq != kDontCare && uncovered[m][static_cast<std::size_t>(vq * np + v)]) ++gain;
        }
        if (gain > best_gain) {
          best_gain = gain;
          best = v;
        }
      }
      row[p] = best;
      for (std::size_t m = 0; m < k; ++m) {
        int vq = row[order[m]];
        if (vq != kDontCare) uncovered[m][static_cast<std::size_t>(vq * np + best)] = 0;
      }
    }

    const std::size_t grid_rows = rows.size();
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t col = order[m];
      for (int vq = 0; vq < level_count(col); ++vq) {
        for (int vp = 0; vp < np; ++vp) {
          if (!uncovered[m][static_cast<std::size_t>(vq * np + vp)]) continue;
          auto fit = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(grid_rows), rows.end(),
                                  [&](const std::vector<int>& r) { return r[p] == vp && r[col] == kDontCare; });
          if (fit != rows.end()) {
            (*fit)[col] = vq;
          } else {
            std::vector<int> row(q, kDontCare);
            row[col] = vq;
            row[p] = vp;
            rows.push_back(std::move(row));
          }
          uncovered[m][static_cast<std::size_t>(vq * np + vp)] = 0;
        }
      }
    }
  }

  for (auto& row : rows) {
    for (auto& v : row) {
      if (v == kDontCare) v = 0;
    }
  }
  return rows;
}

}  // namespace tclfuzz
