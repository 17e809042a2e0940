#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library search routines: fillings are generated as raw
// grids in row-major order and checked wholesale at the end.

#include <map>
#include <vector>

#include "blockunits/partition.hpp"

namespace oracle {

using blockunits::Partition;

struct Grid {
  // entry per box, rows indexed from 0, columns from inner[r] to outer[r)-1
  std::map<std::pair<int, int>, int> entry;
};

inline bool grid_valid(const Grid& g, const Partition& outer,
                       const Partition& inner) {
  for (const auto& [rc, e] : g.entry) {
    auto [r, c] = rc;
    if (g.entry.count({r, c + 1}) && e > g.entry.at({r, c + 1})) return false;
    if (g.entry.count({r + 1, c}) && e >= g.entry.at({r + 1, c})) return false;
  }
  // reading word: right to left, top to bottom
  std::map<int, int> count;
  for (int r = 0; r < outer.rows(); ++r) {
    for (int c = outer.part(r) - 1; c >= inner.part(r); --c) {
      int e = g.entry.at({r, c});
      ++count[e];
      if (e > 1 && count[e] > count[e - 1]) return false;
    }
  }
  return true;
}

inline void fill_rec(const Partition& outer, const Partition& inner,
                     std::vector<std::pair<int, int>>& boxes, size_t pos,
                     std::vector<int>& left, Grid& g, long long& found,
                     long long stop_after) {
  if (found >= stop_after) return;
  if (pos == boxes.size()) {
    if (grid_valid(g, outer, inner)) ++found;
    return;
  }
  for (int e = 1; e <= (int)left.size(); ++e) {
    if (left[e - 1] == 0) continue;
    --left[e - 1];
    g.entry[boxes[pos]] = e;
    fill_rec(outer, inner, boxes, pos + 1, left, g, found, stop_after);
    g.entry.erase(boxes[pos]);
    ++left[e - 1];
  }
}

inline long long count_fillings(const Partition& outer, const Partition& inner,
                                const Partition& content,
                                long long stop_after = 1000000000) {
  if (!outer.contains(inner)) return 0;
  if (outer.boxes() - inner.boxes() != content.boxes()) return 0;
  std::vector<std::pair<int, int>> boxes;
  for (int r = 0; r < outer.rows(); ++r)
    for (int c = inner.part(r); c < outer.part(r); ++c) boxes.push_back({r, c});
  std::vector<int> left = content.parts();
  Grid g;
  long long found = 0;
  fill_rec(outer, inner, boxes, 0, left, g, found, stop_after);
  return found;
}

inline bool lr_exists(const Partition& outer, const Partition& inner,
                      const Partition& content) {
  return count_fillings(outer, inner, content, 1) > 0;
}

inline void subparts_rec(const Partition& outer, int row, int prev, int left,
                         std::vector<int>& acc, std::vector<Partition>& out) {
  if (left == 0) {
    out.push_back(Partition(acc));
    return;
  }
  if (row >= outer.rows()) return;
  for (int p = std::min({outer.part(row), prev, left}); p >= 1; --p) {
    acc.push_back(p);
    subparts_rec(outer, row + 1, p, left - p, acc, out);
    acc.pop_back();
  }
}

inline std::vector<Partition> subpartitions(const Partition& outer, int size) {
  std::vector<Partition> out;
  if (size == 0) {
    out.push_back(Partition{});
    return out;
  }
  std::vector<int> acc;
  subparts_rec(outer, 0, outer.max_part(), size, acc, out);
  return out;
}

// chain with quotients isomorphic to the factors in the given order
inline bool filtration_exists(const Partition& total,
                              const std::vector<Partition>& factors,
                              size_t level = 0) {
  if (level == factors.size()) return total.empty();
  // peel the top factor: total / Q = factors[last]
  const Partition& top = factors[factors.size() - 1 - level];
  int qsize = total.boxes() - top.boxes();
  if (qsize < 0) return false;
  for (const Partition& q : subpartitions(total, qsize))
    if (lr_exists(total, q, top) && filtration_exists(q, factors, level + 1))
      return true;
  return false;
}

}  // namespace oracle
