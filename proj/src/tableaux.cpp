#include "blockunits/tableaux.hpp"

#include <map>
#include <stdexcept>

namespace blockunits {

namespace {

void gen_partitions(int n, int max_part, std::vector<int>& acc,
                    std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(acc));
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    acc.push_back(p);
    gen_partitions(n - p, p, acc, out);
    acc.pop_back();
  }
}

void gen_subpartitions(const Partition& outer, int row, int prev, int left,
                       std::vector<int>& acc, std::vector<Partition>& out) {
  if (left == 0) {
    out.push_back(Partition(acc));
    return;
  }
  if (row >= outer.rows()) return;
  // enough room in the remaining rows?
  int room = 0;
  for (int r = row; r < outer.rows(); ++r) room += std::min(outer.part(r), prev);
  if (room < left) return;
  for (int p = std::min({outer.part(row), prev, left}); p >= 1; --p) {
    acc.push_back(p);
    gen_subpartitions(outer, row + 1, p, left - p, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_part) {
  std::vector<Partition> out;
  if (n < 0) return out;
  if (n == 0) {
    out.push_back(Partition{});
    return out;
  }
  if (max_part <= 0) return out;
  std::vector<int> acc;
  gen_partitions(n, max_part, acc, out);
  return out;
}

std::vector<Partition> subpartitions_of_size(const Partition& outer, int n) {
  std::vector<Partition> out;
  if (n < 0 || n > outer.boxes()) return out;
  if (n == 0) {
    out.push_back(Partition{});
    return out;
  }
  std::vector<int> acc;
  gen_subpartitions(outer, 0, outer.max_part(), n, acc, out);
  return out;
}

}  // namespace blockunits

namespace blockunits::tableaux {

bool SkewTableau::well_formed() const {
  return shape.valid() && (int)entries.size() == shape.boxes();
}

int SkewTableau::at(int row, int col) const {
  int idx = 0;
  for (int r = 0; r < row; ++r) idx += shape.row_end(r) - shape.row_begin(r);
  if (col < shape.row_begin(row) || col >= shape.row_end(row))
    throw std::out_of_range("box not in skew shape");
  return entries[idx + (col - shape.row_begin(row))];
}

bool is_semistandard(const SkewTableau& t) {
  if (!t.well_formed()) return false;
  const SkewShape& sh = t.shape;
  for (int r = 0; r < sh.rows(); ++r) {
    for (int c = sh.row_begin(r); c < sh.row_end(r); ++c) {
      if (t.at(r, c) < 1) return false;
      if (c + 1 < sh.row_end(r) && t.at(r, c) > t.at(r, c + 1)) return false;
      if (r > 0 && c >= sh.row_begin(r - 1) && c < sh.row_end(r - 1) &&
          t.at(r - 1, c) >= t.at(r, c))
        return false;
    }
  }
  return true;
}

bool has_lattice_property(const SkewTableau& t) {
  if (!t.well_formed()) return false;
  const SkewShape& sh = t.shape;
  std::map<int, int> count;
  for (int r = 0; r < sh.rows(); ++r) {
    for (int c = sh.row_end(r) - 1; c >= sh.row_begin(r); --c) {
      int e = t.at(r, c);
      ++count[e];
      if (e > 1 && count[e] > count[e - 1]) return false;
    }
  }
  return true;
}

Partition content(const SkewTableau& t) {
  if (!has_lattice_property(t))
    throw std::invalid_argument("content: tableau violates the lattice property");
  int maxe = 0;
  for (int e : t.entries) maxe = std::max(maxe, e);
  std::vector<int> counts(maxe, 0);
  for (int e : t.entries) ++counts[e - 1];
  return Partition(counts);
}

namespace {

// Row-by-row search used by lr_exists. A semistandard row is weakly
// increasing, so its reversal is read first in the reading word; for such
// tableaux the lattice property reduces to the row-level ballot check
//   #(i+1) in rows 1..r  <=  #i in rows 1..r-1   for all i, r.
struct LrSearch {
  const SkewShape& sh;
  std::vector<int> remaining;       // per letter
  std::vector<int> used;            // per letter, in completed rows
  std::vector<std::vector<int>> row_fill;  // entry per column of each row

  explicit LrSearch(const SkewShape& s, const Partition& content)
      : sh(s), remaining(content.parts()), used(content.rows(), 0) {
    row_fill.assign(s.rows(), {});
  }

  bool fill_row(int r, int c, std::vector<int>& row_used) {
    if (c == sh.row_end(r)) {
      for (size_t i = 1; i < used.size(); ++i)
        if (used[i] + row_used[i] > used[i - 1]) return false;
      for (size_t i = 0; i < used.size(); ++i) used[i] += row_used[i];
      bool ok = fill_from(r + 1);
      for (size_t i = 0; i < used.size(); ++i) used[i] -= row_used[i];
      return ok;
    }
    int lo = 1;
    if (c > sh.row_begin(r)) lo = std::max(lo, row_fill[r][c - 1 - sh.row_begin(r)]);
    if (r > 0 && c >= sh.row_begin(r - 1) && c < sh.row_end(r - 1))
      lo = std::max(lo, row_fill[r - 1][c - sh.row_begin(r - 1)] + 1);
    for (int e = lo; e <= (int)remaining.size(); ++e) {
      if (remaining[e - 1] == 0) continue;
      --remaining[e - 1];
      ++row_used[e - 1];
      row_fill[r].push_back(e);
      if (fill_row(r, c + 1, row_used)) return true;
      row_fill[r].pop_back();
      --row_used[e - 1];
      ++remaining[e - 1];
    }
    return false;
  }

  bool fill_from(int r) {
    if (r == sh.rows()) {
      for (int rem : remaining)
        if (rem) return false;
      return true;
    }
    std::vector<int> row_used(remaining.size(), 0);
    return fill_row(r, sh.row_begin(r), row_used);
  }
};

}  // namespace

bool lr_exists(const Partition& outer, const Partition& inner,
               const Partition& content) {
  if (!outer.contains(inner)) return false;
  if (outer.boxes() - inner.boxes() != content.boxes()) return false;
  if (content.empty()) return outer == inner;
  // each letter at most once per column
  if (content.max_part() > outer.max_part()) return false;
  if (content.rows() > outer.rows()) return false;
  SkewShape sh{outer, inner};
  LrSearch search(sh, content);
  return search.fill_from(0);
}

namespace {

struct BoxRef {
  int row, col;
};

// Fills boxes in reading-word order (right to left, top to bottom) with
// incremental semistandard and lattice checks; emits in lexicographic
// reading-word order.
void enumerate_rec(const SkewShape& sh, const std::vector<BoxRef>& boxes,
                   size_t pos, std::vector<int>& remaining,
                   std::vector<int>& word, std::vector<int>& prefix,
                   std::vector<SkewTableau>& out) {
  if (pos == boxes.size()) {
    SkewTableau t;
    t.shape = sh;
    t.entries.reserve(word.size());
    size_t idx = 0;
    for (int r = 0; r < sh.rows(); ++r) {
      int w = sh.row_end(r) - sh.row_begin(r);
      for (int c = w - 1; c >= 0; --c) t.entries.push_back(word[idx + c]);
      idx += w;
    }
    out.push_back(std::move(t));
    return;
  }
  auto [r, c] = boxes[pos];
  for (int e = 1; e <= (int)remaining.size(); ++e) {
    if (remaining[e - 1] == 0) continue;
    // box to the right was filled one step earlier in this row
    if (c + 1 < sh.row_end(r) && e > word[pos - 1]) continue;
    if (e > 1 && prefix[e - 1] + 1 > prefix[e - 2]) continue;  // lattice
    if (r > 0 && c >= sh.row_begin(r - 1) && c < sh.row_end(r - 1)) {
      // entry directly above; find it in the already-filled previous row
      size_t above = 0;
      for (int rr = 0; rr + 1 < r; ++rr)
        above += sh.row_end(rr) - sh.row_begin(rr);
      above += sh.row_end(r - 1) - 1 - c;
      if (word[above] >= e) continue;
    }
    --remaining[e - 1];
    ++prefix[e - 1];
    word.push_back(e);
    enumerate_rec(sh, boxes, pos + 1, remaining, word, prefix, out);
    word.pop_back();
    --prefix[e - 1];
    ++remaining[e - 1];
  }
}

}  // namespace

std::vector<SkewTableau> enumerate_fillings(const SkewShape& shape,
                                            const Partition& content) {
  std::vector<SkewTableau> out;
  if (!shape.valid() || shape.boxes() != content.boxes()) return out;
  std::vector<BoxRef> boxes;
  for (int r = 0; r < shape.rows(); ++r)
    for (int c = shape.row_end(r) - 1; c >= shape.row_begin(r); --c)
      boxes.push_back({r, c});
  std::vector<int> remaining = content.parts();
  std::vector<int> word, prefix(content.rows(), 0);
  word.reserve(boxes.size());
  enumerate_rec(shape, boxes, 0, remaining, word, prefix, out);
  return out;
}

namespace {

bool filtration_rec(const Partition& current,
                    const std::vector<Partition>& factors, size_t level,
                    std::map<std::pair<size_t, Partition>, bool>& memo) {
  if (level == factors.size()) return current.empty();
  auto key = std::make_pair(level, current);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const Partition& top = factors[level];
  bool ok = false;
  for (const Partition& q :
       subpartitions_of_size(current, current.boxes() - top.boxes())) {
    if (lr_exists(current, q, top) &&
        filtration_rec(q, factors, level + 1, memo)) {
      ok = true;
      break;
    }
  }
  memo[key] = ok;
  return ok;
}

}  // namespace

bool filtration_exists(const Partition& total,
                       const std::vector<Partition>& factors) {
  int sum = 0;
  std::vector<Partition> fs;
  for (const Partition& f : factors) {
    sum += f.boxes();
    if (!f.empty()) fs.push_back(f);
  }
  if (sum != total.boxes()) return false;
  // largest factor first; order is immaterial for the verdict
  std::sort(fs.begin(), fs.end(),
            [](const Partition& a, const Partition& b) { return b < a; });
  std::map<std::pair<size_t, Partition>, bool> memo;
  return filtration_rec(total, fs, 0, memo);
}

}  // namespace blockunits::tableaux
