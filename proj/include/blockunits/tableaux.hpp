#pragma once

#include <vector>

#include "blockunits/partition.hpp"

namespace blockunits::tableaux {

using blockunits::Partition;

struct SkewShape {
  Partition outer, inner;

  bool valid() const { return outer.contains(inner); }
  int boxes() const { return outer.boxes() - inner.boxes(); }
  // boxes of row r are columns inner.part(r) .. outer.part(r)-1
  int row_begin(int r) const { return inner.part(r); }
  int row_end(int r) const { return outer.part(r); }
  int rows() const { return outer.rows(); }
};

// Entries stored row-major (top row first, left to right within a row),
// one entry per box of the skew shape.
struct SkewTableau {
  SkewShape shape;
  std::vector<int> entries;

  bool well_formed() const;
  // entry at (row, col); the box must belong to the shape
  int at(int row, int col) const;
};

// rows weakly increase left to right, columns strictly increase top to bottom
bool is_semistandard(const SkewTableau& t);

// every prefix of the right-to-left top-to-bottom reading word has
// #i >= #(i+1) for all i
bool has_lattice_property(const SkewTableau& t);

// content of a lattice tableau; throws std::invalid_argument if the lattice
// property fails (the counts would not be a partition)
Partition content(const SkewTableau& t);

// existence of a semistandard lattice filling of shape outer/inner with the
// given content; false when inner is not contained in outer or the box
// counts disagree
bool lr_exists(const Partition& outer, const Partition& inner,
               const Partition& content);

// all semistandard lattice fillings, each exactly once, in lexicographic
// reading-word order
std::vector<SkewTableau> enumerate_fillings(const SkewShape& shape,
                                            const Partition& content);

// existence of a chain 0 = M_0 <= ... <= M_k = total with successive
// quotients isomorphic to the factors (order-independent)
bool filtration_exists(const Partition& total,
                       const std::vector<Partition>& factors);

inline int gamma(const Partition& p, int j) { return p.gamma(j); }

}  // namespace blockunits::tableaux
