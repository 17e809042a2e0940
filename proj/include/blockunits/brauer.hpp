#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockunits/grouprep.hpp"

namespace blockunits::brauer {

using grouprep::CharacterTable;
using grouprep::ValidationReport;

struct TreeVertex {
  std::string id;
  std::vector<std::string> chars;  // ordinary character ids at this vertex
};

struct TreeEdge {
  std::string id;
  std::string brauer_id;
  std::array<std::string, 2> ends;
};

struct BrauerTree {
  long long p = 0;
  std::vector<TreeVertex> vertices;
  std::optional<std::pair<std::string, int>> exceptional;  // vertex id, mult
  std::vector<TreeEdge> edges;
  std::map<std::string, std::vector<std::string>> cyclic_order;  // vertex -> edge ids
  std::string positive_vertex;

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  std::vector<int> incident_edges(int vertex) const;  // in cyclic order
  int exceptional_multiplicity() const {
    return exceptional ? exceptional->second : 1;
  }
  bool is_exceptional_vertex(int v) const {
    return exceptional && vertices[v].id == exceptional->first;
  }
};

struct BlockDescriptor {
  const CharacterTable* table = nullptr;
  BrauerTree tree;
  bool skewfield_free = true;
};

// tree-ness, character counts per vertex, sign bipartition, per-vertex degree
// sums (recovering the Brauer degrees), and the alternating sum of signed
// ordinary values on p'-classes
ValidationReport validate(const BlockDescriptor& block);

// the unique 2-coloring of the tree with the given vertex positive
std::map<std::string, int> signs_from_convention(const BrauerTree& tree,
                                                 const std::string& positive_vertex);

// incident Brauer character ids in stored cyclic order, rotated to start at
// the lexicographically least edge id
std::vector<std::string> edge_factors(const BrauerTree& tree,
                                      const std::string& vertex);

// Brauer character degrees recovered from per-vertex ordinary degree sums
std::map<std::string, Rational> brauer_degrees(const BlockDescriptor& block);

}  // namespace blockunits::brauer
