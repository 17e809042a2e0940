#include "blockunits/brauer.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace blockunits::brauer {

using cyclo::CycNumber;

int BrauerTree::vertex_index(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return (int)i;
  throw std::invalid_argument("unknown vertex: " + id);
}

int BrauerTree::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return (int)i;
  throw std::invalid_argument("unknown edge: " + id);
}

std::vector<int> BrauerTree::incident_edges(int vertex) const {
  const std::string& vid = vertices[vertex].id;
  std::vector<int> out;
  auto it = cyclic_order.find(vid);
  if (it != cyclic_order.end()) {
    for (const std::string& eid : it->second) out.push_back(edge_index(eid));
    return out;
  }
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].ends[0] == vid || edges[i].ends[1] == vid)
      out.push_back((int)i);
  return out;
}

std::map<std::string, int> signs_from_convention(
    const BrauerTree& tree, const std::string& positive_vertex) {
  std::map<std::string, int> sign;
  sign[positive_vertex] = 1;
  std::queue<std::string> q;
  q.push(positive_vertex);
  while (!q.empty()) {
    std::string v = q.front();
    q.pop();
    for (const TreeEdge& e : tree.edges) {
      if (e.ends[0] != v && e.ends[1] != v) continue;
      const std::string& w = (e.ends[0] == v) ? e.ends[1] : e.ends[0];
      if (!sign.count(w)) {
        sign[w] = -sign[v];
        q.push(w);
      }
    }
  }
  if (sign.size() != tree.vertices.size())
    throw std::invalid_argument("tree is not connected");
  return sign;
}

std::vector<std::string> edge_factors(const BrauerTree& tree,
                                      const std::string& vertex) {
  std::vector<int> inc = tree.incident_edges(tree.vertex_index(vertex));
  if (inc.empty()) return {};
  size_t least = 0;
  for (size_t i = 1; i < inc.size(); ++i)
    if (tree.edges[inc[i]].id < tree.edges[inc[least]].id) least = i;
  std::vector<std::string> out;
  for (size_t i = 0; i < inc.size(); ++i)
    out.push_back(tree.edges[inc[(least + i) % inc.size()]].brauer_id);
  return out;
}

std::map<std::string, Rational> brauer_degrees(const BlockDescriptor& block) {
  const BrauerTree& t = block.tree;
  const CharacterTable& table = *block.table;
  std::map<std::string, Rational> deg;
  std::set<int> resolved;
  // peel: a vertex with exactly one unresolved incident edge determines it
  bool progress = true;
  while (resolved.size() < t.edges.size() && progress) {
    progress = false;
    for (size_t v = 0; v < t.vertices.size(); ++v) {
      std::vector<int> inc = t.incident_edges((int)v);
      int open = -1, nopen = 0;
      Rational sum = 0;
      for (int e : inc) {
        if (resolved.count(e)) sum += deg.at(t.edges[e].brauer_id);
        else {
          open = e;
          ++nopen;
        }
      }
      if (nopen != 1) continue;
      Rational d =
          table.degree(table.char_index(t.vertices[v].chars.at(0))) - sum;
      deg[t.edges[open].brauer_id] = d;
      resolved.insert(open);
      progress = true;
    }
  }
  if (resolved.size() != t.edges.size())
    throw std::invalid_argument("could not resolve Brauer degrees (not a tree?)");
  return deg;
}

ValidationReport validate(const BlockDescriptor& block) {
  ValidationReport rep;
  const BrauerTree& t = block.tree;
  const CharacterTable& table = *block.table;

  if (t.vertices.empty()) {
    rep.add("tree", "no vertices");
    return rep;
  }
  if (t.edges.size() + 1 != t.vertices.size())
    rep.add("tree", "edge count is not vertex count minus one");
  std::set<std::string> vids;
  for (const TreeVertex& v : t.vertices)
    if (!vids.insert(v.id).second) rep.add(v.id, "duplicate vertex id");
  for (const TreeEdge& e : t.edges) {
    if (!vids.count(e.ends[0]) || !vids.count(e.ends[1]))
      rep.add(e.id, "edge endpoint does not exist");
    else if (e.ends[0] == e.ends[1])
      rep.add(e.id, "loop edge");
  }
  if (!rep.ok()) return rep;

  // connectivity (tree-ness together with the edge count)
  try {
    signs_from_convention(t, t.vertices[0].id);
  } catch (const std::exception& e) {
    rep.add("tree", e.what());
    return rep;
  }

  // character counts per vertex
  int l = t.exceptional_multiplicity();
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    size_t expect = t.is_exceptional_vertex((int)v) ? (size_t)l : 1;
    if (t.vertices[v].chars.size() != expect)
      rep.add(t.vertices[v].id,
              "expected " + std::to_string(expect) + " characters, found " +
                  std::to_string(t.vertices[v].chars.size()));
    for (const std::string& c : t.vertices[v].chars) {
      try {
        table.char_index(c);
      } catch (const std::exception&) {
        rep.add(t.vertices[v].id, "unknown character " + c);
      }
    }
  }
  if (t.exceptional && t.exceptional->second < 2)
    rep.add(t.exceptional->first,
            "exceptional multiplicity must be at least 2 (omit the vertex "
            "when it is 1)");
  if (!rep.ok()) return rep;

  // defect-1 arithmetic: multiplicity times edge count is p - 1
  if ((long long)t.edges.size() * l != t.p - 1)
    rep.add("tree", "multiplicity times edge count is not p-1 (defect 1)");

  // all characters at a vertex share a degree
  for (const TreeVertex& v : t.vertices) {
    Rational d0 = table.degree(table.char_index(v.chars[0]));
    for (const std::string& c : v.chars)
      if (table.degree(table.char_index(c)) != d0)
        rep.add(v.id, "characters at one vertex differ in degree");
  }

  // sign bipartition from the stated positive vertex
  std::map<std::string, int> sign;
  try {
    sign = signs_from_convention(t, t.positive_vertex);
  } catch (const std::exception& e) {
    rep.add("signs", e.what());
    return rep;
  }
  for (const TreeEdge& e : t.edges)
    if (sign.at(e.ends[0]) == sign.at(e.ends[1]))
      rep.add(e.id, "adjacent vertices share a sign");

  // Brauer degrees from the per-vertex degree sums
  std::map<std::string, Rational> bdeg;
  try {
    bdeg = brauer_degrees(block);
  } catch (const std::exception& e) {
    rep.add("degrees", e.what());
    return rep;
  }
  for (const auto& [psi, d] : bdeg)
    if (!is_integer(d) || d <= 0)
      rep.add(psi, "Brauer degree " + d.get_str() + " not a positive integer");
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    Rational sum = 0;
    for (int e : t.incident_edges((int)v)) sum += bdeg.at(t.edges[e].brauer_id);
    for (const std::string& c : t.vertices[v].chars)
      if (table.degree(table.char_index(c)) != sum)
        rep.add(t.vertices[v].id, "incident Brauer degrees do not sum to the "
                                  "ordinary degree");
  }

  // signed alternating sum of ordinary values vanishes on p'-classes,
  // with one chosen character per vertex
  for (size_t k = 0; k < table.classes.size(); ++k) {
    if (table.classes[k].element_order % t.p == 0) continue;
    CycNumber sum;
    for (const TreeVertex& v : t.vertices)
      sum += rat(sign.at(v.id)) *
             table.value(table.char_index(v.chars[0]), (int)k);
    if (!sum.is_zero()) {
      rep.add(table.classes[k].id,
              "signed character sum does not vanish on this p'-class");
      break;
    }
  }
  return rep;
}

}  // namespace blockunits::brauer
