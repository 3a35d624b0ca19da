#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hgd/error.hpp"

namespace hgd {

// Vertex sets are bitsets over the dense vertex indices of one hypergraph.
using VSet = boost::dynamic_bitset<std::uint64_t>;
using VSetHash = std::hash<VSet>;

// Calls f(v) for every member of s in increasing order.
template <class F>
inline void for_each_member(const VSet& s, F&& f) {
  for (auto v = s.find_first(); v != VSet::npos; v = s.find_next(v)) f(static_cast<int>(v));
}

inline std::vector<int> members(const VSet& s) {
  std::vector<int> out;
  out.reserve(s.count());
  for_each_member(s, [&](int v) { out.push_back(v); });
  return out;
}

// Orders equal-sized sets by their member lists; used wherever output order
// must not depend on hashing.
bool vset_less(const VSet& a, const VSet& b);

class Hypergraph {
 public:
  Hypergraph() = default;

  // Builds a hypergraph from named edges. Vertex order is first appearance.
  // Throws on empty edges and duplicate edge names.
  static Hypergraph from_edges(const std::vector<std::pair<std::string, std::vector<std::string>>>& edges);

  // Builds a hypergraph over a fixed vertex list; every vertex must occur in
  // some edge and edges are given as index sets over that list.
  static Hypergraph from_sets(std::vector<std::string> vertex_names,
                              std::vector<std::string> edge_names, std::vector<VSet> edge_sets);

  int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::string& edge_name(int e) const { return edge_names_[e]; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<std::string>& edge_names() const { return edge_names_; }
  const VSet& edge(int e) const { return edges_[e]; }
  const std::vector<VSet>& edges() const { return edges_; }

  // Edge indices incident to vertex v, in increasing order.
  const std::vector<int>& incident(int v) const { return incident_[v]; }

  int vertex_index(const std::string& name) const;  // -1 when absent
  int edge_index(const std::string& name) const;    // -1 when absent

  VSet empty_set() const { return VSet(vertex_names_.size()); }
  VSet all_vertices() const;
  VSet make_set(const std::vector<std::string>& names) const;  // throws on unknown names
  std::vector<std::string> names_of(const VSet& s) const;

  int rank() const;
  int degree() const;

 private:
  void index();

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VSet> edges_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
};

// Edge-list text format: `name(v1,v2,...)` separated by ',' and ended by '.'.
// Lines starting with '%' are comments; identifiers may be double-quoted.
Hypergraph parse_hypergraph(const std::string& text);
std::string serialize_hypergraph(const Hypergraph& h);

// True when both hypergraphs have the same vertex names and the same named
// edges, ignoring order.
bool same_named_structure(const Hypergraph& a, const Hypergraph& b);

struct ReducedHypergraph {
  Hypergraph hypergraph;
  std::vector<int> vertex_rep;  // original vertex -> vertex index in `hypergraph`
  std::vector<int> edge_rep;    // original edge -> edge index in `hypergraph`
};

ReducedHypergraph reduce(const Hypergraph& h);
bool is_reduced(const Hypergraph& h);
Hypergraph dual(const Hypergraph& h);  // throws unless h is reduced

// [C]-components of h in order of their smallest member.
std::vector<VSet> components(const Hypergraph& h, const VSet& separator);

// Union of the edges meeting c.
VSet neighbourhood(const Hypergraph& h, const VSet& c);

Hypergraph induced(const Hypergraph& h, const VSet& subset, bool dedup = false);

// Closure of the edge set under pairwise intersection. The checked overload
// first verifies c-miwidth(h) <= i.
Hypergraph intersection_closure(const Hypergraph& h);
Hypergraph intersection_closure(const Hypergraph& h, int c, int i);

Hypergraph add_unit_edges(const Hypergraph& h);

// Returns base, or base with a numeric suffix, so that it is not in taken.
std::string fresh_name(const std::string& base, const std::unordered_map<std::string, int>& taken);

}  // namespace hgd
