#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hgd/covers.hpp"
#include "hgd/hypergraph.hpp"

namespace hgd {

enum class DecompKind { TD, GHD, FHD, HD };

std::string to_string(DecompKind kind);
DecompKind parse_kind(const std::string& text);  // case-insensitive

struct DecompNode {
  std::string id;
  VSet bag;
  std::optional<EdgeWeighting> cover;
  int parent = -1;
  std::vector<int> children;
};

// Rooted tree stored as a node array; nodes[root] has parent -1.
struct Decomposition {
  DecompKind kind = DecompKind::TD;
  std::vector<DecompNode> nodes;
  int root = -1;

  // Appends a node under parent (-1 for the root). An empty id becomes "n<index>".
  int add_node(int parent, VSet bag, std::optional<EdgeWeighting> cover = std::nullopt, std::string id = "");
  std::vector<int> preorder() const;
  std::vector<VSet> subtree_vertices() const;  // V(T_u) per node
  int node_index(const std::string& id) const;  // -1 when absent
};

nlohmann::json decomposition_to_json(const Hypergraph& h, const Decomposition& d);
Decomposition decomposition_from_json(const Hypergraph& h, const nlohmann::json& j);
std::string serialize_decomposition(const Hypergraph& h, const Decomposition& d);
Decomposition parse_decomposition(const Hypergraph& h, const std::string& text);

// How a plain TD is measured: by integral or fractional cover number of each bag.
enum class WidthMode { Integral, Fractional };

struct ValidationReport {
  bool valid = true;
  Rational width;
  std::vector<std::string> violations;
};

// Checks edge coverage, connectedness, the kind-specific cover conditions and,
// when k is given, width <= k.
ValidationReport validate(const Hypergraph& h, const Decomposition& d, const std::optional<Rational>& k,
                          WidthMode td_mode = WidthMode::Integral);

struct CompnfReport {
  bool compnf = true;
  std::vector<std::string> violations;  // one per offending (parent, child) pair
};

// Component normal form check; throws if d is not a tree decomposition.
CompnfReport check_compnf(const Hypergraph& h, const Decomposition& d);

// Bag maximization followed by component normal form repair, iterated to a
// fixpoint. Input must be a valid GHD.
Decomposition normalize_ghd(const Hypergraph& h, const Decomposition& g);

// Node path from u to the closest node whose bag contains edge e.
std::vector<int> critical_path(const Hypergraph& h, const Decomposition& g, int u, int e);

}  // namespace hgd
