#pragma once

#include <optional>
#include <vector>

#include "hgd/decomposition.hpp"
#include "hgd/hypergraph.hpp"

namespace hgd {

// (B, C) with B = family[head] and C empty or a [B]-component.
struct Block {
  int head = -1;
  VSet comp;
};

// Records why a block was marked: the basis X = family[basis] and the
// blocks (X, Y) with Y ⊆ C it relied on.
struct BasisCertificate {
  int basis = -1;
  std::vector<int> sub_blocks;
};

// Blocks headed by each member of family, in family order: (B, ∅) first,
// then one block per [B]-component in component order.
std::vector<Block> enumerate_blocks(const Hypergraph& h, const std::vector<VSet>& family);

// Removes duplicate sets, keeping the first occurrence.
std::vector<VSet> dedupe_family(const std::vector<VSet>& family);

struct CtdResult {
  bool accepted = false;
  std::optional<Decomposition> decomposition;  // kind TD, bags drawn from the family
  std::size_t num_blocks = 0;
  std::size_t num_marked = 0;
  int rounds = 0;
};

// Decides whether H has a tree decomposition in component normal form whose
// bags all belong to family, and builds one when it does.
CtdResult ctd_decide(const Hypergraph& h, const std::vector<VSet>& family);

}  // namespace hgd
