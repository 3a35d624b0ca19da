#include "hgd/ctd.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace hgd {

std::vector<VSet> dedupe_family(const std::vector<VSet>& family) {
  std::vector<VSet> out;
  std::unordered_map<VSet, int, VSetHash> seen;
  for (const auto& s : family)
    if (seen.emplace(s, 0).second) out.push_back(s);
  return out;
}

std::vector<Block> enumerate_blocks(const Hypergraph& h, const std::vector<VSet>& family) {
  std::vector<Block> blocks;
  for (int b = 0; b < static_cast<int>(family.size()); ++b) {
    if (static_cast<int>(family[b].size()) != h.num_vertices())
      fail(ErrorCode::InvalidArgument, "candidate bag is not a vertex subset of H");
    blocks.push_back(Block{b, h.empty_set()});
    for (auto& c : components(h, family[b])) blocks.push_back(Block{b, std::move(c)});
  }
  return blocks;
}

namespace {

struct Candidate {
  int basis;
  std::vector<int> sub_blocks;
};

}  // namespace

CtdResult ctd_decide(const Hypergraph& h, const std::vector<VSet>& input) {
  CtdResult result;
  const std::vector<VSet> family = dedupe_family(input);
  if (family.empty()) return result;
  const std::vector<Block> blocks = enumerate_blocks(h, family);
  result.num_blocks = blocks.size();

  std::vector<std::vector<int>> blocks_of(family.size());
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) blocks_of[blocks[i].head].push_back(i);

  // X is a basis of (B,C) exactly when the vertices adjacent to C lie in X,
  // X ⊆ B ∪ C, and every block (X,Y) with Y ⊆ C is itself decomposable. The
  // first two conditions are static, so candidates are computed once.
  std::vector<std::vector<Candidate>> candidates(blocks.size());
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    const Block& blk = blocks[i];
    if (blk.comp.none()) continue;
    const VSet& b = family[blk.head];
    const VSet boundary = neighbourhood(h, blk.comp) - blk.comp;
    const VSet within = b | blk.comp;
    for (int x = 0; x < static_cast<int>(family.size()); ++x) {
      if (x == blk.head) continue;
      if (!boundary.is_subset_of(family[x]) || !family[x].is_subset_of(within)) continue;
      Candidate cand{x, {}};
      for (int j : blocks_of[x])
        if (blocks[j].comp.any() && blocks[j].comp.is_subset_of(blk.comp)) cand.sub_blocks.push_back(j);
      candidates[i].push_back(std::move(cand));
    }
  }

  std::vector<char> marked(blocks.size(), 0);
  std::vector<BasisCertificate> cert(blocks.size());
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    if (blocks[i].comp.none()) marked[i] = 1;
    else order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return blocks[a].comp.count() < blocks[b].comp.count(); });

  bool changed = true;
  while (changed) {
    changed = false;
    ++result.rounds;
    for (int i : order) {
      if (marked[i]) continue;
      for (const auto& cand : candidates[i]) {
        bool ok = std::all_of(cand.sub_blocks.begin(), cand.sub_blocks.end(), [&](int j) { return marked[j] != 0; });
        if (!ok) continue;
        marked[i] = 1;
        cert[i] = BasisCertificate{cand.basis, cand.sub_blocks};
        changed = true;
        break;
      }
    }
  }
  result.num_marked = static_cast<std::size_t>(std::count(marked.begin(), marked.end(), 1));

  int root_bag = -1;
  for (int b = 0; b < static_cast<int>(family.size()) && root_bag < 0; ++b)
    if (std::all_of(blocks_of[b].begin(), blocks_of[b].end(), [&](int j) { return marked[j] != 0; })) root_bag = b;
  if (root_bag < 0) return result;

  Decomposition d;
  d.kind = DecompKind::TD;
  std::function<void(int, int)> build = [&](int blk, int parent) {
    const BasisCertificate& c = cert[blk];
    int node = d.add_node(parent, family[c.basis]);
    for (int j : c.sub_blocks) build(j, node);
  };
  int root = d.add_node(-1, family[root_bag]);
  for (int j : blocks_of[root_bag])
    if (blocks[j].comp.any()) build(j, root);
  result.accepted = true;
  result.decomposition = std::move(d);
  return result;
}

}  // namespace hgd
