#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hgd/hypergraph.hpp"
#include "hgd/rational.hpp"

namespace hgd {

constexpr std::size_t kDefaultBudget = 2000000;

struct CupCapNode {
  std::vector<int> label;  // sorted edge indices
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
};

struct CupCapTree {
  std::vector<CupCapNode> nodes;  // nodes[0] is the root
  std::vector<int> leaves() const;
  // Leaves at depth < c and at depth >= c.
  std::vector<int> small_leaves(int c) const;
  std::vector<int> full_leaves(int c) const;
};

// Builds the tree for edge e and non-empty edge sets qs[0..l-1]: a leaf whose
// label misses Q_j gets one child per member of Q_j.
CupCapTree cupcap_tree(const Hypergraph& h, int e, const std::vector<std::vector<int>>& qs);

// Union over the given leaves (all leaves by default) of the intersection of their labels.
VSet cupcap_evaluate(const Hypergraph& h, const CupCapTree& t);
VSet cupcap_evaluate(const Hypergraph& h, const CupCapTree& t, const std::vector<int>& leaves);

struct CandidateBagSet {
  std::vector<VSet> bags;
  std::vector<Rational> rho_star;  // filled for fractional families
  std::string generator;
  std::map<std::string, std::string> parameters;
  std::size_t sub_size = 0;  // number of building blocks the bags were formed from
};

enum class GhdVariant { CoarseBip, FineBip, Bmip };
GhdVariant parse_ghd_variant(const std::string& text);
std::string to_string(GhdVariant v);

// Bags are unions of at most k members of a family Sub of edges and subedges.
// i < 0 means "use the measured value"; the precondition (iwidth <= i, or
// c-miwidth <= i for bmip) is checked.
CandidateBagSet ghd_candidate_bags(const Hypergraph& h, int k, GhdVariant variant, int c = 2, int i = -1,
                                   std::size_t budget = kDefaultBudget);

enum class FhdMode { Bdp, Bip, Rank, BmipApprox };
FhdMode parse_fhd_mode(const std::string& text);
std::string to_string(FhdMode m);

struct FhdParams {
  int d = -1;       // degree bound (bdp); measured when negative
  int i = -1;       // intersection bound (bip, bmip-approx); measured when negative
  int r = -1;       // rank bound (rank); measured when negative
  int c = 2;        // multi-intersection arity (bmip-approx)
  int c_frac = 2;   // unit edges allowed in bip bags beyond the ceil(k) edges
  Rational eps = Rational(1, 3);
  std::size_t budget = kDefaultBudget;
};

// Candidate bags with fractional cover number at most k (k(1+eps) for
// bmip-approx), each with its exact cover number.
CandidateBagSet fhd_candidate_bags(const Hypergraph& h, const Rational& k, FhdMode mode, const FhdParams& p);

// Building blocks shared by the generators; exposed for tests.
std::vector<VSet> ghd_sub(const Hypergraph& h, int k, GhdVariant variant, int c, int i, std::size_t budget);

}  // namespace hgd
