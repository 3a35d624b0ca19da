#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hgd/hypergraph.hpp"
#include "hgd/rational.hpp"

namespace hgd {

// Edge weighting indexed by edge; every weight lies in [0,1].
using EdgeWeighting = std::vector<Rational>;

Rational weight_of(const EdgeWeighting& w);
std::vector<int> support_of(const EdgeWeighting& w);
bool is_integral(const EdgeWeighting& w);

// B(w): vertices whose incident weight is at least 1.
VSet covered_set(const Hypergraph& h, const EdgeWeighting& w);

struct FractionalCover {
  Rational value;
  EdgeWeighting weights;  // basic optimal, S ⊆ B(weights)
  std::vector<Rational> packing;  // optimal dual values per vertex (0 outside S)
};

struct IntegralCover {
  int value = 0;
  std::vector<int> edges;  // sorted edge indices, lexicographically least optimum
  EdgeWeighting weights(int num_edges) const;
};

FractionalCover fractional_cover(const Hypergraph& h, const VSet& s);
IntegralCover integral_cover(const Hypergraph& h, const VSet& s);

// Memoizes covers of vertex subsets of one hypergraph. Not thread-safe.
class CoverCache {
 public:
  explicit CoverCache(const Hypergraph& h) : h_(h) {}
  const FractionalCover& fractional(const VSet& s);
  const IntegralCover& integral(const VSet& s);
  const Rational& rho_star(const VSet& s) { return fractional(s).value; }
  int rho(const VSet& s) { return integral(s).value; }
  const Hypergraph& hypergraph() const { return h_; }

 private:
  const Hypergraph& h_;
  std::unordered_map<VSet, FractionalCover, VSetHash> frac_;
  std::unordered_map<VSet, IntegralCover, VSetHash> integral_;
};

// Fractional vertex cover number of h (minimum weight on vertices hitting
// every edge with total weight >= 1), with an optimal vertex weighting.
struct TransversalCover {
  Rational value;
  std::vector<Rational> weights;  // per vertex
};
TransversalCover fractional_transversal(const Hypergraph& h);

// Lowers weights one edge at a time in lexicographic order of edge names,
// each to the least value that keeps target ⊆ B.
EdgeWeighting prune_cover(const Hypergraph& h, const EdgeWeighting& w, const VSet& target);

struct HeavyPart {
  int edge;
  VSet part;  // B(γ) ∩ edge
};

struct SplitRepresentation {
  std::vector<HeavyPart> heavy;
  VSet fractional_part;  // U
  bool canonical = false;
};

// Heavy edges carry weight >= 1 - 1/(2k). The canonical form puts into U the
// vertices of B(γ) outside all heavy edges; the plain form puts into U the
// vertices of B(γ) that receive positive weight from a light edge.
SplitRepresentation split_representation(const Hypergraph& h, const EdgeWeighting& w, const Rational& k,
                                         bool canonical);

// Weight 1 on every heavy edge plus an optimal fractional cover of U minus
// the heavy edges.
EdgeWeighting naive_cover(const Hypergraph& h, const SplitRepresentation& rep);

// Minimal edge sets E ⊆ supp(w) with total weight >= 1.
std::vector<std::vector<int>> full_subset_representation(const EdgeWeighting& w, int cap = 16);

struct MuResult {
  Rational k;
  int c = 0;
  std::optional<Rational> value;
  // Witness: edges over vertices 0..c-1 (as bit masks) and the integer j.
  std::vector<unsigned> witness_edges;
  int witness_j = 0;
  Rational witness_rho_star;
};

MuResult compute_mu(const Rational& k, int c);

}  // namespace hgd
