#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hgd/hypergraph.hpp"

namespace hgd {

struct MetricsReport {
  int rank = 0;
  int degree = 0;
  int iwidth = 0;
  std::map<int, int> miwidth;  // c -> c-miwidth for 2 <= c <= cmax
  std::optional<int> vc;
  std::vector<int> vc_witness;  // vertex indices of a maximum shattered set
};

// Largest |e1 ∩ ... ∩ ec| over c pairwise distinct edges; 0 when |E| < c.
// The witness receives the edge indices of one maximizing tuple.
int multi_intersection_width(const Hypergraph& h, int c, std::vector<int>* witness = nullptr);
inline int intersection_width(const Hypergraph& h) { return multi_intersection_width(h, 2); }

struct VcResult {
  int dimension = 0;
  std::vector<int> witness;
};

// Exact VC dimension by exhaustive search; refuses hypergraphs with more
// than cap vertices.
VcResult vc_dimension(const Hypergraph& h, int cap = 16);

// cmax >= 2. vc is filled in only when with_vc is set.
MetricsReport structural_metrics(const Hypergraph& h, int cmax, bool with_vc = false, int vc_cap = 16);

}  // namespace hgd
