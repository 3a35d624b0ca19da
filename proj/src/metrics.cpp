#include "hgd/metrics.hpp"

#include <unordered_set>

namespace hgd {

namespace {

struct MiwidthSearch {
  const Hypergraph& h;
  int c;
  int best = 0;
  std::vector<int> tuple, best_tuple;

  void run(int start, const VSet& running) {
    const int depth = static_cast<int>(tuple.size());
    if (depth == c) {
      best = static_cast<int>(running.count());
      best_tuple = tuple;
      return;
    }
    for (int e = start; e <= h.num_edges() - (c - depth); ++e) {
      VSet next = running & h.edge(e);
      if (static_cast<int>(next.count()) <= best) continue;
      tuple.push_back(e);
      run(e + 1, next);
      tuple.pop_back();
    }
  }
};

}  // namespace

int multi_intersection_width(const Hypergraph& h, int c, std::vector<int>* witness) {
  if (c < 1) fail(ErrorCode::InvalidArgument, "multi-intersection width needs c >= 1");
  if (witness) witness->clear();
  if (h.num_edges() < c) return 0;
  MiwidthSearch search{h, c, 0, {}, {}};
  search.run(0, h.all_vertices());
  if (witness) {
    *witness = search.best_tuple;
    if (witness->empty())
      for (int e = 0; e < c; ++e) witness->push_back(e);
  }
  return search.best;
}

VcResult vc_dimension(const Hypergraph& h, int cap) {
  const int n = h.num_vertices();
  if (n > cap)
    fail(ErrorCode::Cap, "VC dimension search limited to " + std::to_string(cap) + " vertices (H has " +
                             std::to_string(n) + "); raise --cap to override");
  VcResult result;
  // Shattered sets are closed under subsets, so level s only extends
  // shattered sets of level s-1 by a larger vertex.
  std::vector<std::vector<int>> level{{}};
  for (int s = 1; s <= n && (1LL << s) <= static_cast<long long>(h.num_edges()); ++s) {
    std::vector<std::vector<int>> next;
    for (const auto& base : level) {
      const int from = base.empty() ? 0 : base.back() + 1;
      for (int v = from; v < n; ++v) {
        std::vector<int> x = base;
        x.push_back(v);
        std::unordered_set<unsigned long long> traces;
        for (const auto& e : h.edges()) {
          unsigned long long mask = 0;
          for (int j = 0; j < s; ++j)
            if (e.test(x[j])) mask |= 1ULL << j;
          traces.insert(mask);
        }
        if (traces.size() == (1ULL << s)) next.push_back(std::move(x));
      }
    }
    if (next.empty()) break;
    result.dimension = s;
    result.witness = next.front();
    level = std::move(next);
  }
  return result;
}

MetricsReport structural_metrics(const Hypergraph& h, int cmax, bool with_vc, int vc_cap) {
  if (cmax < 2) fail(ErrorCode::InvalidArgument, "cmax must be at least 2");
  MetricsReport r;
  r.rank = h.rank();
  r.degree = h.degree();
  for (int c = 2; c <= cmax; ++c) r.miwidth[c] = multi_intersection_width(h, c);
  r.iwidth = r.miwidth[2];
  if (with_vc) {
    auto vc = vc_dimension(h, vc_cap);
    r.vc = vc.dimension;
    r.vc_witness = vc.witness;
  }
  return r;
}

}  // namespace hgd
