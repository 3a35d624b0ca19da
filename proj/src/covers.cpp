#include "hgd/covers.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hgd/lp.hpp"

namespace hgd {

Rational weight_of(const EdgeWeighting& w) {
  Rational total = 0;
  for (const auto& x : w) total += x;
  return total;
}

std::vector<int> support_of(const EdgeWeighting& w) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(w.size()); ++e)
    if (sgn(w[e]) > 0) out.push_back(e);
  return out;
}

bool is_integral(const EdgeWeighting& w) {
  for (const auto& x : w)
    if (x != 0 && x != 1) return false;
  return true;
}

namespace {

std::vector<Rational> vertex_loads(const Hypergraph& h, const EdgeWeighting& w) {
  if (static_cast<int>(w.size()) != h.num_edges()) fail(ErrorCode::InvalidArgument, "weighting does not match the edge count");
  std::vector<Rational> load(h.num_vertices(), Rational(0));
  for (int e = 0; e < h.num_edges(); ++e)
    if (sgn(w[e]) != 0) for_each_member(h.edge(e), [&](int v) { load[v] += w[e]; });
  return load;
}

void check_subset(const Hypergraph& h, const VSet& s) {
  if (static_cast<int>(s.size()) != h.num_vertices()) fail(ErrorCode::InvalidArgument, "vertex set does not belong to H");
}

// Edge traces e ∩ S that are not strictly contained in another trace; among
// equal traces the lowest edge index is kept.
std::vector<int> maximal_traces(const Hypergraph& h, const VSet& s, std::vector<VSet>& traces) {
  std::vector<int> distinct;
  std::unordered_map<VSet, int, VSetHash> seen;
  std::vector<VSet> t;
  for (int e = 0; e < h.num_edges(); ++e) {
    VSet x = h.edge(e) & s;
    if (x.none() || !seen.emplace(x, e).second) continue;
    distinct.push_back(e);
    t.push_back(std::move(x));
  }
  std::vector<int> kept;
  traces.clear();
  for (std::size_t a = 0; a < t.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < t.size() && !dominated; ++b)
      dominated = a != b && t[a].is_proper_subset_of(t[b]);
    if (!dominated) {
      kept.push_back(distinct[a]);
      traces.push_back(t[a]);
    }
  }
  return kept;
}

}  // namespace

VSet covered_set(const Hypergraph& h, const EdgeWeighting& w) {
  auto load = vertex_loads(h, w);
  VSet out = h.empty_set();
  for (int v = 0; v < h.num_vertices(); ++v)
    if (load[v] >= 1) out.set(v);
  return out;
}

FractionalCover fractional_cover(const Hypergraph& h, const VSet& s) {
  check_subset(h, s);
  FractionalCover out;
  out.value = 0;
  out.weights.assign(h.num_edges(), Rational(0));
  out.packing.assign(h.num_vertices(), Rational(0));
  if (s.none()) return out;

  std::vector<VSet> traces;
  std::vector<int> kept = maximal_traces(h, s, traces);

  // Vertices lying in exactly the same kept traces give identical covering
  // constraints and share one packing column.
  std::map<std::vector<int>, int> column_of;
  std::vector<int> column_rep;
  std::vector<std::vector<int>> rows(kept.size());
  for_each_member(s, [&](int v) {
    std::vector<int> sig;
    for (std::size_t r = 0; r < traces.size(); ++r)
      if (traces[r].test(v)) sig.push_back(static_cast<int>(r));
    auto [it, inserted] = column_of.emplace(sig, static_cast<int>(column_rep.size()));
    if (inserted) {
      column_rep.push_back(v);
      for (int r : sig) rows[r].push_back(it->second);
    }
  });

  PackingSolution sol = solve_packing(static_cast<int>(column_rep.size()), rows);
  out.value = sol.value;
  for (std::size_t r = 0; r < kept.size(); ++r) out.weights[kept[r]] = sol.y[r];
  for (std::size_t j = 0; j < column_rep.size(); ++j) out.packing[column_rep[j]] = sol.x[j];
  return out;
}

EdgeWeighting IntegralCover::weights(int num_edges) const {
  EdgeWeighting w(num_edges, Rational(0));
  for (int e : edges) w[e] = 1;
  return w;
}

namespace {

struct SetCoverSearch {
  const std::vector<VSet>& traces;
  std::vector<std::vector<int>> containing;  // vertex -> trace indices
  std::size_t max_size = 0;
  std::vector<int> chosen;
  std::optional<std::vector<int>> best;

  void run(const VSet& uncovered, int left) {
    if (uncovered.none()) {
      std::vector<int> sol = chosen;
      std::sort(sol.begin(), sol.end());
      if (!best || sol < *best) best = sol;
      return;
    }
    if (left == 0 || static_cast<std::size_t>(left) * max_size < uncovered.count()) return;
    const int v = static_cast<int>(uncovered.find_first());
    for (int r : containing[v]) {
      chosen.push_back(r);
      run(uncovered - traces[r], left - 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

IntegralCover integral_cover(const Hypergraph& h, const VSet& s) {
  check_subset(h, s);
  IntegralCover out;
  if (s.none()) return out;
  std::vector<VSet> traces;
  std::vector<int> kept = maximal_traces(h, s, traces);
  SetCoverSearch search{traces, std::vector<std::vector<int>>(h.num_vertices()), 0, {}, std::nullopt};
  for (std::size_t r = 0; r < traces.size(); ++r) {
    search.max_size = std::max(search.max_size, traces[r].count());
    for_each_member(traces[r], [&](int v) { search.containing[v].push_back(static_cast<int>(r)); });
  }
  // A minimum cover built from maximal traces is a minimum cover overall.
  long k = ceil_long(fractional_cover(h, s).value);
  for (;; ++k) {
    search.run(s, static_cast<int>(k));
    if (search.best) break;
  }
  out.value = static_cast<int>(k);
  for (int r : *search.best) out.edges.push_back(kept[r]);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

const FractionalCover& CoverCache::fractional(const VSet& s) {
  auto it = frac_.find(s);
  if (it != frac_.end()) return it->second;
  return frac_.emplace(s, fractional_cover(h_, s)).first->second;
}

const IntegralCover& CoverCache::integral(const VSet& s) {
  auto it = integral_.find(s);
  if (it != integral_.end()) return it->second;
  return integral_.emplace(s, integral_cover(h_, s)).first->second;
}

TransversalCover fractional_transversal(const Hypergraph& h) {
  std::vector<std::vector<int>> rows(h.num_vertices());
  for (int v = 0; v < h.num_vertices(); ++v) rows[v] = h.incident(v);
  PackingSolution sol = solve_packing(h.num_edges(), rows);
  return TransversalCover{sol.value, sol.y};
}

EdgeWeighting prune_cover(const Hypergraph& h, const EdgeWeighting& w, const VSet& target) {
  check_subset(h, target);
  for (const auto& x : w)
    if (sgn(x) < 0 || x > 1) fail(ErrorCode::InvalidArgument, "edge weights must lie in [0,1]");
  auto load = vertex_loads(h, w);
  for_each_member(target, [&](int v) {
    if (load[v] < 1) fail(ErrorCode::Precondition, "target vertex '" + h.vertex_name(v) + "' is not covered by the weighting");
  });
  std::vector<int> order(h.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return h.edge_name(a) < h.edge_name(b); });
  EdgeWeighting out = w;
  for (int e : order) {
    if (sgn(out[e]) == 0) continue;
    Rational need = 0;
    for_each_member(h.edge(e) & target, [&](int v) {
      Rational r = 1 - (load[v] - out[e]);
      if (r > need) need = r;
    });
    if (need >= out[e]) continue;
    Rational drop = out[e] - need;
    for_each_member(h.edge(e), [&](int v) { load[v] -= drop; });
    out[e] = need;
  }
  return out;
}

SplitRepresentation split_representation(const Hypergraph& h, const EdgeWeighting& w, const Rational& k,
                                         bool canonical) {
  if (sgn(k) <= 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  Rational total = weight_of(w);
  if (total > k) fail(ErrorCode::Precondition, "weight " + to_string(total) + " exceeds k = " + to_string(k));
  const Rational threshold = 1 - 1 / (2 * k);
  VSet b = covered_set(h, w);
  SplitRepresentation rep;
  rep.canonical = canonical;
  VSet heavy_union = h.empty_set(), light_union = h.empty_set();
  for (int e : support_of(w)) {
    if (w[e] >= threshold) {
      rep.heavy.push_back(HeavyPart{e, b & h.edge(e)});
      heavy_union |= h.edge(e);
    } else {
      light_union |= h.edge(e);
    }
  }
  rep.fractional_part = canonical ? (b - heavy_union) : (b & light_union);
  return rep;
}

EdgeWeighting naive_cover(const Hypergraph& h, const SplitRepresentation& rep) {
  EdgeWeighting nu(h.num_edges(), Rational(0));
  VSet heavy_union = h.empty_set();
  for (const auto& part : rep.heavy) {
    nu[part.edge] = 1;
    heavy_union |= h.edge(part.edge);
  }
  VSet rest = rep.fractional_part - heavy_union;
  if (rest.any()) {
    FractionalCover fc = fractional_cover(h, rest);
    for (int e = 0; e < h.num_edges(); ++e) nu[e] += fc.weights[e];
  }
  return nu;
}

std::vector<std::vector<int>> full_subset_representation(const EdgeWeighting& w, int cap) {
  std::vector<int> supp = support_of(w);
  const int s = static_cast<int>(supp.size());
  if (s > cap)
    fail(ErrorCode::Cap, "support has " + std::to_string(s) + " edges, above the cap of " + std::to_string(cap));
  std::vector<std::vector<int>> out;
  for (unsigned long mask = 1; mask < (1UL << s); ++mask) {
    Rational sum = 0, least = 2;
    std::vector<int> edges;
    for (int j = 0; j < s; ++j)
      if (mask >> j & 1) {
        sum += w[supp[j]];
        if (w[supp[j]] < least) least = w[supp[j]];
        edges.push_back(supp[j]);
      }
    if (sum >= 1 && sum - least < 1) out.push_back(std::move(edges));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

// Relabels a family of subsets of [c] (given as a bit mask over subset masks
// 1..2^c-1) under a vertex permutation.
unsigned long permute_family(unsigned long family, int c, const std::vector<int>& perm) {
  unsigned long out = 0;
  const unsigned subsets = (1U << c) - 1;
  for (unsigned s = 1; s <= subsets; ++s) {
    if (!(family >> (s - 1) & 1)) continue;
    unsigned t = 0;
    for (int v = 0; v < c; ++v)
      if (s >> v & 1) t |= 1U << perm[v];
    out |= 1UL << (t - 1);
  }
  return out;
}

}  // namespace

MuResult compute_mu(const Rational& k, int c) {
  if (c < 1 || c > 4) fail(ErrorCode::InvalidArgument, "mu is computed by brute force only for 1 <= c <= 4");
  if (k < 1) fail(ErrorCode::InvalidArgument, "mu needs k >= 1");
  MuResult result;
  result.k = k;
  result.c = c;
  const int subsets = (1 << c) - 1;
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(c);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const long jmax = ceil_long(k);
  const Rational half(1, 2);
  for (unsigned long family = 0; family < (1UL << subsets); ++family) {
    bool canonical = true;
    for (const auto& p : perms)
      if (permute_family(family, c, p) < family) {
        canonical = false;
        break;
      }
    if (!canonical) continue;

    std::vector<std::vector<int>> rows;
    unsigned used = 0;
    std::vector<unsigned> edges;
    for (int s = 1; s <= subsets; ++s)
      if (family >> (s - 1) & 1) {
        edges.push_back(static_cast<unsigned>(s));
        used |= static_cast<unsigned>(s);
      }
    std::vector<int> column(c, -1);
    int ncols = 0;
    for (int v = 0; v < c; ++v)
      if (used >> v & 1) column[v] = ncols++;
    for (unsigned e : edges) {
      std::vector<int> row;
      for (int v = 0; v < c; ++v)
        if (e >> v & 1) row.push_back(column[v]);
      rows.push_back(std::move(row));
    }
    Rational rho = edges.empty() ? Rational(0) : solve_packing(ncols, rows).value;
    for (long j = 0; j <= jmax; ++j) {
      Rational x = rho + j - k;
      if (sgn(x) <= 0 || x > half) continue;
      if (!result.value || x < *result.value) {
        result.value = x;
        result.witness_edges = edges;
        result.witness_j = static_cast<int>(j);
        result.witness_rho_star = rho;
      }
    }
  }
  return result;
}

}  // namespace hgd
