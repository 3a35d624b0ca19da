#include "hgd/bags.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "hgd/covers.hpp"
#include "hgd/metrics.hpp"

namespace hgd {

// ---------------------------------------------------------------------------
// ∪∩-trees

std::vector<int> CupCapTree::leaves() const {
  std::vector<int> out;
  for (int p = 0; p < static_cast<int>(nodes.size()); ++p)
    if (nodes[p].children.empty()) out.push_back(p);
  return out;
}

std::vector<int> CupCapTree::small_leaves(int c) const {
  std::vector<int> out;
  for (int p : leaves())
    if (nodes[p].depth < c) out.push_back(p);
  return out;
}

std::vector<int> CupCapTree::full_leaves(int c) const {
  std::vector<int> out;
  for (int p : leaves())
    if (nodes[p].depth >= c) out.push_back(p);
  return out;
}

CupCapTree cupcap_tree(const Hypergraph& h, int e, const std::vector<std::vector<int>>& qs) {
  if (e < 0 || e >= h.num_edges()) fail(ErrorCode::InvalidArgument, "unknown edge index");
  CupCapTree t;
  t.nodes.push_back(CupCapNode{{e}, -1, 0, {}});
  std::vector<int> current{0};
  for (const auto& q_in : qs) {
    std::vector<int> q = q_in;
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    if (q.empty()) fail(ErrorCode::InvalidArgument, "edge sets of a cup-cap tree must be non-empty");
    for (int x : q)
      if (x < 0 || x >= h.num_edges()) fail(ErrorCode::InvalidArgument, "unknown edge index");
    std::vector<int> next;
    for (int p : current) {
      const std::vector<int> label = t.nodes[p].label;
      bool meets = std::any_of(q.begin(), q.end(),
                               [&](int x) { return std::binary_search(label.begin(), label.end(), x); });
      if (meets) {
        next.push_back(p);
        continue;
      }
      for (int x : q) {
        CupCapNode child;
        child.label = label;
        child.label.insert(std::upper_bound(child.label.begin(), child.label.end(), x), x);
        child.parent = p;
        child.depth = t.nodes[p].depth + 1;
        const int idx = static_cast<int>(t.nodes.size());
        t.nodes.push_back(std::move(child));
        t.nodes[p].children.push_back(idx);
        next.push_back(idx);
      }
    }
    current = std::move(next);
  }
  return t;
}

VSet cupcap_evaluate(const Hypergraph& h, const CupCapTree& t, const std::vector<int>& leaves) {
  VSet out = h.empty_set();
  for (int p : leaves) {
    VSet x = h.all_vertices();
    for (int e : t.nodes[p].label) x &= h.edge(e);
    out |= x;
  }
  return out;
}

VSet cupcap_evaluate(const Hypergraph& h, const CupCapTree& t) { return cupcap_evaluate(h, t, t.leaves()); }

// ---------------------------------------------------------------------------
// Shared enumeration helpers

namespace {

class Collector {
 public:
  Collector(std::size_t budget, std::string what) : budget_(budget), what_(std::move(what)) {}

  bool add(const VSet& s) {
    if (!seen_.insert(s).second) return false;
    items_.push_back(s);
    if (items_.size() > budget_)
      fail(ErrorCode::Budget, what_ + " exceeded the budget of " + std::to_string(budget_) +
                                  " sets; use smaller parameters, a coarser variant, or raise --budget");
    return true;
  }
  bool contains(const VSet& s) const { return seen_.count(s) > 0; }
  const std::vector<VSet>& items() const { return items_; }
  std::vector<VSet> take() { return std::move(items_); }

 private:
  std::size_t budget_;
  std::string what_;
  std::unordered_set<VSet, VSetHash> seen_;
  std::vector<VSet> items_;
};

void add_all_subsets(const VSet& w, Collector& out, bool include_empty) {
  std::vector<int> m = members(w);
  if (m.size() > 24)
    fail(ErrorCode::Budget, "a subedge family would need all subsets of " + std::to_string(m.size()) +
                                " vertices; use smaller parameters");
  for (unsigned long mask = include_empty ? 0 : 1; mask < (1UL << m.size()); ++mask) {
    VSet s(w.size());
    for (std::size_t j = 0; j < m.size(); ++j)
      if (mask >> j & 1) s.set(m[j]);
    out.add(s);
  }
}

void add_bounded_subsets(const VSet& w, std::size_t max_size, Collector& out) {
  std::vector<int> m = members(w);
  VSet cur(w.size());
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t size) {
    if (size > 0) out.add(cur);
    if (size == max_size) return;
    for (std::size_t j = from; j < m.size(); ++j) {
      cur.set(m[j]);
      rec(j + 1, size + 1);
      cur.reset(m[j]);
    }
  };
  rec(0, 0);
}

// All unions of between 1 and q members. keep(s) must be monotone: once it
// rejects a set it must reject every superset.
std::vector<VSet> unions_up_to(const std::vector<VSet>& members_in, unsigned long long q,
                               const std::function<bool(const VSet&)>& keep, Collector& out) {
  std::vector<VSet> frontier;
  for (const auto& m : members_in)
    if (keep(m) && out.add(m)) frontier.push_back(m);
  for (unsigned long long step = 2; step <= q && !frontier.empty(); ++step) {
    std::vector<VSet> next;
    for (const auto& u : frontier)
      for (const auto& m : members_in) {
        if (m.is_subset_of(u)) continue;
        VSet x = u | m;
        if (out.contains(x) || !keep(x)) continue;
        out.add(x);
        next.push_back(std::move(x));
      }
    frontier = std::move(next);
  }
  return out.take();
}

// Distinct non-empty intersections e ∩ f1 ∩ ... ∩ fj with 0 <= j <= max_others
// (exactly max_others when exact is set) over edges f other than e.
std::vector<VSet> edge_terms(const Hypergraph& h, int e, int max_others, bool exact) {
  std::unordered_set<VSet, VSetHash> seen;
  std::vector<VSet> out;
  std::function<void(int, int, const VSet&)> rec = [&](int from, int used, const VSet& cur) {
    if (cur.none()) return;
    if ((!exact || used == max_others) && seen.insert(cur).second) out.push_back(cur);
    if (used == max_others) return;
    for (int f = from; f < h.num_edges(); ++f)
      if (f != e) rec(f + 1, used + 1, cur & h.edge(f));
  };
  rec(0, 0, h.edge(e));
  return out;
}

unsigned long long saturating_pow(unsigned long long base, long exp) {
  unsigned long long out = 1;
  for (long j = 0; j < exp; ++j) {
    if (out > (1ULL << 62) / std::max(1ULL, base)) return 1ULL << 62;
    out *= base;
  }
  return out;
}

void sort_family(CandidateBagSet& s) {
  std::vector<std::size_t> idx(s.bags.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto ca = s.bags[a].count(), cb = s.bags[b].count();
    return ca != cb ? ca < cb : vset_less(s.bags[a], s.bags[b]);
  });
  std::vector<VSet> bags;
  std::vector<Rational> rho;
  for (std::size_t j : idx) {
    bags.push_back(s.bags[j]);
    if (!s.rho_star.empty()) rho.push_back(s.rho_star[j]);
  }
  s.bags = std::move(bags);
  s.rho_star = std::move(rho);
}

}  // namespace

// ---------------------------------------------------------------------------
// GHD families

GhdVariant parse_ghd_variant(const std::string& text) {
  if (text == "coarse-bip") return GhdVariant::CoarseBip;
  if (text == "fine-bip" || text == "bip") return GhdVariant::FineBip;
  if (text == "bmip") return GhdVariant::Bmip;
  fail(ErrorCode::InvalidArgument, "unknown GHD bag variant '" + text + "' (expected coarse-bip, fine-bip or bmip)");
}

std::string to_string(GhdVariant v) {
  switch (v) {
    case GhdVariant::CoarseBip: return "coarse-bip";
    case GhdVariant::FineBip: return "fine-bip";
    case GhdVariant::Bmip: return "bmip";
  }
  return "fine-bip";
}

std::vector<VSet> ghd_sub(const Hypergraph& h, int k, GhdVariant variant, int c, int i, std::size_t budget) {
  Collector sub(budget, "the subedge family");
  for (const auto& e : h.edges()) sub.add(e);
  switch (variant) {
    case GhdVariant::CoarseBip:
      for (const auto& e : h.edges()) add_bounded_subsets(e, static_cast<std::size_t>(k) * i, sub);
      break;
    case GhdVariant::FineBip:
      for (int e = 0; e < h.num_edges(); ++e) {
        std::vector<VSet> traces;
        std::unordered_set<VSet, VSetHash> seen;
        for (int f = 0; f < h.num_edges(); ++f) {
          if (h.edge(f) == h.edge(e)) continue;
          VSet t = h.edge(e) & h.edge(f);
          if (t.any() && seen.insert(t).second) traces.push_back(t);
        }
        Collector unions(budget, "the trace unions");
        std::vector<VSet> all = unions_up_to(traces, static_cast<unsigned long long>(k),
                                             [](const VSet&) { return true; }, unions);
        for (std::size_t a = 0; a < all.size(); ++a) {
          bool dominated = false;
          for (std::size_t b = 0; b < all.size() && !dominated; ++b)
            dominated = a != b && all[a].is_proper_subset_of(all[b]);
          if (!dominated) add_all_subsets(all[a], sub, false);
        }
      }
      break;
    case GhdVariant::Bmip: {
      const unsigned long long q_small = saturating_pow(static_cast<unsigned long long>(k), c - 1);
      const unsigned long long q_full = saturating_pow(static_cast<unsigned long long>(k), c);
      for (int e = 0; e < h.num_edges(); ++e) {
        // Parts of e ∩ (intersection of unions) from shallow and deep leaves.
        std::vector<VSet> terms = edge_terms(h, e, c - 1, false);
        std::vector<VSet> deep = edge_terms(h, e, c - 1, true);
        Collector wide(budget, "the deep-leaf unions");
        std::vector<VSet> ws = unions_up_to(deep, q_full, [](const VSet&) { return true; }, wide);
        Collector parts(budget, "the subedge parts");
        parts.add(h.empty_set());
        for (const auto& w : ws) add_all_subsets(w, parts, true);
        Collector small(budget, "the intersection-set family");
        std::vector<VSet> is = unions_up_to(terms, q_small, [](const VSet&) { return true; }, small);
        is.insert(is.begin(), h.empty_set());
        for (const auto& a : is)
          for (const auto& b : parts.items()) {
            VSet x = a | b;
            if (x.any()) sub.add(x);
          }
      }
      break;
    }
  }
  return sub.take();
}

CandidateBagSet ghd_candidate_bags(const Hypergraph& h, int k, GhdVariant variant, int c, int i, std::size_t budget) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  if (variant == GhdVariant::Bmip && c < 1) fail(ErrorCode::InvalidArgument, "c must be at least 1");
  const int arity = variant == GhdVariant::Bmip ? c : 2;
  std::vector<int> witness;
  const int measured = multi_intersection_width(h, arity, &witness);
  if (i < 0) i = measured;
  if (measured > i) {
    std::string tuple;
    for (int e : witness) tuple += (tuple.empty() ? "" : ", ") + h.edge_name(e);
    fail(ErrorCode::Precondition, std::to_string(arity) + "-miwidth is " + std::to_string(measured) +
                                      ", above i = " + std::to_string(i) + " (edges " + tuple + ")");
  }
  CandidateBagSet out;
  out.generator = "ghd-" + to_string(variant);
  out.parameters = {{"k", std::to_string(k)}, {"i", std::to_string(i)}};
  if (variant == GhdVariant::Bmip) out.parameters["c"] = std::to_string(c);
  std::vector<VSet> sub = ghd_sub(h, k, variant, c, i, budget);
  out.sub_size = sub.size();
  Collector bags(budget, "the candidate bag family");
  out.bags = unions_up_to(sub, static_cast<unsigned long long>(k), [](const VSet&) { return true; }, bags);
  sort_family(out);
  return out;
}

// ---------------------------------------------------------------------------
// FHD families

FhdMode parse_fhd_mode(const std::string& text) {
  if (text == "bdp") return FhdMode::Bdp;
  if (text == "bip") return FhdMode::Bip;
  if (text == "rank") return FhdMode::Rank;
  if (text == "bmip-approx" || text == "bmip") return FhdMode::BmipApprox;
  fail(ErrorCode::InvalidArgument, "unknown FHD bag mode '" + text + "' (expected bdp, bip, rank or bmip-approx)");
}

std::string to_string(FhdMode m) {
  switch (m) {
    case FhdMode::Bdp: return "bdp";
    case FhdMode::Bip: return "bip";
    case FhdMode::Rank: return "rank";
    case FhdMode::BmipApprox: return "bmip-approx";
  }
  return "rank";
}

namespace {

// Every vertex set of size at most max_size with fractional cover number at
// most bound, grown one vertex at a time in increasing index order.
void grow_subsets(const Hypergraph& h, const Rational& bound, std::size_t max_size, CoverCache& cache,
                  Collector& out) {
  const int n = h.num_vertices();
  VSet cur = h.empty_set();
  std::function<void(int, std::size_t)> rec = [&](int from, std::size_t size) {
    if (size == max_size) return;
    for (int v = from; v < n; ++v) {
      cur.set(v);
      if (cache.rho_star(cur) <= bound) {
        out.add(cur);
        rec(v + 1, size + 1);
      }
      cur.reset(v);
    }
  };
  rec(0, 0);
}

// Bags from unions of at most q subedges of h_prime, kept when their
// fractional cover number in h is at most bound.
std::vector<VSet> q_set_family(const Hypergraph& h, const Hypergraph& h_prime, unsigned long long q,
                               const Rational& bound, CoverCache& cache, Collector& out,
                               std::map<std::string, std::string>& params, std::size_t budget) {
  const int ip = intersection_width(h_prime);
  params["q"] = std::to_string(q);
  params["iwidth'"] = std::to_string(ip);
  if (ip >= 1 && q >= static_cast<unsigned long long>(h.num_vertices())) {
    // Sub holds every singleton, so the unions are all vertex sets.
    params["enumeration"] = "all-subsets";
    grow_subsets(h, bound, static_cast<std::size_t>(h.num_vertices()), cache, out);
    return out.take();
  }
  params["enumeration"] = "unions";
  const unsigned long long sub_bound = std::min<unsigned long long>(q * static_cast<unsigned long long>(ip), 1ULL << 20);
  Collector sub(budget, "the subedge family");
  for (const auto& e : h_prime.edges()) sub.add(e);
  for (const auto& e : h_prime.edges()) add_bounded_subsets(e, static_cast<std::size_t>(sub_bound), sub);
  std::vector<VSet> members = sub.take();
  params["sub"] = std::to_string(members.size());
  return unions_up_to(members, q, [&](const VSet& s) { return cache.rho_star(s) <= bound; }, out);
}

}  // namespace

CandidateBagSet fhd_candidate_bags(const Hypergraph& h, const Rational& k, FhdMode mode, const FhdParams& p) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  CandidateBagSet out;
  out.generator = "fhd-" + to_string(mode);
  out.parameters["k"] = to_string(k);
  CoverCache cache(h);
  Collector bags(p.budget, "the candidate bag family");
  Rational bound = k;
  switch (mode) {
    case FhdMode::Rank: {
      const int rank = h.rank();
      const int r = p.r < 0 ? rank : p.r;
      if (rank > r) fail(ErrorCode::Precondition, "rank is " + std::to_string(rank) + ", above r = " + std::to_string(r));
      const long size_cap = ceil_long(Rational(r) * k);
      out.parameters["r"] = std::to_string(r);
      out.parameters["max-size"] = std::to_string(size_cap);
      grow_subsets(h, k, static_cast<std::size_t>(size_cap), cache, bags);
      out.bags = bags.take();
      break;
    }
    case FhdMode::Bdp: {
      const int degree = h.degree();
      const int d = p.d < 0 ? degree : p.d;
      if (degree > d) fail(ErrorCode::Precondition, "degree is " + std::to_string(degree) + ", above d = " + std::to_string(d));
      out.parameters["d"] = std::to_string(d);
      Hypergraph closed = intersection_closure(h);
      const unsigned long long q = saturating_pow(2, ceil_long(k * d));
      out.bags = q_set_family(h, closed, q, bound, cache, bags, out.parameters, p.budget);
      break;
    }
    case FhdMode::Bip: {
      const int iw = intersection_width(h);
      const int i = p.i < 0 ? iw : p.i;
      if (iw > i) fail(ErrorCode::Precondition, "iwidth is " + std::to_string(iw) + ", above i = " + std::to_string(i));
      if (p.c_frac < 0) fail(ErrorCode::InvalidArgument, "c_frac must be non-negative");
      out.parameters["i"] = std::to_string(i);
      out.parameters["c_frac"] = std::to_string(p.c_frac);
      Hypergraph units = add_unit_edges(h);
      const unsigned long long q = static_cast<unsigned long long>(ceil_long(k)) + static_cast<unsigned long long>(p.c_frac);
      out.bags = q_set_family(h, units, q, bound, cache, bags, out.parameters, p.budget);
      break;
    }
    case FhdMode::BmipApprox: {
      if (sgn(p.eps) <= 0 || p.eps > 1) fail(ErrorCode::InvalidArgument, "eps must lie in (0, 1]");
      if (p.c < 1) fail(ErrorCode::InvalidArgument, "c must be at least 1");
      std::vector<int> witness;
      const int mw = multi_intersection_width(h, p.c, &witness);
      const int i = p.i < 0 ? mw : p.i;
      if (mw > i)
        fail(ErrorCode::Precondition, std::to_string(p.c) + "-miwidth is " + std::to_string(mw) + ", above i = " + std::to_string(i));
      out.parameters["c"] = std::to_string(p.c);
      out.parameters["i"] = std::to_string(i);
      out.parameters["eps"] = to_string(p.eps);
      bound = k * (1 + p.eps);
      Hypergraph prepared = add_unit_edges(intersection_closure(h));
      const Rational ratio = 4 * k / p.eps;
      const unsigned long long terms = saturating_pow(2, ceil_long(Rational(4 * p.c) * k / p.eps));
      Rational units = i;
      for (int j = 0; j < p.c; ++j) units *= ratio;
      const unsigned long long extra = std::min<unsigned long long>(static_cast<unsigned long long>(ceil_long(units)), 1ULL << 62);
      const unsigned long long q = std::min<unsigned long long>(terms + extra, 1ULL << 62);
      out.bags = q_set_family(h, prepared, q, bound, cache, bags, out.parameters, p.budget);
      break;
    }
  }
  out.parameters["bound"] = to_string(bound);
  for (const auto& b : out.bags) out.rho_star.push_back(cache.rho_star(b));
  sort_family(out);
  return out;
}

}  // namespace hgd
