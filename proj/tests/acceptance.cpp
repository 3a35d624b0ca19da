// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>

#include "hgd/bags.hpp"
#include "hgd/covers.hpp"
#include "hgd/ctd.hpp"
#include "hgd/decomposition.hpp"
#include "hgd/hardness.hpp"
#include "hgd/metrics.hpp"
#include "hgd/solve.hpp"

#include "support/oracles.hpp"
#include "support/random_instances.hpp"

#ifndef HGD_FIXTURE_DIR
#error "HGD_FIXTURE_DIR must point at tests/fixtures"
#endif

using namespace hgd;
using hgd::testing::Rng;
using hgd::testing::uniform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(HGD_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Records the first failure message and keeps counting.
struct Tally {
  int checked = 0, failed = 0;
  std::string first_failure;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (!failed) first_failure = what;
    ++failed;
  }
  Outcome outcome(const std::string& summary) const {
    if (!failed) return {true, summary};
    return {false, std::to_string(failed) + "/" + std::to_string(checked) + " checks failed; first: " + first_failure};
  }
};

Outcome clique_covers() {
  Tally t;
  for (int n = 1; n <= 4; ++n) {
    Hypergraph h = testing::clique(2 * n);
    const int rho = integral_cover(h, h.all_vertices()).value;
    const Rational rho_star = fractional_cover(h, h.all_vertices()).value;
    t.expect(rho == n && rho_star == n, "K_" + std::to_string(2 * n) + ": rho=" + std::to_string(rho) +
                                            " rho*=" + to_string(rho_star));
  }
  return t.outcome("rho = rho* = n for K_2n, n = 1..4");
}

Outcome long_edge_family() {
  Tally t;
  for (int n = 2; n <= 10; ++n) {
    Hypergraph h = testing::long_edge_family(n);
    const Rational got = fractional_cover(h, h.all_vertices()).value;
    t.expect(got == 2 - Rational(1, n), "n=" + std::to_string(n) + ": rho*=" + to_string(got));
  }
  return t.outcome("rho*(H_n) = 2 - 1/n for n = 2..10");
}

Outcome lp_duality() {
  Rng rng(3);
  Tally t;
  for (int run = 0; run < 200; ++run) {
    Hypergraph raw = testing::random_hypergraph(rng, uniform(rng, 2, 8), uniform(rng, 1, 8), 4);
    Hypergraph h = reduce(raw).hypergraph;
    FractionalCover cover = fractional_cover(h, h.all_vertices());
    const Rational tau = fractional_transversal(dual(h)).value;
    t.expect(is_reduced(h), "instance " + std::to_string(run) + " not reduced");
    t.expect(oracle::certifies_fractional_cover(h, h.all_vertices(), cover),
             "instance " + std::to_string(run) + ": cover not certified");
    t.expect(cover.value == tau, "instance " + std::to_string(run) + ": rho*=" + to_string(cover.value) +
                                     " tau*(dual)=" + to_string(tau));
  }
  return t.outcome("rho*(H) = tau*(H^d) on 200 reduced instances");
}

Outcome support_bound() {
  Rng rng(4);
  Tally t;
  int max_support = 0;
  for (int run = 0; run < 200; ++run) {
    const int d = run % 2 ? 3 : 2;
    Hypergraph h = testing::random_hypergraph_where(rng, 3, 8, 2, 8, 4, [&](const Hypergraph& g) {
      return g.degree() <= d;
    });
    FractionalCover c = fractional_cover(h, h.all_vertices());
    const int support = static_cast<int>(support_of(c.weights).size());
    max_support = std::max(max_support, support);
    t.expect(Rational(support) <= d * c.value, "instance " + std::to_string(run) + ": |supp|=" +
                                                   std::to_string(support) + " > " + std::to_string(d) + "*" +
                                                   to_string(c.value));
  }
  return t.outcome("|supp| <= d*rho* on 200 instances (largest support " + std::to_string(max_support) + ")");
}

Outcome cupcap_identity() {
  Rng rng(5);
  Tally t;
  for (int run = 0; run < 500; ++run) {
    Hypergraph h = testing::random_hypergraph(rng, uniform(rng, 3, 8), uniform(rng, 2, 10), 4);
    const int e = uniform(rng, 0, h.num_edges() - 1);
    std::vector<std::vector<int>> qs(uniform(rng, 0, 4));
    for (auto& q : qs) {
      const int size = uniform(rng, 1, std::min(3, h.num_edges()));
      while (static_cast<int>(q.size()) < size) {
        int f = uniform(rng, 0, h.num_edges() - 1);
        if (std::find(q.begin(), q.end(), f) == q.end()) q.push_back(f);
      }
    }
    CupCapTree tree = cupcap_tree(h, e, qs);
    t.expect(cupcap_evaluate(h, tree) == oracle::intersection_of_unions(h, e, qs),
             "instance " + std::to_string(run) + " mismatch");
  }
  return t.outcome("tree evaluation equals e ∩ ⋂ ⋃Q_j on 500 instances");
}

Outcome tuple_inequality() {
  Rng rng(6);
  Tally t;
  int runs = 0;
  while (runs < 500) {
    const int c = uniform(rng, 1, 3);
    const int n = uniform(rng, c, 8);
    const Rational delta(uniform(rng, 1, 10), 10);
    std::vector<Rational> xs;
    Rational sum = 0;
    for (int j = 0; j < n; ++j) {
      xs.push_back(delta * testing::ratio(uniform(rng, 1, 10), 10));
      sum += xs.back();
    }
    if (sum < delta * c) continue;
    const Rational w = delta * c + (sum - delta * c) * testing::ratio(uniform(rng, 0, 10), 10);
    ++runs;
    Rational base = w - delta * c, bound = 1;
    for (int j = 0; j < c; ++j) bound *= base;
    t.expect(oracle::distinct_tuple_product_sum(xs, c) >= bound, "instance " + std::to_string(runs));
  }
  return t.outcome("tuple sum >= (w - delta*c)^c on 500 admissible instances");
}

Outcome closure_law() {
  Rng rng(7);
  Tally t;
  for (int run = 0; run < 100; ++run) {
    const int c = run % 2 ? 3 : 2, i = (run / 2) % 2 ? 2 : 1;
    Hypergraph h = testing::random_hypergraph_where(rng, 3, 7, 2, 7, 4, [&](const Hypergraph& g) {
      return multi_intersection_width(g, c) <= i;
    });
    Hypergraph closed = intersection_closure(h, c, i);
    std::set<std::vector<int>> expected = oracle::intersection_closure(h);
    std::set<std::vector<int>> got;
    for (const auto& e : closed.edges()) got.insert(members(e));
    t.expect(got == expected, "instance " + std::to_string(run) + ": closure differs from brute force");
    const int width = multi_intersection_width(closed, 1 << c);
    t.expect(width <= i, "instance " + std::to_string(run) + ": " + std::to_string(1 << c) + "-miwidth " +
                             std::to_string(width) + " > " + std::to_string(i));
    if (closed.num_edges() <= 14)
      t.expect(oracle::multi_intersection_width(closed, 1 << c) == width,
               "instance " + std::to_string(run) + ": miwidth differs from brute force");
  }
  return t.outcome("2^c-miwidth(H∩) <= i on 100 instances");
}

Outcome ctd_equivalence() {
  Rng rng(8);
  Tally t;
  int yes = 0;
  for (int run = 0; run < 100; ++run) {
    Hypergraph h = testing::random_hypergraph(rng, uniform(rng, 2, 6), uniform(rng, 1, 6), 4);
    std::vector<VSet> family;
    const int size = uniform(rng, 1, 12);
    for (int j = 0; j < size; ++j) {
      if (uniform(rng, 0, 1)) {
        family.push_back(testing::random_subset(rng, h));
      } else {
        VSet s = h.edge(uniform(rng, 0, h.num_edges() - 1));
        if (uniform(rng, 0, 1)) s |= h.edge(uniform(rng, 0, h.num_edges() - 1));
        family.push_back(s);
      }
    }
    CtdResult r = ctd_decide(h, family);
    const bool expected = oracle::compnf_ctd_exists(h, family);
    t.expect(r.accepted == expected, "instance " + std::to_string(run) + ": ctd " +
                                         (r.accepted ? "accepts" : "rejects") + ", enumerator disagrees");
    if (r.accepted) {
      ++yes;
      const Decomposition& d = *r.decomposition;
      t.expect(validate(h, d, std::nullopt).valid, "instance " + std::to_string(run) + ": witness invalid");
      t.expect(check_compnf(h, d).compnf, "instance " + std::to_string(run) + ": witness not CompNF");
      for (const auto& node : d.nodes)
        t.expect(std::find(family.begin(), family.end(), node.bag) != family.end(),
                 "instance " + std::to_string(run) + ": bag outside the family");
    }
  }
  return t.outcome("agreement with the exhaustive enumerator on 100 instances (" + std::to_string(yes) +
                   " accepted)");
}

Outcome ghd_vs_oracle() {
  Rng rng(9);
  Tally t;
  int counts[4] = {0, 0, 0, 0};
  for (int run = 0; run < 100; ++run) {
    // Every other instance must be cyclic so both answers are exercised.
    const bool cyclic = run % 2;
    Hypergraph h = testing::random_hypergraph_where(rng, 3, 8, 2, 8, 4, [&](const Hypergraph& g) {
      return intersection_width(g) <= 2 && (!cyclic || oracle_width(g, WidthKind::Ghw).width >= 2);
    });
    const Rational ghw = oracle_width(h, WidthKind::Ghw).width;
    ++counts[std::min(3, static_cast<int>(ceil_long(ghw)))];
    for (int k = 1; k <= 2; ++k) {
      SolveResult r = check_ghd(h, k);
      const bool expected = ghw <= k;
      t.expect((r.answer == Answer::Yes) == expected,
               "instance " + std::to_string(run) + " k=" + std::to_string(k) + ": oracle ghw " + to_string(ghw));
      if (r.answer == Answer::Yes)
        t.expect(validate(h, *r.decomposition, Rational(k)).valid,
                 "instance " + std::to_string(run) + ": witness invalid");
    }
  }
  return t.outcome("check-ghd agrees with the oracle for k = 1, 2 on 100 instances (ghw 1/2/3+: " +
                   std::to_string(counts[1]) + "/" + std::to_string(counts[2]) + "/" + std::to_string(counts[3]) +
                   ")");
}

std::vector<Rational> subset_thresholds(const Hypergraph& h) {
  std::set<Rational> values;
  const int n = h.num_vertices();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    VSet s = h.empty_set();
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) s.set(v);
    values.insert(fractional_cover(h, s).value);
  }
  return {values.begin(), values.end()};
}

Outcome fhd_vs_oracle() {
  Rng rng(10);
  Tally t;
  int no_checks = 0;
  for (int run = 0; run < 50; ++run) {
    const bool cyclic = run % 3 != 0;
    Hypergraph h = testing::random_hypergraph_where(rng, 3, 7, 2, 7, 3, [&](const Hypergraph& g) {
      return g.rank() <= 3 && (!cyclic || oracle_width(g, WidthKind::Fhw).width > 1);
    });
    const Rational fhw = oracle_width(h, WidthKind::Fhw).width;
    FhdOptions opt;
    opt.mode = FhdMode::Rank;
    SolveResult yes = check_fhd(h, fhw, opt);
    t.expect(yes.answer == Answer::Yes && yes.width <= fhw,
             "instance " + std::to_string(run) + ": no FHD at oracle fhw " + to_string(fhw));
    std::vector<Rational> thresholds = subset_thresholds(h);
    auto it = std::lower_bound(thresholds.begin(), thresholds.end(), fhw);
    if (it != thresholds.begin()) {
      const Rational lower = *std::prev(it);
      ++no_checks;
      t.expect(check_fhd(h, lower, opt).answer == Answer::No,
               "instance " + std::to_string(run) + ": accepted below fhw at " + to_string(lower));
    }
  }
  return t.outcome("rank mode: yes at fhw on 50 instances, no at the next-lower threshold on " +
                   std::to_string(no_checks));
}

struct BmipInstance {
  Hypergraph h;
  Rational fhw;
};

const std::vector<BmipInstance>& bmip_instances() {
  static const std::vector<BmipInstance> instances = [] {
    Rng rng(11);
    std::vector<BmipInstance> out;
    while (out.size() < 30) {
      Hypergraph h = testing::random_hypergraph_where(rng, 3, 7, 2, 7, 4, [](const Hypergraph& g) {
        return intersection_width(g) <= 2;
      });
      const Rational fhw = oracle_width(h, WidthKind::Fhw).width;
      const bool cyclic = out.size() % 3 != 0;
      if (fhw <= 3 && (!cyclic || fhw > 1)) out.push_back({h, fhw});
    }
    return out;
  }();
  return instances;
}

Outcome bmip_approximation() {
  Tally t;
  const Rational eps(1, 3);
  for (std::size_t j = 0; j < bmip_instances().size(); ++j) {
    const auto& inst = bmip_instances()[j];
    SolveResult r = approx_fhd_bmip(inst.h, inst.fhw, eps, 2);
    t.expect(r.answer == Answer::Yes && r.width <= (1 + eps) * inst.fhw,
             "instance " + std::to_string(j) + ": fhw " + to_string(inst.fhw) + ", answer " + to_string(r.answer));
  }
  std::set<Rational> widths;
  for (const auto& inst : bmip_instances()) widths.insert(inst.fhw);
  std::string seen;
  for (const auto& w : widths) seen += (seen.empty() ? "" : ", ") + to_string(w);
  return t.outcome("yes with width <= (1+eps)k at k = fhw on 30 instances (fhw values: " + seen + ")");
}

Outcome ptas() {
  Tally t;
  const Rational big_k = 3, eps(1, 4);
  const int bound = ptas_iteration_bound(big_k, eps);
  int most = 0;
  for (std::size_t j = 0; j < bmip_instances().size(); ++j) {
    const auto& inst = bmip_instances()[j];
    PtasResult p = fhw_approx_ptas(inst.h, big_k, eps, 2);
    most = std::max(most, p.iterations);
    t.expect(p.result.answer == Answer::Yes && p.result.width < inst.fhw + eps,
             "instance " + std::to_string(j) + ": width " + to_string(p.result.width) + " vs fhw " +
                 to_string(inst.fhw));
    t.expect(p.iterations <= bound, "instance " + std::to_string(j) + ": " + std::to_string(p.iterations) +
                                        " rounds > " + std::to_string(bound));
    for (const auto& step : p.trace)
      t.expect(step.lower <= inst.fhw && inst.fhw <= step.upper,
               "instance " + std::to_string(j) + ": fhw left [L,U]");
  }
  return t.outcome("width < fhw + 1/4 on 30 instances, at most " + std::to_string(most) + " rounds (bound " +
                   std::to_string(bound) + ")");
}

Outcome reduction_positive() {
  Tally t;
  for (int j = 1; j <= 20; ++j) {
    char name[32];
    std::snprintf(name, sizeof name, "sat/rand%02d", j);
    CnfFormula phi = parse_dimacs(read_fixture(std::string(name) + ".cnf"));
    std::vector<bool> sigma = parse_assignment(phi, read_fixture(std::string(name) + ".json"));
    Reduction red = reduce_3sat(phi);
    const int n = phi.num_vars, m = static_cast<int>(phi.clauses.size());
    t.expect(red.hypergraph.num_vertices() == expected_vertex_count(n, m) &&
                 red.hypergraph.num_edges() == expected_edge_count(n, m),
             std::string(name) + ": size differs from the closed form");
    IntendedGhd g = intended_ghd(red, phi, sigma);
    ValidationReport rep = validate(red.hypergraph, g.ghd, Rational(2));
    t.expect(rep.valid && rep.width == 2, std::string(name) + ": intended GHD invalid or width " +
                                              to_string(rep.width));
    Decomposition normal = normalize_ghd(red.hypergraph, g.ghd);
    t.expect(validate(red.hypergraph, normal, Rational(2)).valid, std::string(name) + ": normalized GHD invalid");
    t.expect(check_compnf(red.hypergraph, normal).compnf, std::string(name) + ": normalized GHD not CompNF");
  }
  CnfFormula phi = parse_dimacs(read_fixture("worked.cnf"));
  Reduction red = reduce_3sat(phi);
  IntendedGhd g = intended_ghd(red, phi, parse_assignment(phi, read_fixture("worked.json")));
  t.expect(g.z == std::vector<std::string>{"y1", "yp2", "yp3"}, "example: Z differs");
  t.expect(3 * red.layout.q.size() == 63, "example: |S| = " + std::to_string(3 * red.layout.q.size()));
  t.expect(red.hypergraph.num_edges() == 158, "example: " + std::to_string(red.hypergraph.num_edges()) + " edges");
  t.expect(g.ghd.nodes.size() == 25, "example: " + std::to_string(g.ghd.nodes.size()) + " nodes");
  return t.outcome("20 formulas give width-2 GHDs that normalize to CompNF; example: Z = {y1, yp2, yp3}, |S| = 63, "
                   "158 edges, 25 nodes");
}

Outcome gadget_bound() {
  Hypergraph g = build_gadget({"m1"}, {"m2"});
  const Rational fhw = oracle_width(g, WidthKind::Fhw).width;
  const Rational ghw = oracle_width(g, WidthKind::Ghw).width;
  Tally t;
  t.expect(fhw >= 2, "oracle fhw " + to_string(fhw));
  t.expect(fractional_cover(g, g.make_set({"a1", "a2", "b1", "b2"})).value == 2, "4-clique cover differs from 2");
  return t.outcome("oracle fhw = " + to_string(fhw) + ", ghw = " + to_string(ghw) + " with |M1| = |M2| = 1");
}

Outcome width_lifting() {
  Rng rng(15);
  Tally t;
  for (int run = 0; run < 10; ++run) {
    Hypergraph h = testing::random_hypergraph(rng, uniform(rng, 2, 4), uniform(rng, 1, 4), 3);
    Hypergraph lifted = lift_width(h, Rational(1));
    const Rational g0 = oracle_width(h, WidthKind::Ghw).width, g1 = oracle_width(lifted, WidthKind::Ghw).width;
    const Rational f0 = oracle_width(h, WidthKind::Fhw).width, f1 = oracle_width(lifted, WidthKind::Fhw).width;
    t.expect(g1 == g0 + 1, "instance " + std::to_string(run) + ": ghw " + to_string(g0) + " -> " + to_string(g1));
    t.expect(f1 == f0 + 1, "instance " + std::to_string(run) + ": fhw " + to_string(f0) + " -> " + to_string(f1));
  }
  Hypergraph tri = testing::triangle();
  t.expect(fractional_cover(tri, tri.all_vertices()).value == Rational(3, 2), "3-cycle rho* differs from 3/2");
  Hypergraph cyc = lift_width(parse_hypergraph("e(a,b)."), Rational(3, 2));
  t.expect(fractional_cover(cyc, cyc.make_set({"f1", "f2", "f3"})).value == Rational(3, 2),
           "fresh cycle rho* differs from 3/2");
  return t.outcome("ghw and fhw grow by exactly 1 on 10 instances; fresh 3-cycle rho* = 3/2");
}

Outcome vc_route() {
  Rng rng(16);
  Tally t;
  Rational min_ratio = 100, max_ratio = 0;
  double lo2 = 1e300, hi2 = 0, lo_e = 1e300, hi_e = 0;
  for (int run = 0; run < 20; ++run) {
    Hypergraph h = testing::random_hypergraph(rng, uniform(rng, 3, 7), uniform(rng, 2, 7), 4);
    Decomposition fhd = oracle_width(h, WidthKind::Fhw).witness;
    GhdConversion c = fhd_to_ghd(h, fhd);
    t.expect(validate(h, c.ghd, std::nullopt).valid && c.ghd.kind == DecompKind::GHD,
             "instance " + std::to_string(run) + ": GHD invalid");
    for (const auto& [id, ratio] : c.ratios) {
      t.expect(ratio >= 1, "instance " + std::to_string(run) + " node " + id + ": ratio " + to_string(ratio));
      min_ratio = std::min(min_ratio, ratio);
      max_ratio = std::max(max_ratio, ratio);
    }
    if (c.ceiling_log2) {
      lo2 = std::min(lo2, *c.ceiling_log2);
      hi2 = std::max(hi2, *c.ceiling_log2);
      lo_e = std::min(lo_e, *c.ceiling_ln);
      hi_e = std::max(hi_e, *c.ceiling_ln);
    }
  }
  char ceiling[160];
  std::snprintf(ceiling, sizeof ceiling, "ceiling (informational) base 2 in [%.1f, %.1f], base e in [%.1f, %.1f]",
                lo2, hi2, lo_e, hi_e);
  return t.outcome("20 valid GHDs, per-bag ratio in [" + to_string(min_ratio) + ", " + to_string(max_ratio) + "]; " +
                   ceiling);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 means no time limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "clique covers", 1, clique_covers},
      {2, "long-edge family", 1, long_edge_family},
      {3, "LP duality", 30, lp_duality},
      {4, "support bound", 0, support_bound},
      {5, "cupcap identity", 0, cupcap_identity},
      {6, "tuple-product inequality", 0, tuple_inequality},
      {7, "closure law", 0, closure_law},
      {8, "CTD equivalence", 60, ctd_equivalence},
      {9, "GHD checker vs oracle", 0, ghd_vs_oracle},
      {10, "FHD checker vs oracle", 0, fhd_vs_oracle},
      {11, "BMIP approximation", 0, bmip_approximation},
      {12, "PTAS", 0, ptas},
      {13, "reduction positive direction", 0, reduction_positive},
      {14, "gadget lower bound", 0, gadget_bound},
      {15, "width lifting", 0, width_lifting},
      {16, "VC route", 0, vc_route},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += " (time limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s exceeded)";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %-30s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
