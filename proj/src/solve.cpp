#include "hgd/solve.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hgd/covers.hpp"
#include "hgd/ctd.hpp"
#include "hgd/metrics.hpp"

namespace hgd {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Fail: return "fail";
  }
  return "fail";
}

std::string to_string(CertificateStrength s) {
  return s == CertificateStrength::Absolute ? "absolute" : "relative-to-parameters";
}

namespace {

// Turns an accepted candidate TD into a GHD or FHD with per-bag covers and
// re-validates it.
SolveResult finish(const Hypergraph& h, const CtdResult& ctd, DecompKind kind, CoverCache& cache,
                   const Rational& limit) {
  SolveResult r;
  r.width = 0;
  r.diagnostics["blocks"] = ctd.num_blocks;
  r.diagnostics["marked"] = ctd.num_marked;
  if (!ctd.accepted) {
    r.answer = Answer::No;
    return r;
  }
  Decomposition d = *ctd.decomposition;
  d.kind = kind;
  for (auto& node : d.nodes) {
    if (kind == DecompKind::GHD) node.cover = cache.integral(node.bag).weights(h.num_edges());
    else node.cover = cache.fractional(node.bag).weights;
  }
  ValidationReport rep = validate(h, d, limit);
  if (!rep.valid) fail(ErrorCode::Internal, "constructed decomposition failed validation: " + rep.violations.front());
  r.answer = Answer::Yes;
  r.width = rep.width;
  r.decomposition = std::move(d);
  return r;
}

}  // namespace

SolveResult check_ghd(const Hypergraph& h, int k, const GhdOptions& options) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  CandidateBagSet bags = ghd_candidate_bags(h, k, options.variant, options.c, options.i, options.budget);
  CtdResult ctd = ctd_decide(h, bags.bags);
  CoverCache cache(h);
  SolveResult r = finish(h, ctd, DecompKind::GHD, cache, Rational(k));
  r.strength = CertificateStrength::Absolute;
  r.diagnostics["generator"] = bags.generator;
  r.diagnostics["parameters"] = bags.parameters;
  r.diagnostics["bags"] = bags.bags.size();
  r.diagnostics["sub"] = bags.sub_size;
  return r;
}

FhdMode auto_fhd_mode(const Hypergraph& h, const Rational& k) {
  if (Rational(h.rank()) * k <= 12) return FhdMode::Rank;
  if (h.degree() <= 3) return FhdMode::Bdp;
  return FhdMode::Bip;
}

SolveResult check_fhd(const Hypergraph& h, const Rational& k, const FhdOptions& options) {
  const FhdMode mode = options.mode ? *options.mode : auto_fhd_mode(h, k);
  CandidateBagSet bags = fhd_candidate_bags(h, k, mode, options.params);
  CtdResult ctd = ctd_decide(h, bags.bags);
  CoverCache cache(h);
  SolveResult r = finish(h, ctd, DecompKind::FHD, cache, k);
  r.strength = mode == FhdMode::Bip ? CertificateStrength::RelativeToParameters : CertificateStrength::Absolute;
  r.diagnostics["mode"] = to_string(mode);
  r.diagnostics["generator"] = bags.generator;
  r.diagnostics["parameters"] = bags.parameters;
  r.diagnostics["bags"] = bags.bags.size();
  return r;
}

SolveResult approx_fhd_bmip(const Hypergraph& h, const Rational& k, const Rational& eps, int c, int i,
                            std::size_t budget) {
  FhdParams p;
  p.c = c;
  p.i = i;
  p.eps = eps;
  p.budget = budget;
  CandidateBagSet bags = fhd_candidate_bags(h, k, FhdMode::BmipApprox, p);
  CtdResult ctd = ctd_decide(h, bags.bags);
  CoverCache cache(h);
  SolveResult r = finish(h, ctd, DecompKind::FHD, cache, k * (1 + eps));
  r.strength = CertificateStrength::RelativeToParameters;
  r.diagnostics["generator"] = bags.generator;
  r.diagnostics["parameters"] = bags.parameters;
  r.diagnostics["bags"] = bags.bags.size();
  return r;
}

int ptas_iteration_bound(const Rational& big_k, const Rational& eps) {
  const Rational k_prime = big_k + eps - 1;
  const Rational eps_prime = eps / 3;
  const Rational ratio = k_prime / eps_prime;
  int m = 0;
  Rational power = 1;
  while (power < ratio) {
    power *= 2;
    ++m;
  }
  return m + 1;
}

PtasResult fhw_approx_ptas(const Hypergraph& h, const Rational& big_k, const Rational& eps, int c, int i,
                           std::size_t budget) {
  if (big_k < 1) fail(ErrorCode::InvalidArgument, "K must be at least 1");
  if (sgn(eps) <= 0) fail(ErrorCode::InvalidArgument, "eps must be positive");
  PtasResult out;
  out.iteration_bound = ptas_iteration_bound(big_k, eps);
  // The decider takes a multiplicative slack; width <= k + e equals k(1 + e/k).
  auto find = [&](const Rational& k, const Rational& additive) {
    Rational rel = additive / k;
    if (rel > 1) rel = 1;
    return approx_fhd_bmip(h, k, rel, c, i, budget);
  };
  SolveResult probe = find(big_k, eps);
  if (probe.answer != Answer::Yes) {
    out.result.answer = Answer::Fail;
    out.result.width = 0;
    out.result.strength = CertificateStrength::RelativeToParameters;
    out.result.diagnostics["reason"] = "no decomposition found at K; fhw(H) > K";
    return out;
  }
  SolveResult best = probe;
  Rational lower = 1, upper = big_k + eps;
  const Rational eps_prime = eps / 3;
  do {
    const Rational mid = lower + (upper - lower) / 2;
    SolveResult attempt = find(mid, eps_prime);
    const bool found = attempt.answer == Answer::Yes;
    if (found) {
      upper = mid + eps_prime;
      best = std::move(attempt);
    } else {
      lower = mid;
    }
    ++out.iterations;
    out.trace.push_back(PtasStep{lower, upper, mid, found});
  } while (upper - lower >= eps);
  out.result = std::move(best);
  out.result.answer = Answer::Yes;
  out.result.diagnostics["iterations"] = out.iterations;
  out.result.diagnostics["iteration_bound"] = out.iteration_bound;
  out.result.diagnostics["lower"] = to_string(lower);
  out.result.diagnostics["upper"] = to_string(upper);
  return out;
}

GhdConversion fhd_to_ghd(const Hypergraph& h, const Decomposition& fhd, int vc_cap) {
  if (fhd.kind != DecompKind::FHD) fail(ErrorCode::InvalidArgument, "fhd-to-ghd expects an FHD");
  ValidationReport rep = validate(h, fhd, std::nullopt);
  if (!rep.valid) fail(ErrorCode::Precondition, "input is not a valid FHD: " + rep.violations.front());
  GhdConversion out;
  out.fhd_width = rep.width;
  out.ghd = fhd;
  out.ghd.kind = DecompKind::GHD;
  CoverCache cache(h);
  for (auto& node : out.ghd.nodes) {
    const IntegralCover& ic = cache.integral(node.bag);
    node.cover = ic.weights(h.num_edges());
    out.ghd_width = std::max(out.ghd_width, ic.value);
    const Rational& frac = cache.rho_star(node.bag);
    out.ratios.emplace_back(node.id, sgn(frac) == 0 ? Rational(1) : Rational(ic.value / frac));
  }
  if (h.num_vertices() <= vc_cap) {
    out.vc = vc_dimension(h, vc_cap).dimension;
    const double rho = to_double(out.fhd_width);
    const double scale = std::pow(2.0, *out.vc + 2);
    out.ceiling_log2 = std::max(1.0, scale * std::log2(11.0 * rho));
    out.ceiling_ln = std::max(1.0, scale * std::log(11.0 * rho));
  }
  return out;
}

namespace {

std::vector<VSet> all_nonempty_subsets(const Hypergraph& h) {
  const int n = h.num_vertices();
  std::vector<VSet> out;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    VSet s = h.empty_set();
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) s.set(v);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

OracleResult oracle_width(const Hypergraph& h, WidthKind kind, int cap) {
  if (h.num_vertices() > cap)
    fail(ErrorCode::Cap, "the exact oracle is limited to " + std::to_string(cap) + " vertices (H has " +
                             std::to_string(h.num_vertices()) + "); raise --cap to override");
  const std::vector<VSet> subsets = all_nonempty_subsets(h);
  CoverCache cache(h);
  if (kind == WidthKind::Ghw) {
    const int top = cache.rho(h.all_vertices());
    for (int k = 1; k <= top; ++k) {
      std::vector<VSet> family;
      for (const auto& s : subsets)
        if (cache.rho(s) <= k) family.push_back(s);
      CtdResult ctd = ctd_decide(h, family);
      if (!ctd.accepted) continue;
      SolveResult r = finish(h, ctd, DecompKind::GHD, cache, Rational(k));
      return OracleResult{Rational(k), *r.decomposition};
    }
    fail(ErrorCode::Internal, "oracle found no GHD up to the cover number of V(H)");
  }
  std::set<Rational> values;
  for (const auto& s : subsets) values.insert(cache.rho_star(s));
  std::vector<Rational> thresholds(values.begin(), values.end());
  auto family_at = [&](const Rational& t) {
    std::vector<VSet> family;
    for (const auto& s : subsets)
      if (cache.rho_star(s) <= t) family.push_back(s);
    return family;
  };
  // The single bag V(H) always works at the largest threshold.
  std::size_t lo = 0, hi = thresholds.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (ctd_decide(h, family_at(thresholds[mid])).accepted) hi = mid;
    else lo = mid + 1;
  }
  CtdResult ctd = ctd_decide(h, family_at(thresholds[lo]));
  SolveResult r = finish(h, ctd, DecompKind::FHD, cache, thresholds[lo]);
  return OracleResult{thresholds[lo], *r.decomposition};
}

}  // namespace hgd
