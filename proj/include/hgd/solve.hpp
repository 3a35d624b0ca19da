#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hgd/bags.hpp"
#include "hgd/decomposition.hpp"

namespace hgd {

enum class Answer { Yes, No, Fail };
enum class CertificateStrength { Absolute, RelativeToParameters };

std::string to_string(Answer a);
std::string to_string(CertificateStrength s);

struct SolveResult {
  Answer answer = Answer::No;
  std::optional<Decomposition> decomposition;
  Rational width;  // width of the returned decomposition (0 when none)
  CertificateStrength strength = CertificateStrength::Absolute;
  nlohmann::json diagnostics = nlohmann::json::object();
};

struct GhdOptions {
  GhdVariant variant = GhdVariant::FineBip;
  int c = 2;
  int i = -1;  // measured when negative
  std::size_t budget = kDefaultBudget;
};

SolveResult check_ghd(const Hypergraph& h, int k, const GhdOptions& options = {});

struct FhdOptions {
  std::optional<FhdMode> mode;  // chosen automatically when empty
  FhdParams params;
};

// Picks rank when r*k <= 12, else bdp when the degree is at most 3, else bip.
FhdMode auto_fhd_mode(const Hypergraph& h, const Rational& k);

SolveResult check_fhd(const Hypergraph& h, const Rational& k, const FhdOptions& options = {});

// FHD of width <= k(1+eps) whenever fhw(H) <= k.
SolveResult approx_fhd_bmip(const Hypergraph& h, const Rational& k, const Rational& eps, int c, int i = -1,
                            std::size_t budget = kDefaultBudget);

struct PtasStep {
  Rational lower, upper, probe;
  bool found;
};

struct PtasResult {
  SolveResult result;
  int iterations = 0;
  int iteration_bound = 0;  // ceil(log2(K'/eps')) + 1 with K' = K + eps - 1, eps' = eps/3
  std::vector<PtasStep> trace;  // interval after each bisection round
};

PtasResult fhw_approx_ptas(const Hypergraph& h, const Rational& big_k, const Rational& eps, int c, int i = -1,
                           std::size_t budget = kDefaultBudget);

int ptas_iteration_bound(const Rational& big_k, const Rational& eps);

struct GhdConversion {
  Decomposition ghd;
  Rational fhd_width;
  int ghd_width = 0;
  std::vector<std::pair<std::string, Rational>> ratios;  // node id -> rho/rho* of its bag
  std::optional<int> vc;
  std::optional<double> ceiling_log2;  // informational only
  std::optional<double> ceiling_ln;
};

// Replaces each fractional cover with a minimum integral cover of the bag.
GhdConversion fhd_to_ghd(const Hypergraph& h, const Decomposition& fhd, int vc_cap = 16);

enum class WidthKind { Ghw, Fhw };

struct OracleResult {
  Rational width;
  Decomposition witness;
};

// Exact ghw or fhw by running the candidate-bag decision over all vertex subsets.
OracleResult oracle_width(const Hypergraph& h, WidthKind kind, int cap = 10);

}  // namespace hgd
