#include "hgdecomp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"

#include "hgd/bags.hpp"
#include "hgd/covers.hpp"
#include "hgd/ctd.hpp"
#include "hgd/decomposition.hpp"
#include "hgd/hardness.hpp"
#include "hgd/metrics.hpp"
#include "hgd/solve.hpp"

struct hgd_hypergraph {
  hgd::Hypergraph h;
};

using nlohmann::json;

namespace {

thread_local std::string last_error;

hgd_status status_of(hgd::ErrorCode code) {
  switch (code) {
    case hgd::ErrorCode::Parse: return HGD_ERR_PARSE;
    case hgd::ErrorCode::InvalidArgument: return HGD_ERR_INVALID_ARGUMENT;
    case hgd::ErrorCode::Precondition: return HGD_ERR_PRECONDITION;
    case hgd::ErrorCode::Budget: return HGD_ERR_BUDGET;
    case hgd::ErrorCode::Cap: return HGD_ERR_CAP;
    case hgd::ErrorCode::Io: return HGD_ERR_IO;
    case hgd::ErrorCode::Internal: return HGD_ERR_INTERNAL;
  }
  return HGD_ERR_INTERNAL;
}

// Runs f and maps every exception to a status code plus a message.
template <class F>
hgd_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return HGD_OK;
  } catch (const hgd::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return HGD_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HGD_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HGD_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) hgd::fail(hgd::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out) *out = dup_string(j.dump(2));
}

json parse_json(const char* text, const char* what) {
  require(text, what);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    hgd::fail(hgd::ErrorCode::Parse, std::string(what) + " is not valid JSON: " + e.what());
  }
}

json options_of(const char* text) { return text ? parse_json(text, "options") : json::object(); }

template <class T>
T option(const json& o, const char* key, T fallback) {
  return o.contains(key) && !o[key].is_null() ? o[key].get<T>() : fallback;
}

hgd::Rational rational_option(const json& o, const char* key, const hgd::Rational& fallback) {
  if (!o.contains(key) || o[key].is_null()) return fallback;
  if (o[key].is_string()) return hgd::parse_rational(o[key].get<std::string>());
  if (o[key].is_number_integer()) return hgd::Rational(o[key].get<long>());
  hgd::fail(hgd::ErrorCode::InvalidArgument, std::string("option '") + key + "' must be a rational string");
}

hgd::Rational rational_arg(const char* text, const char* what) {
  require(text, what);
  return hgd::parse_rational(text);
}

json names_json(const hgd::Hypergraph& h, const hgd::VSet& s) { return h.names_of(s); }

hgd::VSet set_from_json(const hgd::Hypergraph& h, const json& j) {
  if (!j.is_array()) hgd::fail(hgd::ErrorCode::Parse, "vertex set must be a JSON array of names");
  return h.make_set(j.get<std::vector<std::string>>());
}

json weights_json(const hgd::Hypergraph& h, const hgd::EdgeWeighting& w) {
  json out = json::object();
  for (int e = 0; e < h.num_edges(); ++e)
    if (sgn(w[e]) != 0) out[h.edge_name(e)] = hgd::to_string(w[e]);
  return out;
}

json solve_json(const hgd::Hypergraph& h, const hgd::SolveResult& r) {
  json j;
  j["answer"] = hgd::to_string(r.answer);
  j["width"] = r.decomposition ? json(hgd::to_string(r.width)) : json(nullptr);
  j["certificate"] = hgd::to_string(r.strength);
  j["decomposition"] = r.decomposition ? hgd::decomposition_to_json(h, *r.decomposition) : json(nullptr);
  j["diagnostics"] = r.diagnostics;
  return j;
}

hgd_answer answer_of(hgd::Answer a) {
  switch (a) {
    case hgd::Answer::Yes: return HGD_YES;
    case hgd::Answer::No: return HGD_NO;
    case hgd::Answer::Fail: return HGD_FAIL;
  }
  return HGD_FAIL;
}

hgd::FhdParams fhd_params(const json& o) {
  hgd::FhdParams p;
  p.d = option<int>(o, "d", p.d);
  p.i = option<int>(o, "i", p.i);
  p.r = option<int>(o, "r", p.r);
  p.c = option<int>(o, "c", p.c);
  p.c_frac = option<int>(o, "c_frac", p.c_frac);
  p.eps = rational_option(o, "eps", p.eps);
  p.budget = option<std::size_t>(o, "budget", p.budget);
  return p;
}

hgd_hypergraph* wrap(hgd::Hypergraph h) { return new hgd_hypergraph{std::move(h)}; }

}  // namespace

extern "C" {

HGD_API const char* hgd_last_error(void) { return last_error.c_str(); }

HGD_API void hgd_string_free(char* s) { std::free(s); }

HGD_API hgd_status hgd_hypergraph_parse(const char* text, hgd_hypergraph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(hgd::parse_hypergraph(text));
  });
}

HGD_API hgd_status hgd_hypergraph_from_json(const char* text, hgd_hypergraph** out) {
  return guarded([&] {
    require(out, "out");
    json j = parse_json(text, "hypergraph");
    std::vector<std::pair<std::string, std::vector<std::string>>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at("name").get<std::string>(), e.at("vertices").get<std::vector<std::string>>());
    hgd::Hypergraph h = hgd::Hypergraph::from_edges(edges);
    if (j.contains("vertices")) {
      auto listed = j["vertices"].get<std::vector<std::string>>();
      if (listed.size() != static_cast<std::size_t>(h.num_vertices()))
        hgd::fail(hgd::ErrorCode::Parse, "vertex list does not match the vertices used by the edges");
      std::vector<std::string> enames;
      std::vector<hgd::VSet> sets;
      std::unordered_map<std::string, int> index;
      for (std::size_t v = 0; v < listed.size(); ++v)
        if (!index.emplace(listed[v], static_cast<int>(v)).second)
          hgd::fail(hgd::ErrorCode::Parse, "duplicate vertex '" + listed[v] + "'");
      for (int e = 0; e < h.num_edges(); ++e) {
        hgd::VSet s(listed.size());
        for (const auto& name : h.names_of(h.edge(e))) {
          auto it = index.find(name);
          if (it == index.end()) hgd::fail(hgd::ErrorCode::Parse, "edge uses unlisted vertex '" + name + "'");
          s.set(it->second);
        }
        enames.push_back(h.edge_name(e));
        sets.push_back(std::move(s));
      }
      h = hgd::Hypergraph::from_sets(listed, enames, sets);
    }
    *out = wrap(std::move(h));
  });
}

HGD_API void hgd_hypergraph_free(hgd_hypergraph* h) { delete h; }

HGD_API hgd_status hgd_hypergraph_serialize(const hgd_hypergraph* h, char** text) {
  return guarded([&] {
    require(h, "hypergraph");
    require(text, "text");
    *text = dup_string(hgd::serialize_hypergraph(h->h));
  });
}

HGD_API hgd_status hgd_hypergraph_to_json(const hgd_hypergraph* h, char** out) {
  return guarded([&] {
    require(h, "hypergraph");
    require(out, "out");
    json edges = json::array();
    for (int e = 0; e < h->h.num_edges(); ++e)
      edges.push_back({{"name", h->h.edge_name(e)}, {"vertices", names_json(h->h, h->h.edge(e))}});
    emit(out, json{{"vertices", h->h.vertex_names()}, {"edges", edges}});
  });
}

HGD_API hgd_status hgd_hypergraph_size(const hgd_hypergraph* h, int* num_vertices, int* num_edges) {
  return guarded([&] {
    require(h, "hypergraph");
    if (num_vertices) *num_vertices = h->h.num_vertices();
    if (num_edges) *num_edges = h->h.num_edges();
  });
}

HGD_API hgd_status hgd_stats(const hgd_hypergraph* h, int cmax, int with_vc, char** report_json) {
  return guarded([&] {
    require(h, "hypergraph");
    if (cmax < 2) hgd::fail(hgd::ErrorCode::InvalidArgument, "cmax must be at least 2");
    const hgd::Hypergraph& g = h->h;
    hgd::MetricsReport m = hgd::structural_metrics(g, cmax, with_vc != 0);
    json miw = json::object();
    for (auto [c, w] : m.miwidth) miw[std::to_string(c)] = w;
    json j{{"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"rank", m.rank},
           {"degree", m.degree}, {"iwidth", m.iwidth}, {"miwidth", miw}};
    if (m.vc) {
      j["vc"] = *m.vc;
      std::vector<std::string> names;
      for (int v : m.vc_witness) names.push_back(g.vertex_name(v));
      j["vc_witness"] = names;
    }
    emit(report_json, j);
  });
}

HGD_API hgd_status hgd_cover(const hgd_hypergraph* h, const char* subset_json, int fractional, char** cover_json) {
  return guarded([&] {
    require(h, "hypergraph");
    const hgd::Hypergraph& g = h->h;
    hgd::VSet s = subset_json ? set_from_json(g, parse_json(subset_json, "subset")) : g.all_vertices();
    json j{{"subset", names_json(g, s)}, {"kind", fractional ? "fractional" : "integral"}};
    if (fractional) {
      hgd::FractionalCover c = hgd::fractional_cover(g, s);
      j["value"] = hgd::to_string(c.value);
      j["weights"] = weights_json(g, c.weights);
      json packing = json::object();
      for (int v = 0; v < g.num_vertices(); ++v)
        if (sgn(c.packing[v]) != 0) packing[g.vertex_name(v)] = hgd::to_string(c.packing[v]);
      j["packing"] = packing;
    } else {
      hgd::IntegralCover c = hgd::integral_cover(g, s);
      j["value"] = hgd::to_string(hgd::Rational(c.value));
      j["weights"] = weights_json(g, c.weights(g.num_edges()));
    }
    emit(cover_json, j);
  });
}

HGD_API hgd_status hgd_bags(const hgd_hypergraph* h, const char* params_json, char** bags_json) {
  return guarded([&] {
    require(h, "hypergraph");
    const hgd::Hypergraph& g = h->h;
    json o = parse_json(params_json, "parameters");
    const std::string kind = option<std::string>(o, "kind", "ghd");
    hgd::CandidateBagSet set;
    if (kind == "ghd") {
      const hgd::Rational k = rational_option(o, "k", hgd::Rational(0));
      if (k.get_den() != 1) hgd::fail(hgd::ErrorCode::InvalidArgument, "GHD candidate bags need an integer k");
      set = hgd::ghd_candidate_bags(g, static_cast<int>(k.get_num().get_si()),
                                    hgd::parse_ghd_variant(option<std::string>(o, "mode", "fine-bip")),
                                    option<int>(o, "c", 2), option<int>(o, "i", -1),
                                    option<std::size_t>(o, "budget", hgd::kDefaultBudget));
    } else if (kind == "fhd") {
      const hgd::Rational k = rational_option(o, "k", hgd::Rational(0));
      set = hgd::fhd_candidate_bags(g, k, hgd::parse_fhd_mode(option<std::string>(o, "mode", "rank")), fhd_params(o));
    } else {
      hgd::fail(hgd::ErrorCode::InvalidArgument, "bag kind must be 'ghd' or 'fhd', got '" + kind + "'");
    }
    json bags = json::array();
    for (const auto& b : set.bags) bags.push_back(names_json(g, b));
    json j{{"generator", set.generator}, {"parameters", set.parameters}, {"sub_size", set.sub_size},
           {"count", set.bags.size()}, {"bags", bags}};
    if (!set.rho_star.empty()) {
      json rs = json::array();
      for (const auto& r : set.rho_star) rs.push_back(hgd::to_string(r));
      j["rho_star"] = rs;
    }
    emit(bags_json, j);
  });
}

HGD_API hgd_status hgd_ctd(const hgd_hypergraph* h, const char* bags_json, hgd_answer* answer, char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    const hgd::Hypergraph& g = h->h;
    json j = parse_json(bags_json, "bags");
    if (j.is_object()) j = j.at("bags");
    if (!j.is_array()) hgd::fail(hgd::ErrorCode::Parse, "bags must be a JSON array of vertex arrays");
    std::vector<hgd::VSet> family;
    for (const auto& b : j) family.push_back(set_from_json(g, b));
    hgd::CtdResult r = hgd::ctd_decide(g, family);
    if (answer) *answer = r.accepted ? HGD_YES : HGD_NO;
    emit(result_json, json{{"answer", r.accepted ? "yes" : "no"},
                           {"blocks", r.num_blocks},
                           {"marked", r.num_marked},
                           {"rounds", r.rounds},
                           {"decomposition", r.decomposition ? hgd::decomposition_to_json(g, *r.decomposition)
                                                             : json(nullptr)}});
  });
}

HGD_API hgd_status hgd_validate(const hgd_hypergraph* h, const char* decomp_json, const char* kind, const char* k,
                                hgd_answer* answer, char** report_json) {
  return guarded([&] {
    require(h, "hypergraph");
    const hgd::Hypergraph& g = h->h;
    json dj = parse_json(decomp_json, "decomposition");
    if (kind) dj["kind"] = hgd::to_string(hgd::parse_kind(kind));
    hgd::Decomposition d = hgd::decomposition_from_json(g, dj);
    std::optional<hgd::Rational> bound;
    if (k) bound = hgd::parse_rational(k);
    hgd::ValidationReport rep = hgd::validate(g, d, bound);
    if (answer) *answer = rep.valid ? HGD_YES : HGD_NO;
    emit(report_json, json{{"valid", rep.valid},
                           {"kind", hgd::to_string(d.kind)},
                           {"width", hgd::to_string(rep.width)},
                           {"violations", rep.violations}});
  });
}

HGD_API hgd_status hgd_check_compnf(const hgd_hypergraph* h, const char* decomp_json, hgd_answer* answer,
                                    char** report_json) {
  return guarded([&] {
    require(h, "hypergraph");
    hgd::Decomposition d = hgd::decomposition_from_json(h->h, parse_json(decomp_json, "decomposition"));
    hgd::CompnfReport rep = hgd::check_compnf(h->h, d);
    if (answer) *answer = rep.compnf ? HGD_YES : HGD_NO;
    emit(report_json, json{{"compnf", rep.compnf}, {"violations", rep.violations}});
  });
}

HGD_API hgd_status hgd_normalize_ghd(const hgd_hypergraph* h, const char* ghd_json, char** normalized_json) {
  return guarded([&] {
    require(h, "hypergraph");
    hgd::Decomposition d = hgd::decomposition_from_json(h->h, parse_json(ghd_json, "decomposition"));
    emit(normalized_json, hgd::decomposition_to_json(h->h, hgd::normalize_ghd(h->h, d)));
  });
}

HGD_API hgd_status hgd_check_ghd(const hgd_hypergraph* h, int k, const char* options_json, hgd_answer* answer,
                                 char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    json o = options_of(options_json);
    hgd::GhdOptions opt;
    opt.variant = hgd::parse_ghd_variant(option<std::string>(o, "variant", "fine-bip"));
    opt.c = option<int>(o, "c", opt.c);
    opt.i = option<int>(o, "i", opt.i);
    opt.budget = option<std::size_t>(o, "budget", opt.budget);
    hgd::SolveResult r = hgd::check_ghd(h->h, k, opt);
    if (answer) *answer = answer_of(r.answer);
    emit(result_json, solve_json(h->h, r));
  });
}

HGD_API hgd_status hgd_check_fhd(const hgd_hypergraph* h, const char* k, const char* options_json,
                                 hgd_answer* answer, char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    json o = options_of(options_json);
    hgd::FhdOptions opt;
    const std::string mode = option<std::string>(o, "mode", "auto");
    if (mode != "auto") opt.mode = hgd::parse_fhd_mode(mode);
    opt.params = fhd_params(o);
    hgd::SolveResult r = hgd::check_fhd(h->h, rational_arg(k, "k"), opt);
    if (answer) *answer = answer_of(r.answer);
    emit(result_json, solve_json(h->h, r));
  });
}

HGD_API hgd_status hgd_approx_fhd(const hgd_hypergraph* h, const char* k, const char* eps, const char* options_json,
                                  hgd_answer* answer, char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    json o = options_of(options_json);
    hgd::SolveResult r =
        hgd::approx_fhd_bmip(h->h, rational_arg(k, "k"), rational_arg(eps, "eps"), option<int>(o, "c", 2),
                             option<int>(o, "i", -1), option<std::size_t>(o, "budget", hgd::kDefaultBudget));
    if (answer) *answer = answer_of(r.answer);
    emit(result_json, solve_json(h->h, r));
  });
}

HGD_API hgd_status hgd_fhw_opt(const hgd_hypergraph* h, const char* big_k, const char* eps, const char* options_json,
                               hgd_answer* answer, char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    json o = options_of(options_json);
    hgd::PtasResult p =
        hgd::fhw_approx_ptas(h->h, rational_arg(big_k, "K"), rational_arg(eps, "eps"), option<int>(o, "c", 2),
                             option<int>(o, "i", -1), option<std::size_t>(o, "budget", hgd::kDefaultBudget));
    if (answer) *answer = answer_of(p.result.answer);
    json j = solve_json(h->h, p.result);
    j["iterations"] = p.iterations;
    j["iteration_bound"] = p.iteration_bound;
    json trace = json::array();
    for (const auto& s : p.trace)
      trace.push_back({{"probe", hgd::to_string(s.probe)},
                       {"found", s.found},
                       {"lower", hgd::to_string(s.lower)},
                       {"upper", hgd::to_string(s.upper)}});
    j["trace"] = trace;
    emit(result_json, j);
  });
}

HGD_API hgd_status hgd_fhd_to_ghd(const hgd_hypergraph* h, const char* fhd_json, char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    hgd::Decomposition d = hgd::decomposition_from_json(h->h, parse_json(fhd_json, "decomposition"));
    hgd::GhdConversion c = hgd::fhd_to_ghd(h->h, d);
    json ratios = json::object();
    for (const auto& [id, r] : c.ratios) ratios[id] = hgd::to_string(r);
    json j{{"decomposition", hgd::decomposition_to_json(h->h, c.ghd)},
           {"fhd_width", hgd::to_string(c.fhd_width)},
           {"ghd_width", c.ghd_width},
           {"ratios", ratios}};
    j["vc"] = c.vc ? json(*c.vc) : json(nullptr);
    j["ceiling_log2"] = c.ceiling_log2 ? json(*c.ceiling_log2) : json(nullptr);
    j["ceiling_ln"] = c.ceiling_ln ? json(*c.ceiling_ln) : json(nullptr);
    emit(result_json, j);
  });
}

HGD_API hgd_status hgd_oracle(const hgd_hypergraph* h, const char* kind, int cap, char** result_json) {
  return guarded([&] {
    require(h, "hypergraph");
    require(kind, "kind");
    const std::string k = kind;
    hgd::WidthKind wk;
    if (k == "ghw") wk = hgd::WidthKind::Ghw;
    else if (k == "fhw") wk = hgd::WidthKind::Fhw;
    else hgd::fail(hgd::ErrorCode::InvalidArgument, "oracle kind must be 'ghw' or 'fhw', got '" + k + "'");
    hgd::OracleResult r = hgd::oracle_width(h->h, wk, cap);
    emit(result_json, json{{"kind", k},
                           {"width", hgd::to_string(r.width)},
                           {"decomposition", hgd::decomposition_to_json(h->h, r.witness)}});
  });
}

HGD_API hgd_status hgd_reduce_3sat(const char* dimacs, hgd_hypergraph** out, char** layout_json) {
  return guarded([&] {
    require(dimacs, "dimacs");
    require(out, "out");
    hgd::CnfFormula phi = hgd::parse_dimacs(dimacs);
    hgd::Reduction red = hgd::reduce_3sat(phi);
    json families = json::object();
    for (const auto& [name, edges] : red.layout.families) families[name] = edges;
    emit(layout_json, json{{"n", red.layout.n},
                           {"m", red.layout.m},
                           {"vertices", red.hypergraph.num_vertices()},
                           {"edges", red.hypergraph.num_edges()},
                           {"s_size", 3 * red.layout.q.size()},
                           {"families", families}});
    *out = wrap(std::move(red.hypergraph));
  });
}

HGD_API hgd_status hgd_intended_ghd(const char* dimacs, const char* assignment_json, char** ghd_json) {
  return guarded([&] {
    require(dimacs, "dimacs");
    require(assignment_json, "assignment");
    hgd::CnfFormula phi = hgd::parse_dimacs(dimacs);
    std::vector<bool> sigma = hgd::parse_assignment(phi, assignment_json);
    hgd::Reduction red = hgd::reduce_3sat(phi);
    hgd::IntendedGhd g = hgd::intended_ghd(red, phi, sigma);
    hgd::ValidationReport rep = hgd::validate(red.hypergraph, g.ghd, hgd::Rational(2));
    emit(ghd_json, json{{"decomposition", hgd::decomposition_to_json(red.hypergraph, g.ghd)},
                        {"z", g.z},
                        {"chosen_literals", g.chosen_literal},
                        {"valid", rep.valid},
                        {"width", hgd::to_string(rep.width)}});
  });
}

HGD_API hgd_status hgd_gadget(const char* m1_json, const char* m2_json, hgd_hypergraph** out) {
  return guarded([&] {
    require(out, "out");
    auto m1 = m1_json ? parse_json(m1_json, "M1").get<std::vector<std::string>>() : std::vector<std::string>{};
    auto m2 = m2_json ? parse_json(m2_json, "M2").get<std::vector<std::string>>() : std::vector<std::string>{};
    *out = wrap(hgd::build_gadget(m1, m2));
  });
}

HGD_API hgd_status hgd_lift(const hgd_hypergraph* h, const char* shift, hgd_hypergraph** out) {
  return guarded([&] {
    require(h, "hypergraph");
    require(out, "out");
    *out = wrap(hgd::lift_width(h->h, rational_arg(shift, "shift")));
  });
}

}  // extern "C"
