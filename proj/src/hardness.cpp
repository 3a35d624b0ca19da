#include "hgd/hardness.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace hgd {

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula phi;
  std::istringstream in(text);
  std::string line;
  int declared_clauses = -1;
  bool header = false;
  std::vector<Literal> current;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c' || first == "%") continue;
    if (first == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> phi.num_vars >> declared_clauses) || fmt != "cnf" || phi.num_vars < 1)
        fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": malformed DIMACS header");
      header = true;
      continue;
    }
    if (!header) fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    std::istringstream toks(line);
    long lit;
    while (toks >> lit) {
      if (lit == 0) {
        if (current.size() != 3)
          fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": clause has " +
                                     std::to_string(current.size()) + " literals, expected 3");
        phi.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      const long var = lit < 0 ? -lit : lit;
      if (var > phi.num_vars)
        fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": variable " + std::to_string(var) +
                                   " exceeds declared count " + std::to_string(phi.num_vars));
      current.push_back(Literal{static_cast<int>(var), lit > 0});
    }
    if (!toks.eof()) fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": non-numeric token");
  }
  if (!current.empty()) fail(ErrorCode::Parse, "last clause is not terminated by 0");
  if (!header) fail(ErrorCode::Parse, "missing 'p cnf' header");
  if (phi.clauses.empty()) fail(ErrorCode::Parse, "formula has no clauses");
  if (declared_clauses != static_cast<int>(phi.clauses.size()))
    fail(ErrorCode::Parse, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                               std::to_string(phi.clauses.size()));
  return phi;
}

std::string serialize_dimacs(const CnfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.num_vars << ' ' << phi.clauses.size() << '\n';
  for (const auto& c : phi.clauses) {
    for (const auto& l : c) out << (l.positive ? l.var : -l.var) << ' ';
    out << "0\n";
  }
  return out.str();
}

std::vector<bool> parse_assignment(const CnfFormula& phi, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("assignment is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Parse, "assignment must be a JSON object");
  std::vector<bool> sigma(phi.num_vars + 1, false);
  std::vector<bool> seen(phi.num_vars + 1, false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    int var = 0;
    try {
      if (key.size() < 2 || key[0] != 'x') throw std::invalid_argument(key);
      std::size_t used = 0;
      var = std::stoi(key.substr(1), &used);
      if (used != key.size() - 1) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "assignment key '" + key + "' is not of the form x<i>");
    }
    if (var < 1 || var > phi.num_vars) fail(ErrorCode::InvalidArgument, "assignment names unknown variable " + key);
    if (!it.value().is_boolean()) fail(ErrorCode::Parse, "assignment value for " + key + " must be a boolean");
    sigma[var] = it.value().get<bool>();
    seen[var] = true;
  }
  for (int v = 1; v <= phi.num_vars; ++v)
    if (!seen[v]) fail(ErrorCode::InvalidArgument, "assignment misses variable x" + std::to_string(v));
  return sigma;
}

namespace {

bool literal_true(const Literal& l, const std::vector<bool>& sigma) { return sigma[l.var] == l.positive; }

using Names = std::vector<std::string>;

Names operator+(Names a, const Names& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct GadgetNames {
  std::string a1, a2, b1, b2, c1, c2, d1, d2;
};

GadgetNames gadget_names(bool primed) {
  const std::string p = primed ? "p" : "";
  return {"a" + p + "1", "a" + p + "2", "b" + p + "1", "b" + p + "2",
          "c" + p + "1", "c" + p + "2", "d" + p + "1", "d" + p + "2"};
}

// Edge lists of the gadget: the A, B and C families in their displayed order.
std::vector<std::pair<std::string, Names>> gadget_edges(const GadgetNames& g, const std::string& tag,
                                                        const Names& m1, const Names& m2) {
  const std::string ea = "e" + tag + "A", eb = "e" + tag + "B", ec = "e" + tag + "C";
  return {
      {ea + "1", Names{g.a1, g.b1} + m1}, {ea + "2", Names{g.a2, g.b2} + m2}, {ea + "3", {g.a1, g.b2}},
      {ea + "4", {g.a2, g.b1}},           {ea + "5", {g.a1, g.a2}},

      {eb + "1", Names{g.b1, g.c1} + m1}, {eb + "2", Names{g.b2, g.c2} + m2}, {eb + "3", {g.b1, g.c2}},
      {eb + "4", {g.b2, g.c1}},           {eb + "5", {g.b1, g.b2}},           {eb + "6", {g.c1, g.c2}},

      {ec + "1", Names{g.c1, g.d1} + m1}, {ec + "2", Names{g.c2, g.d2} + m2}, {ec + "3", {g.c1, g.d2}},
      {ec + "4", {g.c2, g.d1}},           {ec + "5", {g.d1, g.d2}},
  };
}

Hypergraph build_named(const Names& vertices, const std::vector<std::pair<std::string, Names>>& edges) {
  std::unordered_map<std::string, int> index;
  for (std::size_t v = 0; v < vertices.size(); ++v) index.emplace(vertices[v], static_cast<int>(v));
  std::vector<std::string> enames;
  std::vector<VSet> sets;
  for (const auto& [name, members] : edges) {
    VSet s(vertices.size());
    for (const auto& v : members) s.set(index.at(v));
    enames.push_back(name);
    sets.push_back(std::move(s));
  }
  return Hypergraph::from_sets(vertices, std::move(enames), std::move(sets));
}

}  // namespace

bool satisfies(const CnfFormula& phi, const std::vector<bool>& sigma) {
  for (const auto& c : phi.clauses)
    if (std::none_of(c.begin(), c.end(), [&](const Literal& l) { return literal_true(l, sigma); })) return false;
  return true;
}

Hypergraph build_gadget(const std::vector<std::string>& m1, const std::vector<std::string>& m2) {
  const GadgetNames g = gadget_names(false);
  Names vertices{g.a1, g.a2, g.b1, g.b2, g.c1, g.c2, g.d1, g.d2};
  std::unordered_map<std::string, int> seen;
  for (const auto& v : vertices) seen.emplace(v, 0);
  for (const auto* side : {&m1, &m2}) {
    for (const auto& v : *side) {
      if (!seen.emplace(v, 1).second)
        fail(ErrorCode::InvalidArgument, "gadget attachment vertex '" + v + "' overlaps another vertex");
      vertices.push_back(v);
    }
  }
  return build_named(vertices, gadget_edges(g, "", m1, m2));
}

std::string ReductionLayout::pos_name(Position p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}
std::string ReductionLayout::s_name(Position p, int k) { return "s_" + pos_name(p) + "_" + std::to_string(k); }
std::string ReductionLayout::a_name(Position p) { return "a_" + pos_name(p); }
std::string ReductionLayout::ap_name(Position p) { return "ap_" + pos_name(p); }

int expected_vertex_count(int n, int m) {
  const int p = (2 * n + 3) * m;
  return 3 * (p + 3) + 2 * p + 2 * n + 2 + 16;
}

int expected_edge_count(int n, int m) {
  const int p = (2 * n + 3) * m;
  return 2 * 16 + (p - 1) + n + 6 * (p - 1) + 4;
}

namespace {

struct ReductionSets {
  const ReductionLayout& layout;

  Names s_all() const {
    Names out;
    for (auto q : layout.q)
      for (int k = 1; k <= 3; ++k) out.push_back(ReductionLayout::s_name(q, k));
    return out;
  }
  Names s_at(Position p) const {
    return {ReductionLayout::s_name(p, 1), ReductionLayout::s_name(p, 2), ReductionLayout::s_name(p, 3)};
  }
  Names s_without(Position p) const {
    Names out;
    for (auto q : layout.q)
      if (q != p)
        for (int k = 1; k <= 3; ++k) out.push_back(ReductionLayout::s_name(q, k));
    return out;
  }
  Names s_without_one(Position p, int k) const {
    Names out;
    for (const auto& v : s_all())
      if (v != ReductionLayout::s_name(p, k)) out.push_back(v);
    return out;
  }
  Names a_all() const { return a_upto_from(layout.positions.back(), false, false); }
  Names ap_all() const { return a_upto_from(layout.positions.back(), true, false); }
  // A_p-style prefixes (up to p) or suffixes (from p), plain or primed.
  Names a_upto_from(Position p, bool primed, bool from) const {
    Names out;
    for (auto q : layout.positions)
      if (from ? q >= p : q <= p) out.push_back(primed ? ReductionLayout::ap_name(q) : ReductionLayout::a_name(q));
    return out;
  }
  Names y(bool primed, int skip = 0) const {
    Names out;
    for (int i = 1; i <= layout.n; ++i)
      if (i != skip) out.push_back((primed ? "yp" : "y") + std::to_string(i));
    return out;
  }
};

}  // namespace

Reduction reduce_3sat(const CnfFormula& phi) {
  if (phi.clauses.empty()) fail(ErrorCode::InvalidArgument, "formula has no clauses");
  for (const auto& c : phi.clauses)
    for (const auto& l : c)
      if (l.var < 1 || l.var > phi.num_vars)
        fail(ErrorCode::InvalidArgument, "literal refers to variable " + std::to_string(l.var) + " outside 1.." +
                                             std::to_string(phi.num_vars));
  Reduction red;
  ReductionLayout& lay = red.layout;
  lay.n = phi.num_vars;
  lay.m = static_cast<int>(phi.clauses.size());
  for (int i = 1; i <= 2 * lay.n + 3; ++i)
    for (int j = 1; j <= lay.m; ++j) lay.positions.push_back({i, j});
  lay.q = lay.positions;
  lay.q.insert(lay.q.end(), {{0, 1}, {0, 0}, {1, 0}});
  std::sort(lay.q.begin(), lay.q.end());
  const Position pmax = lay.positions.back();
  ReductionSets sets{lay};

  const GadgetNames g = gadget_names(false), gp = gadget_names(true);
  Names vertices = sets.s_all() + sets.a_all() + sets.ap_all() + sets.y(false) + sets.y(true) + Names{"z1", "z2"};
  for (const auto* gn : {&g, &gp})
    vertices = vertices + Names{gn->a1, gn->a2, gn->b1, gn->b2, gn->c1, gn->c2, gn->d1, gn->d2};
  for (const auto* gn : {&g, &gp})
    lay.restricted = lay.restricted + Names{gn->a2, gn->b1, gn->b2, gn->c1, gn->c2, gn->d1, gn->d2};

  std::vector<std::pair<std::string, Names>> edges;
  auto add = [&](const std::string& family, std::string name, Names members) {
    lay.families[family].push_back(name);
    edges.emplace_back(std::move(name), std::move(members));
  };
  auto add_gadget = [&](const GadgetNames& gn, const std::string& tag, const Names& m1, const Names& m2) {
    for (auto& [name, members] : gadget_edges(gn, tag, m1, m2))
      add("E" + tag + "_" + std::string(1, name[name.size() - 2]), name, members);
  };
  add_gadget(g, "", sets.s_without({0, 1}) + Names{"z1"}, sets.y(false) + sets.s_at({0, 1}) + Names{"z2"});
  add_gadget(gp, "p", sets.s_without({1, 0}) + Names{"z1"}, sets.y(true) + sets.s_at({1, 0}) + Names{"z2"});

  const std::string pos_prefix = "e_";
  for (auto p : lay.positions) {
    if (p == pmax) continue;
    add("e_p", pos_prefix + ReductionLayout::pos_name(p),
        sets.a_upto_from(p, true, false) + sets.a_upto_from(p, false, true));
  }
  for (int i = 1; i <= lay.n; ++i) add("e_y", "ey" + std::to_string(i), {"y" + std::to_string(i), "yp" + std::to_string(i)});
  for (auto p : lay.positions) {
    if (p == pmax) continue;
    const auto& clause = phi.clauses[p.second - 1];
    for (int k = 1; k <= 3; ++k) {
      const Literal& lit = clause[k - 1];
      const std::string base = pos_prefix + ReductionLayout::pos_name(p) + "_" + std::to_string(k);
      add("e_k0", base + "_0",
          sets.a_upto_from(p, false, true) + sets.s_without_one(p, k) + sets.y(false, lit.positive ? 0 : lit.var) +
              Names{"z1"});
      add("e_k1", base + "_1",
          sets.a_upto_from(p, true, false) + Names{ReductionLayout::s_name(p, k)} +
              sets.y(true, lit.positive ? lit.var : 0) + Names{"z2"});
    }
  }
  add("special", "e0_(0,0)", Names{g.a1} + sets.a_all() + sets.s_without({0, 0}) + sets.y(false) + Names{"z1"});
  add("special", "e1_(0,0)", sets.s_at({0, 0}) + sets.y(true) + Names{"z2"});
  add("special", "e0_max", sets.s_without(pmax) + sets.y(false) + Names{"z1"});
  add("special", "e1_max", Names{gp.a1} + sets.ap_all() + sets.s_at(pmax) + sets.y(true) + Names{"z2"});

  red.hypergraph = build_named(vertices, edges);
  return red;
}

IntendedGhd intended_ghd(const Reduction& red, const CnfFormula& phi, const std::vector<bool>& sigma) {
  if (static_cast<int>(sigma.size()) != phi.num_vars + 1)
    fail(ErrorCode::InvalidArgument, "assignment size does not match the formula");
  IntendedGhd out;
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    int chosen = 0;
    for (int k = 0; k < 3 && !chosen; ++k)
      if (literal_true(phi.clauses[j][k], sigma)) chosen = k + 1;
    if (!chosen) fail(ErrorCode::Precondition, "assignment falsifies clause " + std::to_string(j + 1));
    out.chosen_literal.push_back(chosen);
  }
  const Hypergraph& h = red.hypergraph;
  const ReductionLayout& lay = red.layout;
  ReductionSets sets{lay};
  Names z;
  for (int i = 1; i <= lay.n; ++i) z.push_back((sigma[i] ? "y" : "yp") + std::to_string(i));
  const Names zz{"z1", "z2"};
  const GadgetNames g = gadget_names(false), gp = gadget_names(true);

  Decomposition& d = out.ghd;
  d.kind = DecompKind::GHD;
  int parent = -1;
  auto node = [&](const std::string& id, const Names& bag, const std::string& e1, const std::string& e2) {
    EdgeWeighting w(h.num_edges(), 0);
    w[h.edge_index(e1)] = 1;
    w[h.edge_index(e2)] = 1;
    parent = d.add_node(parent, h.make_set(bag), std::move(w), id);
  };
  const Names s = sets.s_all();
  node("u_C", Names{g.d1, g.d2, g.c1, g.c2} + sets.y(false) + s + zz, "eC1", "eC2");
  node("u_B", Names{g.c1, g.c2, g.b1, g.b2} + sets.y(false) + s + zz, "eB1", "eB2");
  node("u_A", Names{g.b1, g.b2, g.a1, g.a2} + sets.y(false) + s + zz, "eA1", "eA2");
  node("u_min-1", Names{g.a1} + sets.a_all() + sets.y(false) + s + z + zz, "e0_(0,0)", "e1_(0,0)");
  const Position pmax = lay.positions.back();
  for (auto p : lay.positions) {
    if (p == pmax) continue;
    const std::string base = "e_" + ReductionLayout::pos_name(p) + "_" + std::to_string(out.chosen_literal[p.second - 1]);
    node("u_" + ReductionLayout::pos_name(p),
         sets.a_upto_from(p, true, false) + sets.a_upto_from(p, false, true) + s + z + zz, base + "_0", base + "_1");
  }
  node("u_max", Names{gp.a1} + sets.ap_all() + sets.y(true) + s + z + zz, "e0_max", "e1_max");
  node("u'_A", Names{gp.a1, gp.a2, gp.b1, gp.b2} + sets.y(true) + s + zz, "epA1", "epA2");
  node("u'_B", Names{gp.b1, gp.b2, gp.c1, gp.c2} + sets.y(true) + s + zz, "epB1", "epB2");
  node("u'_C", Names{gp.c1, gp.c2, gp.d1, gp.d2} + sets.y(true) + s + zz, "epC1", "epC2");

  for (int v = 0; v < h.num_vertices(); ++v)
    if (std::find(z.begin(), z.end(), h.vertex_name(v)) != z.end()) out.z.push_back(h.vertex_name(v));
  return out;
}

Hypergraph lift_width(const Hypergraph& h, const Rational& shift) {
  if (sgn(shift) <= 0) fail(ErrorCode::InvalidArgument, "width shift must be positive");
  const bool integral = shift.get_den() == 1;
  if (!shift.get_num().fits_sint_p() || shift.get_num() > 4096)
    fail(ErrorCode::InvalidArgument, "width shift " + to_string(shift) + " is too large");
  const int r = static_cast<int>(shift.get_num().get_si());
  const int q = static_cast<int>(shift.get_den().get_si());
  if (!integral && r <= q) fail(ErrorCode::InvalidArgument, "rational width shift r/q needs r > q");
  const int fresh_count = integral ? 2 * r : r;

  std::unordered_map<std::string, int> vtaken, etaken;
  for (int v = 0; v < h.num_vertices(); ++v) vtaken.emplace(h.vertex_name(v), v);
  for (int e = 0; e < h.num_edges(); ++e) etaken.emplace(h.edge_name(e), e);
  Names vertices = h.vertex_names();
  Names fresh;
  for (int j = 1; j <= fresh_count; ++j) {
    std::string name = fresh_name("f" + std::to_string(j), vtaken);
    vtaken.emplace(name, -1);
    fresh.push_back(name);
    vertices.push_back(name);
  }
  std::vector<std::pair<std::string, Names>> edges;
  for (int e = 0; e < h.num_edges(); ++e) edges.emplace_back(h.edge_name(e), h.names_of(h.edge(e)));
  auto add = [&](const std::string& base, Names members) {
    std::string name = fresh_name(base, etaken);
    etaken.emplace(name, -1);
    edges.emplace_back(std::move(name), std::move(members));
  };
  if (integral) {
    for (int a = 0; a < fresh_count; ++a)
      for (int b = a + 1; b < fresh_count; ++b) add("lift_" + fresh[a] + "_" + fresh[b], {fresh[a], fresh[b]});
  } else {
    for (int a = 0; a < r; ++a) {
      Names members;
      for (int t = 0; t < q; ++t) members.push_back(fresh[(a + t) % r]);
      add("lift_cycle" + std::to_string(a + 1), members);
    }
  }
  for (const auto& f : fresh)
    for (int v = 0; v < h.num_vertices(); ++v) add("lift_" + f + "_" + h.vertex_name(v), {f, h.vertex_name(v)});
  return build_named(vertices, edges);
}

}  // namespace hgd
