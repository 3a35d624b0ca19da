#include "hgd/hypergraph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <unordered_set>

#include "hgd/metrics.hpp"

namespace hgd {

bool vset_less(const VSet& a, const VSet& b) {
  auto x = a.find_first(), y = b.find_first();
  while (x != VSet::npos && y != VSet::npos) {
    if (x != y) return x < y;
    x = a.find_next(x);
    y = b.find_next(y);
  }
  return x == VSet::npos && y != VSet::npos;
}

Hypergraph Hypergraph::from_edges(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& edges) {
  std::vector<std::string> vnames;
  std::unordered_map<std::string, int> vidx;
  for (const auto& [name, verts] : edges)
    for (const auto& v : verts)
      if (vidx.emplace(v, static_cast<int>(vnames.size())).second) vnames.push_back(v);
  std::vector<std::string> enames;
  std::vector<VSet> sets;
  for (const auto& [name, verts] : edges) {
    if (verts.empty()) fail(ErrorCode::Parse, "empty edge '" + name + "'");
    VSet s(vnames.size());
    for (const auto& v : verts) s.set(vidx.at(v));
    enames.push_back(name);
    sets.push_back(std::move(s));
  }
  return from_sets(std::move(vnames), std::move(enames), std::move(sets));
}

Hypergraph Hypergraph::from_sets(std::vector<std::string> vertex_names, std::vector<std::string> edge_names,
                                 std::vector<VSet> edge_sets) {
  Hypergraph h;
  h.vertex_names_ = std::move(vertex_names);
  h.edge_names_ = std::move(edge_names);
  h.edges_ = std::move(edge_sets);
  if (h.edge_names_.size() != h.edges_.size()) fail(ErrorCode::Internal, "edge name/set count mismatch");
  h.index();
  return h;
}

void Hypergraph::index() {
  const int n = num_vertices();
  vertex_index_.clear();
  edge_index_.clear();
  for (int v = 0; v < n; ++v)
    if (!vertex_index_.emplace(vertex_names_[v], v).second)
      fail(ErrorCode::Parse, "duplicate vertex name '" + vertex_names_[v] + "'");
  incident_.assign(n, {});
  for (int e = 0; e < num_edges(); ++e) {
    if (static_cast<int>(edges_[e].size()) != n) fail(ErrorCode::Internal, "edge set has wrong universe size");
    if (edges_[e].none()) fail(ErrorCode::Parse, "empty edge '" + edge_names_[e] + "'");
    if (!edge_index_.emplace(edge_names_[e], e).second)
      fail(ErrorCode::Parse, "duplicate edge name '" + edge_names_[e] + "'");
    for_each_member(edges_[e], [&](int v) { incident_[v].push_back(e); });
  }
  for (int v = 0; v < n; ++v)
    if (incident_[v].empty()) fail(ErrorCode::Parse, "isolated vertex '" + vertex_names_[v] + "'");
}

int Hypergraph::vertex_index(const std::string& name) const {
  auto it = vertex_index_.find(name);
  return it == vertex_index_.end() ? -1 : it->second;
}

int Hypergraph::edge_index(const std::string& name) const {
  auto it = edge_index_.find(name);
  return it == edge_index_.end() ? -1 : it->second;
}

VSet Hypergraph::all_vertices() const {
  VSet s(vertex_names_.size());
  s.set();
  return s;
}

VSet Hypergraph::make_set(const std::vector<std::string>& names) const {
  VSet s = empty_set();
  for (const auto& n : names) {
    int v = vertex_index(n);
    if (v < 0) fail(ErrorCode::InvalidArgument, "unknown vertex '" + n + "'");
    s.set(v);
  }
  return s;
}

std::vector<std::string> Hypergraph::names_of(const VSet& s) const {
  std::vector<std::string> out;
  for_each_member(s, [&](int v) { out.push_back(vertex_names_[v]); });
  return out;
}

int Hypergraph::rank() const {
  std::size_t r = 0;
  for (const auto& e : edges_) r = std::max(r, e.count());
  return static_cast<int>(r);
}

int Hypergraph::degree() const {
  std::size_t d = 0;
  for (const auto& inc : incident_) d = std::max(d, inc.size());
  return static_cast<int>(d);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  int line() const { return line_; }

  void advance() {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }

  // Skips whitespace and '%' comments running to the end of the line.
  void skip() {
    while (!eof()) {
      char ch = peek();
      if (ch == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, "line " + std::to_string(line_) + ": " + what);
  }

  static bool special(char ch) {
    return ch == '(' || ch == ')' || ch == ',' || ch == '"' || ch == '%' ||
           std::isspace(static_cast<unsigned char>(ch));
  }

  std::string identifier(const char* what) {
    skip();
    if (eof()) error(std::string("expected ") + what + ", found end of input");
    std::string out;
    if (peek() == '"') {
      advance();
      while (true) {
        if (eof()) error("unterminated quoted identifier");
        char ch = peek();
        advance();
        if (ch == '"') break;
        if (ch == '\\') {
          if (eof()) error("unterminated quoted identifier");
          ch = peek();
          advance();
        }
        out.push_back(ch);
      }
      return out;
    }
    while (!eof() && !special(peek())) {
      out.push_back(peek());
      advance();
    }
    if (out.empty()) error(std::string("expected ") + what + ", found '" + std::string(1, peek()) + "'");
    return out;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  for (char ch : s)
    if (Scanner::special(ch) || ch == '\\') return true;
  return s.back() == '.';
}

std::string quote(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Hypergraph parse_hypergraph(const std::string& text) {
  Scanner sc(text);
  std::vector<std::pair<std::string, std::vector<std::string>>> edges;
  std::unordered_set<std::string> seen;
  sc.skip();
  while (!sc.eof()) {
    const int line = sc.line();
    std::string name = sc.identifier("edge name");
    // An unquoted name may end in '.' only when it is the terminator.
    sc.skip();
    if (sc.eof() || sc.peek() != '(') sc.error("expected '(' after edge name '" + name + "'");
    sc.advance();
    std::vector<std::string> verts;
    sc.skip();
    if (!sc.eof() && sc.peek() == ')') {
      fail(ErrorCode::Parse, "line " + std::to_string(line) + ": empty edge '" + name + "'");
    }
    while (true) {
      std::string v = sc.identifier("vertex name");
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
      sc.skip();
      if (sc.eof()) sc.error("unterminated edge '" + name + "'");
      char ch = sc.peek();
      sc.advance();
      if (ch == ')') break;
      if (ch != ',') sc.error("expected ',' or ')' in edge '" + name + "'");
    }
    if (!seen.insert(name).second)
      fail(ErrorCode::Parse, "line " + std::to_string(line) + ": duplicate edge name '" + name + "'");
    edges.emplace_back(std::move(name), std::move(verts));
    sc.skip();
    if (sc.eof()) break;
    char ch = sc.peek();
    sc.advance();
    if (ch == '.') {
      sc.skip();
      if (!sc.eof()) sc.error("unexpected content after final '.'");
      break;
    }
    if (ch != ',') sc.error("expected ',' or '.' after edge '" + edges.back().first + "'");
    sc.skip();
  }
  if (edges.empty()) fail(ErrorCode::Parse, "no edges in input");
  return Hypergraph::from_edges(edges);
}

std::string serialize_hypergraph(const Hypergraph& h) {
  std::string out;
  for (int e = 0; e < h.num_edges(); ++e) {
    out += quote(h.edge_name(e));
    out += '(';
    bool first = true;
    for_each_member(h.edge(e), [&](int v) {
      if (!first) out += ',';
      first = false;
      out += quote(h.vertex_name(v));
    });
    out += ')';
    out += (e + 1 < h.num_edges()) ? ",\n" : ".";
  }
  return out;
}

bool same_named_structure(const Hypergraph& a, const Hypergraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  for (const auto& v : a.vertex_names())
    if (b.vertex_index(v) < 0) return false;
  for (int e = 0; e < a.num_edges(); ++e) {
    int f = b.edge_index(a.edge_name(e));
    if (f < 0) return false;
    auto x = a.names_of(a.edge(e)), y = b.names_of(b.edge(f));
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reduction and duality

ReducedHypergraph reduce(const Hypergraph& h) {
  const int n = h.num_vertices(), m = h.num_edges();
  ReducedHypergraph out;
  out.edge_rep.assign(m, -1);
  out.vertex_rep.assign(n, -1);

  std::vector<int> kept_edges;
  std::unordered_map<VSet, int, VSetHash> first_edge;
  for (int e = 0; e < m; ++e) {
    auto [it, inserted] = first_edge.emplace(h.edge(e), static_cast<int>(kept_edges.size()));
    if (inserted) kept_edges.push_back(e);
    out.edge_rep[e] = it->second;
  }

  std::map<std::vector<int>, int> type_rep;
  std::vector<int> kept_vertices;
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] = type_rep.emplace(h.incident(v), static_cast<int>(kept_vertices.size()));
    if (inserted) kept_vertices.push_back(v);
    out.vertex_rep[v] = it->second;
  }

  std::vector<std::string> vnames, enames;
  for (int v : kept_vertices) vnames.push_back(h.vertex_name(v));
  std::vector<VSet> sets;
  for (int e : kept_edges) {
    VSet s(kept_vertices.size());
    for_each_member(h.edge(e), [&](int v) { s.set(out.vertex_rep[v]); });
    enames.push_back(h.edge_name(e));
    sets.push_back(std::move(s));
  }
  out.hypergraph = Hypergraph::from_sets(std::move(vnames), std::move(enames), std::move(sets));
  return out;
}

bool is_reduced(const Hypergraph& h) {
  std::unordered_set<VSet, VSetHash> edges(h.edges().begin(), h.edges().end());
  if (static_cast<int>(edges.size()) != h.num_edges()) return false;
  std::map<std::vector<int>, int> types;
  for (int v = 0; v < h.num_vertices(); ++v)
    if (!types.emplace(h.incident(v), v).second) return false;
  return true;
}

Hypergraph dual(const Hypergraph& h) {
  if (!is_reduced(h)) fail(ErrorCode::Precondition, "dual requires a reduced hypergraph (no twin vertices, no duplicate edges)");
  std::vector<VSet> sets;
  for (int v = 0; v < h.num_vertices(); ++v) {
    VSet s(h.num_edges());
    for (int e : h.incident(v)) s.set(e);
    sets.push_back(std::move(s));
  }
  return Hypergraph::from_sets(h.edge_names(), h.vertex_names(), std::move(sets));
}

// ---------------------------------------------------------------------------
// Components and derived hypergraphs

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<VSet> components(const Hypergraph& h, const VSet& separator) {
  const int n = h.num_vertices();
  if (static_cast<int>(separator.size()) != n) fail(ErrorCode::InvalidArgument, "separator is not a vertex subset of H");
  DisjointSets ds(n);
  for (const auto& e : h.edges()) {
    int first = -1;
    for_each_member(e, [&](int v) {
      if (separator.test(v)) return;
      if (first < 0) first = v;
      else ds.unite(first, v);
    });
  }
  std::vector<VSet> out;
  std::vector<int> slot(n, -1);
  for (int v = 0; v < n; ++v) {
    if (separator.test(v)) continue;
    int r = ds.find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back(h.empty_set());
    }
    out[slot[r]].set(v);
  }
  return out;
}

VSet neighbourhood(const Hypergraph& h, const VSet& c) {
  VSet out = h.empty_set();
  std::vector<char> used(h.num_edges(), 0);
  for_each_member(c, [&](int v) {
    for (int e : h.incident(v))
      if (!used[e]) {
        used[e] = 1;
        out |= h.edge(e);
      }
  });
  return out;
}

std::string fresh_name(const std::string& base, const std::unordered_map<std::string, int>& taken) {
  if (!taken.count(base)) return base;
  for (int j = 2;; ++j) {
    std::string candidate = base + "#" + std::to_string(j);
    if (!taken.count(candidate)) return candidate;
  }
}

Hypergraph induced(const Hypergraph& h, const VSet& subset, bool dedup) {
  if (subset.none()) fail(ErrorCode::InvalidArgument, "induced subhypergraph needs a non-empty vertex set");
  std::vector<int> map(h.num_vertices(), -1);
  std::vector<std::string> vnames;
  for_each_member(subset, [&](int v) {
    map[v] = static_cast<int>(vnames.size());
    vnames.push_back(h.vertex_name(v));
  });
  std::unordered_map<std::string, int> taken;
  for (int e = 0; e < h.num_edges(); ++e) taken.emplace(h.edge_name(e), e);
  std::unordered_set<VSet, VSetHash> seen;
  std::vector<std::string> enames;
  std::vector<VSet> sets;
  for (int e = 0; e < h.num_edges(); ++e) {
    VSet part = h.edge(e) & subset;
    if (part.none()) continue;
    VSet s(vnames.size());
    for_each_member(part, [&](int v) { s.set(map[v]); });
    if (dedup && !seen.insert(s).second) continue;
    std::string name = h.edge_name(e);
    if (part != h.edge(e)) {
      name = fresh_name(name + "|V'", taken);
      taken.emplace(name, -1);
    }
    enames.push_back(name);
    sets.push_back(std::move(s));
  }
  return Hypergraph::from_sets(std::move(vnames), std::move(enames), std::move(sets));
}

Hypergraph intersection_closure(const Hypergraph& h) {
  std::vector<VSet> sets;
  std::vector<std::string> names;
  std::unordered_map<VSet, int, VSetHash> index;
  std::unordered_map<std::string, int> taken;
  for (int e = 0; e < h.num_edges(); ++e) {
    if (!index.emplace(h.edge(e), static_cast<int>(sets.size())).second) continue;
    sets.push_back(h.edge(e));
    names.push_back(h.edge_name(e));
    taken.emplace(h.edge_name(e), e);
  }
  int generated = 0;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      VSet s = sets[i] & sets[j];
      if (s.none() || index.count(s)) continue;
      std::string base = names[j] + "&" + names[i];
      if (base.size() > 48) base = "cap" + std::to_string(++generated);
      std::string name = fresh_name(base, taken);
      taken.emplace(name, static_cast<int>(sets.size()));
      index.emplace(s, static_cast<int>(sets.size()));
      sets.push_back(std::move(s));
      names.push_back(std::move(name));
    }
  }
  return Hypergraph::from_sets(h.vertex_names(), std::move(names), std::move(sets));
}

Hypergraph intersection_closure(const Hypergraph& h, int c, int i) {
  std::vector<int> witness;
  int w = multi_intersection_width(h, c, &witness);
  if (w > i) {
    std::string tuple;
    for (int e : witness) tuple += (tuple.empty() ? "" : ", ") + h.edge_name(e);
    fail(ErrorCode::Precondition, std::to_string(c) + "-miwidth is " + std::to_string(w) + " > " +
                                      std::to_string(i) + ", attained by edges (" + tuple + ")");
  }
  return intersection_closure(h);
}

Hypergraph add_unit_edges(const Hypergraph& h) {
  std::vector<std::string> names = h.edge_names();
  std::vector<VSet> sets = h.edges();
  std::unordered_map<std::string, int> taken;
  for (int e = 0; e < h.num_edges(); ++e) taken.emplace(h.edge_name(e), e);
  std::vector<char> has_unit(h.num_vertices(), 0);
  for (const auto& e : h.edges())
    if (e.count() == 1) has_unit[e.find_first()] = 1;
  for (int v = 0; v < h.num_vertices(); ++v) {
    if (has_unit[v]) continue;
    VSet s = h.empty_set();
    s.set(v);
    std::string name = fresh_name("unit_" + h.vertex_name(v), taken);
    taken.emplace(name, static_cast<int>(sets.size()));
    names.push_back(name);
    sets.push_back(std::move(s));
  }
  return Hypergraph::from_sets(h.vertex_names(), std::move(names), std::move(sets));
}

}  // namespace hgd
