#include "hgd/decomposition.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace hgd {

std::string to_string(DecompKind kind) {
  switch (kind) {
    case DecompKind::TD: return "TD";
    case DecompKind::GHD: return "GHD";
    case DecompKind::FHD: return "FHD";
    case DecompKind::HD: return "HD";
  }
  return "TD";
}

DecompKind parse_kind(const std::string& text) {
  std::string up;
  for (char ch : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (up == "TD") return DecompKind::TD;
  if (up == "GHD") return DecompKind::GHD;
  if (up == "FHD") return DecompKind::FHD;
  if (up == "HD") return DecompKind::HD;
  fail(ErrorCode::InvalidArgument, "unknown decomposition kind '" + text + "' (expected TD, GHD, FHD or HD)");
}

int Decomposition::add_node(int parent, VSet bag, std::optional<EdgeWeighting> cover, std::string id) {
  const int idx = static_cast<int>(nodes.size());
  if (id.empty()) id = "n" + std::to_string(idx);
  nodes.push_back(DecompNode{std::move(id), std::move(bag), std::move(cover), parent, {}});
  if (parent < 0) {
    if (root >= 0) fail(ErrorCode::Internal, "decomposition already has a root");
    root = idx;
  } else {
    nodes[parent].children.push_back(idx);
  }
  return idx;
}

std::vector<int> Decomposition::preorder() const {
  std::vector<int> order;
  if (root < 0) return order;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    const auto& ch = nodes[u].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<VSet> Decomposition::subtree_vertices() const {
  std::vector<VSet> out(nodes.size());
  auto order = preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    out[u] = nodes[u].bag;
    for (int c : nodes[u].children) out[u] |= out[c];
  }
  return out;
}

int Decomposition::node_index(const std::string& id) const {
  for (int u = 0; u < static_cast<int>(nodes.size()); ++u)
    if (nodes[u].id == id) return u;
  return -1;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json decomposition_to_json(const Hypergraph& h, const Decomposition& d) {
  if (d.root < 0) fail(ErrorCode::InvalidArgument, "decomposition has no nodes");
  std::function<nlohmann::json(int)> node_json = [&](int u) {
    const auto& node = d.nodes[u];
    nlohmann::json j;
    j["id"] = node.id;
    j["bag"] = h.names_of(node.bag);
    if (node.cover && d.kind != DecompKind::TD) {
      nlohmann::json cover = nlohmann::json::object();
      for (int e = 0; e < h.num_edges(); ++e)
        if (sgn((*node.cover)[e]) != 0) cover[h.edge_name(e)] = to_string((*node.cover)[e]);
      j["cover"] = cover;
    }
    nlohmann::json children = nlohmann::json::array();
    for (int c : node.children) children.push_back(node_json(c));
    j["children"] = children;
    return j;
  };
  return nlohmann::json{{"kind", to_string(d.kind)}, {"root", node_json(d.root)}};
}

Decomposition decomposition_from_json(const Hypergraph& h, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("root")) fail(ErrorCode::Parse, "decomposition JSON needs a \"root\" object");
  Decomposition d;
  d.kind = j.contains("kind") ? parse_kind(j.at("kind").get<std::string>()) : DecompKind::TD;
  std::unordered_set<std::string> ids;
  std::function<void(const nlohmann::json&, int)> add = [&](const nlohmann::json& n, int parent) {
    if (!n.is_object()) fail(ErrorCode::Parse, "decomposition node must be a JSON object");
    std::string id = n.contains("id") ? n.at("id").get<std::string>() : "n" + std::to_string(d.nodes.size());
    if (!ids.insert(id).second) fail(ErrorCode::Parse, "duplicate node id '" + id + "'");
    VSet bag = h.empty_set();
    if (n.contains("bag")) {
      for (const auto& v : n.at("bag")) {
        int idx = h.vertex_index(v.get<std::string>());
        if (idx < 0) fail(ErrorCode::InvalidArgument, "node '" + id + "' refers to unknown vertex '" + v.get<std::string>() + "'");
        bag.set(idx);
      }
    }
    std::optional<EdgeWeighting> cover;
    if (n.contains("cover")) {
      cover = EdgeWeighting(h.num_edges(), Rational(0));
      for (const auto& [name, value] : n.at("cover").items()) {
        int e = h.edge_index(name);
        if (e < 0) fail(ErrorCode::InvalidArgument, "node '" + id + "' refers to unknown edge '" + name + "'");
        Rational w = value.is_string() ? parse_rational(value.get<std::string>())
                                       : parse_rational(value.dump());
        if (sgn(w) < 0 || w > 1)
          fail(ErrorCode::InvalidArgument, "node '" + id + "': weight of '" + name + "' outside [0,1]");
        (*cover)[e] = w;
      }
    }
    int u = d.add_node(parent, std::move(bag), std::move(cover), id);
    if (n.contains("children"))
      for (const auto& c : n.at("children")) add(c, u);
  };
  add(j.at("root"), -1);
  return d;
}

std::string serialize_decomposition(const Hypergraph& h, const Decomposition& d) {
  return decomposition_to_json(h, d).dump(2);
}

Decomposition parse_decomposition(const Hypergraph& h, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::Parse, std::string("malformed decomposition JSON: ") + ex.what());
  }
  try {
    return decomposition_from_json(h, j);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorCode::Parse, std::string("malformed decomposition JSON: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string name_list(const Hypergraph& h, const VSet& s) {
  std::string out;
  for (const auto& n : h.names_of(s)) out += (out.empty() ? "" : ",") + n;
  return "{" + out + "}";
}

void check_tree_conditions(const Hypergraph& h, const Decomposition& d, std::vector<std::string>& out) {
  for (int e = 0; e < h.num_edges(); ++e) {
    bool found = false;
    for (const auto& node : d.nodes)
      if (h.edge(e).is_subset_of(node.bag)) {
        found = true;
        break;
      }
    if (!found) out.push_back("edge " + h.edge_name(e) + " is not contained in any bag");
  }
  for (int v = 0; v < h.num_vertices(); ++v) {
    std::vector<std::string> tops;
    for (const auto& node : d.nodes)
      if (node.bag.test(v) && (node.parent < 0 || !d.nodes[node.parent].bag.test(v))) tops.push_back(node.id);
    if (tops.size() > 1) {
      std::string ids;
      for (const auto& t : tops) ids += (ids.empty() ? "" : ", ") + t;
      out.push_back("vertex " + h.vertex_name(v) + ": nodes containing it are not connected (separate subtrees rooted at " + ids + ")");
    }
  }
}

}  // namespace

ValidationReport validate(const Hypergraph& h, const Decomposition& d, const std::optional<Rational>& k,
                          WidthMode td_mode) {
  ValidationReport rep;
  rep.width = 0;
  if (d.root < 0 || d.nodes.empty()) {
    rep.valid = false;
    rep.violations.push_back("decomposition has no nodes");
    return rep;
  }
  for (const auto& node : d.nodes)
    if (static_cast<int>(node.bag.size()) != h.num_vertices())
      fail(ErrorCode::InvalidArgument, "node '" + node.id + "' bag does not belong to H");
  check_tree_conditions(h, d, rep.violations);

  CoverCache cache(h);
  for (const auto& node : d.nodes) {
    Rational w;
    if (d.kind == DecompKind::TD) {
      w = td_mode == WidthMode::Integral ? Rational(cache.rho(node.bag)) : cache.rho_star(node.bag);
    } else {
      if (!node.cover) {
        rep.violations.push_back("node " + node.id + ": missing edge cover");
        continue;
      }
      const EdgeWeighting& cover = *node.cover;
      if (static_cast<int>(cover.size()) != h.num_edges())
        fail(ErrorCode::InvalidArgument, "node '" + node.id + "' cover does not match the edge count");
      if (d.kind != DecompKind::FHD && !is_integral(cover))
        rep.violations.push_back("node " + node.id + ": cover is not integral");
      VSet covered = covered_set(h, cover);
      VSet missing = node.bag - covered;
      if (missing.any())
        rep.violations.push_back("node " + node.id + ": bag vertices " + name_list(h, missing) + " not covered");
      w = weight_of(cover);
    }
    if (w > rep.width) rep.width = w;
    if (k && w > *k)
      rep.violations.push_back("node " + node.id + ": width " + to_string(w) + " exceeds " + to_string(*k));
  }

  if (d.kind == DecompKind::HD) {
    auto sub = d.subtree_vertices();
    for (int u = 0; u < static_cast<int>(d.nodes.size()); ++u) {
      if (!d.nodes[u].cover) continue;
      VSet bad = (sub[u] & covered_set(h, *d.nodes[u].cover)) - d.nodes[u].bag;
      if (bad.any())
        rep.violations.push_back("node " + d.nodes[u].id + ": special condition fails for " + name_list(h, bad));
    }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

CompnfReport check_compnf(const Hypergraph& h, const Decomposition& d) {
  std::vector<std::string> problems;
  if (d.root < 0) fail(ErrorCode::Precondition, "decomposition has no nodes");
  check_tree_conditions(h, d, problems);
  if (!problems.empty()) fail(ErrorCode::Precondition, "not a tree decomposition: " + problems.front());
  CompnfReport rep;
  auto sub = d.subtree_vertices();
  for (int r = 0; r < static_cast<int>(d.nodes.size()); ++r) {
    const auto& br = d.nodes[r].bag;
    std::vector<VSet> comps;
    bool have_comps = false;
    for (int s : d.nodes[r].children) {
      VSet shared = br & d.nodes[s].bag;
      VSet outside = sub[s] - br;
      bool ok;
      if (outside.none()) {
        ok = sub[s] == shared;
      } else {
        if (!have_comps) {
          comps = components(h, br);
          have_comps = true;
        }
        const auto v = outside.find_first();
        const VSet* comp = nullptr;
        for (const auto& c : comps)
          if (c.test(v)) comp = &c;
        ok = comp && sub[s] == (*comp | shared);
      }
      if (!ok)
        rep.violations.push_back("child " + d.nodes[s].id + " of node " + d.nodes[r].id +
                                 ": subtree vertices are not one [parent bag]-component plus the shared bag part");
    }
  }
  rep.compnf = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

// Mutable tree used while rewriting; dead nodes are dropped on compaction.
struct WorkTree {
  std::vector<DecompNode> nodes;
  std::vector<char> alive;
  int root;

  explicit WorkTree(const Decomposition& d) : nodes(d.nodes), alive(d.nodes.size(), 1), root(d.root) {}

  std::vector<int> preorder() const {
    std::vector<int> order, stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      const auto& ch = nodes[u].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return order;
  }

  std::vector<int> subtree(int s) const {
    std::vector<int> out, stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      out.push_back(u);
      const auto& ch = nodes[u].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  Decomposition compact(DecompKind kind) const {
    Decomposition d;
    d.kind = kind;
    std::function<void(int, int)> copy = [&](int u, int parent) {
      int idx = d.add_node(parent, nodes[u].bag, nodes[u].cover, nodes[u].id);
      for (int c : nodes[u].children) copy(c, idx);
    };
    copy(root, -1);
    return d;
  }
};

bool maximize_bags(const Hypergraph& h, WorkTree& t) {
  bool any = false, changed = true;
  while (changed) {
    changed = false;
    for (int u : t.preorder()) {
      auto& node = t.nodes[u];
      VSet extra = covered_set(h, *node.cover) - node.bag;
      for_each_member(extra, [&](int v) {
        bool neighbour = node.parent >= 0 && t.nodes[node.parent].bag.test(v);
        for (int c : node.children) neighbour = neighbour || t.nodes[c].bag.test(v);
        if (neighbour) {
          node.bag.set(v);
          changed = any = true;
        }
      });
    }
  }
  return any;
}

bool merge_equal_children(WorkTree& t) {
  for (int u : t.preorder()) {
    auto& children = t.nodes[u].children;
    for (std::size_t pos = 0; pos < children.size(); ++pos) {
      int s = children[pos];
      if (t.nodes[s].bag != t.nodes[u].bag) continue;
      std::vector<int> grand = t.nodes[s].children;
      for (int g : grand) t.nodes[g].parent = u;
      children.erase(children.begin() + pos);
      children.insert(children.begin() + pos, grand.begin(), grand.end());
      t.alive[s] = 0;
      return true;
    }
  }
  return false;
}

std::string unique_id(const std::unordered_set<std::string>& taken, const std::string& base) {
  if (!taken.count(base)) return base;
  for (int j = 2;; ++j) {
    std::string id = base + "#" + std::to_string(j);
    if (!taken.count(id)) return id;
  }
}

bool repair_one(const Hypergraph& h, WorkTree& t) {
  for (int r : t.preorder()) {
    const VSet br = t.nodes[r].bag;
    std::vector<VSet> comps;
    bool have = false;
    const std::vector<int> children = t.nodes[r].children;
    for (std::size_t pos = 0; pos < children.size(); ++pos) {
      const int s = children[pos];
      std::vector<int> sub = t.subtree(s);
      VSet vs = h.empty_set();
      for (int n : sub) vs |= t.nodes[n].bag;
      VSet outside = vs - br;
      if (outside.none()) continue;
      if (!have) {
        comps = components(h, br);
        have = true;
      }
      std::vector<const VSet*> touched;
      for (const auto& c : comps)
        if (c.intersects(outside)) touched.push_back(&c);
      if (touched.size() == 1 && vs == (*touched[0] | (br & t.nodes[s].bag))) continue;

      std::unordered_set<std::string> ids;
      for (std::size_t n = 0; n < t.nodes.size(); ++n)
        if (t.alive[n]) ids.insert(t.nodes[n].id);
      std::vector<int> new_roots;
      for (std::size_t j = 0; j < touched.size(); ++j) {
        const VSet keep = *touched[j] | br;
        std::unordered_map<int, int> copy_of;
        for (int n : sub) {  // preorder, so parents are copied first
          if (!t.nodes[n].bag.intersects(*touched[j])) continue;
          DecompNode node;
          node.id = unique_id(ids, t.nodes[n].id + "/" + std::to_string(j + 1));
          ids.insert(node.id);
          node.bag = t.nodes[n].bag & keep;
          node.cover = t.nodes[n].cover;
          auto it = copy_of.find(t.nodes[n].parent);
          node.parent = it == copy_of.end() ? r : it->second;
          const int idx = static_cast<int>(t.nodes.size());
          t.nodes.push_back(std::move(node));
          t.alive.push_back(1);
          copy_of[n] = idx;
          if (it == copy_of.end()) new_roots.push_back(idx);
          else t.nodes[it->second].children.push_back(idx);
        }
      }
      for (int n : sub) t.alive[n] = 0;
      auto& ch = t.nodes[r].children;
      ch.erase(ch.begin() + pos);
      ch.insert(ch.begin() + pos, new_roots.begin(), new_roots.end());
      return true;
    }
  }
  return false;
}

}  // namespace

Decomposition normalize_ghd(const Hypergraph& h, const Decomposition& g) {
  if (g.kind != DecompKind::GHD && g.kind != DecompKind::HD)
    fail(ErrorCode::InvalidArgument, "normalize-ghd expects a GHD");
  ValidationReport rep = validate(h, g, std::nullopt);
  if (!rep.valid) fail(ErrorCode::Precondition, "input is not a valid GHD: " + rep.violations.front());
  WorkTree t(g);
  const int guard = 100000;
  for (int round = 0;; ++round) {
    if (round == guard) fail(ErrorCode::Internal, "normalization did not converge");
    bool changed = maximize_bags(h, t);
    while (merge_equal_children(t)) changed = true;
    if (repair_one(h, t)) changed = true;
    if (!changed) break;
  }
  return t.compact(DecompKind::GHD);
}

std::vector<int> critical_path(const Hypergraph& h, const Decomposition& g, int u, int e) {
  if (u < 0 || u >= static_cast<int>(g.nodes.size())) fail(ErrorCode::InvalidArgument, "unknown node");
  if (e < 0 || e >= h.num_edges()) fail(ErrorCode::InvalidArgument, "unknown edge");
  const auto& node = g.nodes[u];
  if (!node.cover || sgn((*node.cover)[e]) == 0)
    fail(ErrorCode::Precondition, "edge " + h.edge_name(e) + " is not in the cover of node " + node.id);
  if (h.edge(e).is_subset_of(node.bag))
    fail(ErrorCode::Precondition, "edge " + h.edge_name(e) + " is already inside the bag of node " + node.id);
  std::vector<int> prev(g.nodes.size(), -2);
  std::deque<int> queue{u};
  prev[u] = -1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (h.edge(e).is_subset_of(g.nodes[x].bag)) {
      std::vector<int> path;
      for (int y = x; y >= 0; y = prev[y]) path.push_back(y);
      std::reverse(path.begin(), path.end());
      return path;
    }
    std::vector<int> next = g.nodes[x].children;
    if (g.nodes[x].parent >= 0) next.insert(next.begin(), g.nodes[x].parent);
    for (int y : next)
      if (prev[y] == -2) {
        prev[y] = x;
        queue.push_back(y);
      }
  }
  fail(ErrorCode::Precondition, "no node covers edge " + h.edge_name(e));
}

}  // namespace hgd
