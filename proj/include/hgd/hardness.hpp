#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgd/decomposition.hpp"
#include "hgd/hypergraph.hpp"
#include "hgd/rational.hpp"

namespace hgd {

struct Literal {
  int var = 1;  // 1-based
  bool positive = true;
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;
};

// DIMACS CNF; every clause must have exactly three literals.
CnfFormula parse_dimacs(const std::string& text);
std::string serialize_dimacs(const CnfFormula& phi);

// Assignment JSON of the form {"x1": true, "x2": false, ...}; index 0 unused.
std::vector<bool> parse_assignment(const CnfFormula& phi, const std::string& json_text);
bool satisfies(const CnfFormula& phi, const std::vector<bool>& sigma);

// The gadget over fresh a1,a2,b1,b2,c1,c2,d1,d2 with the attachment sets M1, M2.
Hypergraph build_gadget(const std::vector<std::string>& m1, const std::vector<std::string>& m2);

using Position = std::pair<int, int>;

struct ReductionLayout {
  int n = 0, m = 0;
  std::vector<Position> q;          // Q in lexicographic order, special positions included
  std::vector<Position> positions;  // [2n+3; m] in lexicographic order
  std::map<std::string, std::vector<std::string>> families;  // edge family -> edge names
  std::vector<std::string> restricted;  // gadget vertices other than a1 and a'1, both copies

  static std::string s_name(Position p, int k);
  static std::string a_name(Position p);
  static std::string ap_name(Position p);
  static std::string pos_name(Position p);
};

struct Reduction {
  Hypergraph hypergraph;
  ReductionLayout layout;
};

Reduction reduce_3sat(const CnfFormula& phi);

int expected_vertex_count(int n, int m);
int expected_edge_count(int n, int m);

struct IntendedGhd {
  Decomposition ghd;
  std::vector<std::string> z;     // names of Z in vertex order
  std::vector<int> chosen_literal;  // per clause, 1-based literal index
};

// The path-shaped width-2 GHD built from a satisfying assignment.
IntendedGhd intended_ghd(const Reduction& red, const CnfFormula& phi, const std::vector<bool>& sigma);

// Integer shift l adds a clique on 2l fresh vertices; a non-integer r/q adds r
// fresh vertices with the r cyclic q-element edges. Every fresh vertex is
// joined to every old vertex by a binary edge.
Hypergraph lift_width(const Hypergraph& h, const Rational& shift);

}  // namespace hgd
