// Hand-checked values for the brute-force references themselves.

#include "helpers.hpp"

#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace hgd;
using namespace hgd::testing;

TEST_CASE("reference covers and metrics") {
  Hypergraph k4 = clique(4);
  CHECK(oracle::min_edge_cover(k4, k4.all_vertices()) == 2);
  CHECK(oracle::min_edge_cover(k4, k4.make_set({"k1"})) == 1);
  Hypergraph tri = triangle();
  CHECK(oracle::multi_intersection_width(tri, 2) == 1);
  CHECK(oracle::multi_intersection_width(tri, 3) == 0);
  CHECK(oracle::vc_dimension(hg("e1(a),e2(b),e3(a,b),e4(c).")) == 2);
  CHECK(oracle::vc_dimension(hg("e(a,b,c).")) == 0);
  CHECK(oracle::intersection_closure(tri).size() == 6);
}

TEST_CASE("reference components") {
  Hypergraph path = hg("e1(a,b),e2(b,c),e3(c,d).");
  auto comps = oracle::components(path, path.make_set({"c"}));
  REQUIRE(comps.size() == 2);
  CHECK(oracle::boundary(path, path.make_set({"a"})) == path.make_set({"b"}));
}

TEST_CASE("reference decomposition existence") {
  Hypergraph path = hg("e1(a,b),e2(b,c).");
  CHECK(oracle::compnf_ctd_exists(path, {path.all_vertices()}));
  CHECK(oracle::compnf_ctd_exists(path, {path.make_set({"a", "b"}), path.make_set({"b", "c"})}));
  CHECK_FALSE(oracle::compnf_ctd_exists(path, {path.make_set({"a", "b"})}));
  CHECK_FALSE(oracle::compnf_ctd_exists(path, {}));
  CHECK(oracle::ghw(triangle()) == 2);
  CHECK(oracle::fhw(triangle()) == Rational(3, 2));
  CHECK(oracle::ghw(path) == 1);
  CHECK(oracle::fhw(clique(4)) == 2);
}

TEST_CASE("reference combinatorics") {
  Hypergraph a = hg("e1(a,b),e2(b,c).");
  CHECK(oracle::isomorphic(a, hg("f(x,y),g(z,x).")));
  CHECK_FALSE(oracle::isomorphic(a, hg("f(x,y),g(z,w).")));
  Hypergraph h = hg("e(1,2,3),f(2,4),g(3,5).");
  CHECK(sorted_names(h, oracle::intersection_of_unions(h, 0, {{1, 2}})) == std::vector<std::string>{"2", "3"});
  CHECK(oracle::distinct_tuple_product_sum({1, 2, 3}, 2) == 22);
  CHECK(oracle::distinct_tuple_product_sum({1, 2}, 3) == 0);
  std::vector<bool> model;
  CHECK(oracle::satisfiable(2, {{1, 2}, {-1}}, &model));
  CHECK(model[2]);
  CHECK_FALSE(oracle::satisfiable(1, {{1}, {-1}}));
}
