#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "hgd/error.hpp"
#include "hgd/hypergraph.hpp"
#include "hgd/rational.hpp"

namespace hgd::testing {

inline Hypergraph hg(const std::string& text) { return parse_hypergraph(text); }

// Edges as sorted vertex-name lists, ignoring edge names and order.
inline std::set<std::vector<std::string>> edge_sets(const Hypergraph& h) {
  std::set<std::vector<std::string>> out;
  for (const auto& e : h.edges()) {
    auto names = h.names_of(e);
    std::sort(names.begin(), names.end());
    out.insert(names);
  }
  return out;
}

inline std::vector<std::string> sorted_names(const Hypergraph& h, const VSet& s) {
  auto names = h.names_of(s);
  std::sort(names.begin(), names.end());
  return names;
}

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Internal;
}

template <class F>
std::string error_message_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

}  // namespace hgd::testing
