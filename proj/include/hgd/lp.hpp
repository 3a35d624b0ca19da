#pragma once

#include <vector>

#include "hgd/rational.hpp"

namespace hgd {

// Solution of the 0/1 packing LP
//   maximize  sum_j x_j
//   subject to sum_{j in rows[r]} x_j <= 1 for every row r,  x >= 0.
// y holds the optimal dual values, one per row; y is a basic optimal
// solution of the covering LP  min sum_r y_r  s.t.  sum_{r : j in rows[r]} y_r >= 1.
struct PackingSolution {
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> y;
};

// Exact primal simplex with Bland's rule. Every column must occur in some row.
PackingSolution solve_packing(int num_cols, const std::vector<std::vector<int>>& rows);

}  // namespace hgd
