#include "hgd/lp.hpp"

#include "hgd/error.hpp"

namespace hgd {

namespace {

// Dense tableau for max c^T x, A x <= b with b >= 0, so the slack basis is
// feasible from the start. Column layout: structural 0..n-1, slacks n..n+m-1,
// right-hand side last. Row m is the objective row holding reduced costs.
class Tableau {
 public:
  Tableau(int n, const std::vector<std::vector<int>>& rows)
      : n_(n), m_(static_cast<int>(rows.size())), width_(n + m_ + 1),
        cells_(static_cast<std::size_t>(m_ + 1) * width_), basis_(m_) {
    for (int r = 0; r < m_; ++r) {
      for (int j : rows[r]) {
        if (j < 0 || j >= n) fail(ErrorCode::Internal, "packing LP column out of range");
        at(r, j) = 1;
      }
      at(r, n_ + r) = 1;
      at(r, width_ - 1) = 1;
      basis_[r] = n_ + r;
    }
    for (int j = 0; j < n_; ++j) at(m_, j) = -1;
  }

  void solve() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < width_ - 1; ++j)
        if (sgn(at(m_, j)) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < m_; ++r) {
        if (sgn(at(r, enter)) <= 0) continue;
        Rational ratio = at(r, width_ - 1) / at(r, enter);
        if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) fail(ErrorCode::Internal, "packing LP reported unbounded");
      pivot(leave, enter);
    }
  }

  PackingSolution solution() const {
    PackingSolution s;
    s.value = at(m_, width_ - 1);
    s.x.assign(n_, Rational(0));
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_) s.x[basis_[r]] = at(r, width_ - 1);
    s.y.resize(m_);
    for (int r = 0; r < m_; ++r) s.y[r] = at(m_, n_ + r);
    return s;
  }

 private:
  Rational& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * width_ + c]; }
  const Rational& at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * width_ + c]; }

  void pivot(int pr, int pc) {
    Rational inv = 1 / at(pr, pc);
    std::vector<int> nonzero;
    for (int c = 0; c < width_; ++c) {
      if (sgn(at(pr, c)) == 0) continue;
      at(pr, c) *= inv;
      nonzero.push_back(c);
    }
    Rational factor;
    for (int r = 0; r <= m_; ++r) {
      if (r == pr || sgn(at(r, pc)) == 0) continue;
      factor = at(r, pc);
      for (int c : nonzero) at(r, c) -= factor * at(pr, c);
    }
    basis_[pr] = pc;
  }

  int n_, m_, width_;
  std::vector<Rational> cells_;
  std::vector<int> basis_;
};

}  // namespace

PackingSolution solve_packing(int num_cols, const std::vector<std::vector<int>>& rows) {
  Tableau t(num_cols, rows);
  t.solve();
  return t.solution();
}

}  // namespace hgd
