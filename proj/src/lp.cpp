#include "qpalg/lp.hpp"

#include <vector>

namespace qpalg {

namespace {

// Tableau layout: rows 0..m-1 are constraints, row m is the objective
// (reduced costs, we maximize), last column is the right-hand side.
struct Tableau {
  MatrixQ t;
  std::vector<Index> basis;

  Index rows() const { return t.rows() - 1; }
  Index vars() const { return t.cols() - 1; }

  void pivot(Index r, Index col) {
    const Rational inv = Rational(1) / t(r, col);
    t.row(r) *= inv;
    for (Index i = 0; i < t.rows(); ++i) {
      if (i == r || t(i, col) == 0) continue;
      const Rational f = t(i, col);
      t.row(i) -= f * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = col;
  }

  // Runs simplex iterations over the columns [0, usable). Returns false when unbounded.
  bool optimize(Index usable) {
    const Index m = rows();
    const Index rhs = vars();
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < usable; ++j)
        if (t(m, j) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Index leave = -1;
      Rational best;
      for (Index i = 0; i < m; ++i) {
        if (t(i, enter) <= 0) continue;
        const Rational ratio = t(i, rhs) / t(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

} // namespace

std::optional<VectorQ> lp_maximize(const MatrixQ& a, const VectorQ& b, const VectorQ& c) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (b.size() != m || c.size() != n) throw InputError("lp_maximize: dimension mismatch");

  Tableau tab;
  tab.t = MatrixQ::Zero(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const bool flip = b(i) < 0;
    for (Index j = 0; j < n; ++j) tab.t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    tab.t(i, n + i) = 1;
    tab.t(i, n + m) = flip ? Rational(-b(i)) : b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  // Phase 1: maximize -sum(artificials); express in terms of nonbasic columns.
  for (Index i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
  for (Index i = 0; i < m; ++i) tab.t(m, n + i) = 0;
  tab.optimize(n + m);
  if (tab.t(m, n + m) != 0) return std::nullopt;

  // Drive artificials out of the basis where possible.
  for (Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    for (Index j = 0; j < n; ++j)
      if (tab.t(i, j) != 0) {
        tab.pivot(i, j);
        break;
      }
  }

  // Phase 2 objective: reduced costs of -c.
  tab.t.row(m).setZero();
  for (Index j = 0; j < n; ++j) tab.t(m, j) = -c(j);
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n && tab.t(m, bj) != 0) {
      const Rational f = tab.t(m, bj);
      tab.t.row(m) -= f * tab.t.row(i);
    }
  }
  // Artificial columns stay out of phase 2; rows still holding an artificial are redundant.
  if (!tab.optimize(n)) throw Error("lp_maximize: objective is unbounded");

  VectorQ x = VectorQ::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n) x(bj) = tab.t(i, n + m);
  }
  return x;
}

std::optional<VectorQ> lp_feasible(const MatrixQ& a, const VectorQ& b) {
  return lp_maximize(a, b, VectorQ::Zero(a.cols()));
}

} // namespace qpalg
