#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cpk/abelian/int_matrix.hpp"

namespace cpk {

/// U * M * V = S with U, V unimodular and S diagonal in Smith form.
/// The inverses of U and V are carried along because kernels, cokernel lifts
/// and lattice membership all need them.
template <class Int>
struct BasicSnfResult {
  BasicIntMatrix<Int> U, S, V;
  BasicIntMatrix<Int> U_inv, V_inv;
  std::size_t rank = 0;

  /// Diagonal of S, length min(rows, cols).
  std::vector<Int> diagonal() const {
    std::vector<Int> d(std::min(S.rows(), S.cols()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
    return d;
  }
};

using SnfResult = BasicSnfResult<Integer>;

namespace detail {

template <class Int>
Int abs_value(const Int& x) {
  return x < 0 ? Int(-x) : x;
}

// Tracks the four transform matrices alongside the working matrix.
template <class Int>
class SnfWorker {
 public:
  SnfWorker(BasicIntMatrix<Int> m, bool track) : a_(std::move(m)), track_(track) {
    if (track_) {
      u_ = BasicIntMatrix<Int>::identity(a_.rows());
      u_inv_ = u_;
      v_ = BasicIntMatrix<Int>::identity(a_.cols());
      v_inv_ = v_;
    }
  }

  BasicSnfResult<Int> run() {
    const std::size_t r = a_.rows(), c = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(r, c); ++t) {
      auto pivot = min_abs_entry(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      reduce_pivot(t);
      if (a_(t, t) < 0) negate_row(t);
    }
    BasicSnfResult<Int> res;
    res.rank = t;
    res.S = std::move(a_);
    if (track_) {
      res.U = std::move(u_);
      res.U_inv = std::move(u_inv_);
      res.V = std::move(v_);
      res.V_inv = std::move(v_inv_);
    }
    return res;
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        Int v = abs_value(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  void reduce_pivot(std::size_t t) {
    const std::size_t r = a_.rows(), c = a_.cols();
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a_(i, t) == 0) continue;
        Int q = a_(i, t) / a_(t, t);
        if (q != 0) add_row_multiple(i, t, -q);
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a_(t, j) == 0) continue;
        Int q = a_(t, j) / a_(t, t);
        if (q != 0) add_col_multiple(j, t, -q);
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        Int best = abs_value(a_(t, t));
        for (std::size_t i = t + 1; i < r; ++i)
          if (a_(i, t) != 0 && abs_value(a_(i, t)) < best) best = abs_value(a_(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (a_(t, j) != 0 && abs_value(a_(t, j)) < best) best = abs_value(a_(t, j)), bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility chain: the pivot must divide the remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a_(i, j) % a_(t, t) != 0) {
            add_row_multiple(t, i, Int(1));
            fixed = true;
            break;
          }
      if (!fixed) return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_rows(a, b);
    if (track_) u_.swap_rows(a, b), u_inv_.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_cols(a, b);
    if (track_) v_.swap_cols(a, b), v_inv_.swap_rows(a, b);
  }
  // row[dst] += q row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
    a_.add_row_multiple(dst, src, q);
    if (track_) u_.add_row_multiple(dst, src, q), u_inv_.add_col_multiple(src, dst, Int(-q));
  }
  // col[dst] += q col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
    a_.add_col_multiple(dst, src, q);
    if (track_) v_.add_col_multiple(dst, src, q), v_inv_.add_row_multiple(src, dst, Int(-q));
  }
  void negate_row(std::size_t i) {
    a_.negate_row(i);
    if (track_) u_.negate_row(i), u_inv_.negate_col(i);
  }

  BasicIntMatrix<Int> a_;
  bool track_;
  BasicIntMatrix<Int> u_, u_inv_, v_, v_inv_;
};

}  // namespace detail

/// Smith normal form with unimodular transforms. Pivoting always takes the
/// nonzero entry of least absolute value, which keeps coefficient growth low.
template <class Int>
BasicSnfResult<Int> smith_normal_form(const BasicIntMatrix<Int>& m) {
  return detail::SnfWorker<Int>(m, true).run();
}

/// Smith form without the transforms (S and rank only).
template <class Int>
BasicSnfResult<Int> smith_invariants(const BasicIntMatrix<Int>& m) {
  return detail::SnfWorker<Int>(m, false).run();
}

template <class Int>
std::size_t rank(const BasicIntMatrix<Int>& m) {
  return smith_invariants(m).rank;
}

/// Columns form a basis of ker(M) in Z^cols.
template <class Int>
BasicIntMatrix<Int> kernel_basis(const BasicIntMatrix<Int>& m) {
  auto snf = smith_normal_form(m);
  return snf.V.column_range(snf.rank, m.cols() - snf.rank);
}

/// Free rank and nontrivial invariant factors of Z^rows / im(M).
template <class Int>
std::pair<std::size_t, std::vector<Int>> cokernel_invariants(const BasicIntMatrix<Int>& m) {
  auto snf = smith_invariants(m);
  std::vector<Int> torsion;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.S(i, i) != 1) torsion.push_back(snf.S(i, i));
  return {m.rows() - snf.rank, std::move(torsion)};
}

/// Checks the structural invariants of an SNF result against its input.
template <class Int>
bool snf_invariants_hold(const BasicIntMatrix<Int>& m, const BasicSnfResult<Int>& r) {
  if (!(r.U * m * r.V == r.S)) return false;
  if (!(r.U * r.U_inv == BasicIntMatrix<Int>::identity(m.rows()))) return false;
  if (!(r.V * r.V_inv == BasicIntMatrix<Int>::identity(m.cols()))) return false;
  for (std::size_t i = 0; i < r.S.rows(); ++i)
    for (std::size_t j = 0; j < r.S.cols(); ++j)
      if (i != j && r.S(i, j) != 0) return false;
  auto d = r.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i < r.rank && d[i] == 0) return false;
    if (i >= r.rank && d[i] != 0) return false;
    if (i + 1 < r.rank && d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

}  // namespace cpk
