#pragma once

#include <optional>

#include "cpk/abelian/smith.hpp"

namespace cpk {

/// Sublattice of Z^n spanned by the columns of a generator matrix, with the
/// Smith decomposition cached for repeated membership and coefficient queries.
class ColumnLattice {
 public:
  explicit ColumnLattice(IntMatrix generators) : gens_(std::move(generators)), snf_(smith_normal_form(gens_)) {
    basis_ = IntMatrix(gens_.rows(), snf_.rank);
    for (std::size_t k = 0; k < snf_.rank; ++k)
      for (std::size_t i = 0; i < gens_.rows(); ++i) basis_(i, k) = snf_.U_inv(i, k) * snf_.S(k, k);
  }

  std::size_t ambient_dim() const { return gens_.rows(); }
  std::size_t rank() const { return snf_.rank; }
  const IntMatrix& generators() const { return gens_; }

  /// A basis of the lattice (independent columns).
  const IntMatrix& basis() const { return basis_; }

  /// Some x with generators * x = v, if v lies in the lattice.
  std::optional<IntVector> solve(const IntVector& v) const {
    if (v.size() != gens_.rows()) throw MalformedInput("lattice query has wrong dimension");
    IntVector y = snf_.U.apply(v);
    IntVector z(gens_.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < snf_.rank) {
        if (y[i] % snf_.S(i, i) != 0) return std::nullopt;
        z[i] = y[i] / snf_.S(i, i);
      } else if (y[i] != 0) {
        return std::nullopt;
      }
    }
    return snf_.V.apply(z);
  }

  bool contains(const IntVector& v) const { return solve(v).has_value(); }

  bool contains_all(const IntMatrix& m) const {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!contains(m.column(j))) return false;
    return true;
  }

 private:
  IntMatrix gens_;
  SnfResult snf_;
  IntMatrix basis_;
};

/// Basis of the lattice spanned by the columns of `gens`.
inline IntMatrix lattice_basis(const IntMatrix& gens) { return ColumnLattice(gens).basis(); }

}  // namespace cpk
