#pragma once

#include <string>
#include <vector>

#include "cpk/abelian/group.hpp"
#include "cpk/abelian/lattice.hpp"

namespace cpk {

/// A group L/N presented inside Z^n by generators of the lattices N ⊆ L.
/// Keeps explicit generator lifts so that endomorphisms of Z^n preserving both
/// lattices can be pushed down to the quotient.
class Subquotient {
 public:
  Subquotient(const IntMatrix& numerator, const IntMatrix& denominator)
      : numerator_(numerator),
        denominator_(conform(denominator, numerator.rows())),
        basis_lattice_(numerator_.basis()) {
    IntMatrix coeffs(numerator_.rank(), denominator_.generators().cols());
    for (std::size_t j = 0; j < denominator_.generators().cols(); ++j) {
      auto c = numerator_basis_lattice().solve(denominator_.generators().column(j));
      if (!c) throw PreconditionError("subquotient: denominator generator " + std::to_string(j) + " not in numerator");
      for (std::size_t i = 0; i < c->size(); ++i) coeffs(i, j) = (*c)[i];
    }
    rel_snf_ = smith_normal_form(coeffs);
    const std::size_t l = numerator_.rank();
    std::vector<Integer> torsion;
    for (std::size_t i = rel_snf_.rank; i < l; ++i) kept_.push_back(i);
    for (std::size_t i = 0; i < rel_snf_.rank; ++i)
      if (rel_snf_.S(i, i) != 1) {
        kept_.push_back(i);
        torsion.push_back(rel_snf_.S(i, i));
      }
    group_ = FgAbGroup(l - rel_snf_.rank, torsion);
    lifts_ = IntMatrix(ambient_dim(), kept_.size());
    const IntMatrix lb = numerator_.basis() * rel_snf_.U_inv;
    for (std::size_t k = 0; k < kept_.size(); ++k)
      for (std::size_t i = 0; i < ambient_dim(); ++i) lifts_(i, k) = lb(i, kept_[k]);
  }

  /// Quotient Z^n / im(gens).
  static Subquotient quotient_of(std::size_t n, const IntMatrix& gens) {
    return Subquotient(IntMatrix::identity(n), gens);
  }
  /// Lattice spanned by gens, with nothing divided out.
  static Subquotient sublattice(const IntMatrix& gens) { return Subquotient(gens, IntMatrix(gens.rows(), 0)); }

  std::size_t ambient_dim() const { return numerator_.ambient_dim(); }
  const FgAbGroup& group() const { return group_; }
  /// Ambient lift of each canonical generator (one column per generator).
  const IntMatrix& lifts() const { return lifts_; }
  const ColumnLattice& numerator() const { return numerator_; }
  const ColumnLattice& denominator() const { return denominator_; }

  bool in_numerator(const IntVector& x) const { return numerator_.contains(x); }

  /// Canonical coordinates of the class of x; x must lie in the numerator.
  IntVector coordinates(const IntVector& x) const {
    auto c = numerator_basis_lattice().solve(x);
    if (!c) throw PreconditionError("vector is not in the numerator lattice");
    IntVector y = rel_snf_.U.apply(*c);
    IntVector out(kept_.size());
    for (std::size_t k = 0; k < kept_.size(); ++k) out[k] = y[kept_[k]];
    return group_.reduce(std::move(out));
  }

  /// Class of x is zero.
  bool is_zero_class(const IntVector& x) const {
    auto c = coordinates(x);
    for (const auto& v : c)
      if (v != 0) return false;
    return true;
  }

  /// Map L/N -> L'/N' induced by B : Z^n -> Z^{n'}. Throws if B does not carry
  /// the numerator into the target numerator and the denominator into the target denominator.
  GroupHom induced(const IntMatrix& b, const Subquotient& target) const {
    if (b.cols() != ambient_dim() || b.rows() != target.ambient_dim())
      throw MalformedInput("induced map: matrix shape does not match ambient dimensions");
    for (std::size_t j = 0; j < denominator_.generators().cols(); ++j) {
      IntVector img = b.apply(denominator_.generators().column(j));
      if (!target.in_numerator(img) || !target.is_zero_class(img))
        throw PreconditionError("induced map: relation " + std::to_string(j) + " is not sent to a relation");
    }
    IntMatrix m(target.group().generator_count(), group_.generator_count());
    for (std::size_t k = 0; k < group_.generator_count(); ++k) {
      IntVector img = b.apply(lifts_.column(k));
      if (!target.in_numerator(img))
        throw PreconditionError("induced map: generator " + std::to_string(k) + " leaves the numerator lattice");
      auto c = target.coordinates(img);
      for (std::size_t i = 0; i < c.size(); ++i) m(i, k) = c[i];
    }
    // Numerator generators beyond the lifts must land in the target numerator as well.
    for (std::size_t j = 0; j < numerator_.basis().cols(); ++j)
      if (!target.in_numerator(b.apply(numerator_.basis().column(j))))
        throw PreconditionError("induced map: numerator is not preserved");
    return GroupHom(group_, target.group(), std::move(m));
  }

 private:
  // Coefficients are solved against the numerator basis (full column rank), so they are unique.
  const ColumnLattice& numerator_basis_lattice() const { return basis_lattice_; }

  static IntMatrix conform(const IntMatrix& d, std::size_t n) {
    if (d.cols() == 0) return IntMatrix(n, 0);
    if (d.rows() != n) throw MalformedInput("subquotient: ambient dimensions differ");
    return d;
  }

  ColumnLattice numerator_;
  ColumnLattice denominator_;
  ColumnLattice basis_lattice_;
  SnfResult rel_snf_;
  std::vector<std::size_t> kept_;
  FgAbGroup group_;
  IntMatrix lifts_;
};

/// Cokernel of a hom as a subquotient of the codomain's generator space.
inline Subquotient hom_cokernel(const GroupHom& f) {
  return Subquotient::quotient_of(f.cod().generator_count(), f.matrix().hcat(f.cod().relations()));
}

/// Generators (columns) of {x in Z^g : F x lies in the relation lattice of cod}.
inline IntMatrix hom_kernel_lattice(const GroupHom& f) {
  const std::size_t g = f.dom().generator_count();
  IntMatrix joint = f.matrix().hcat(-f.cod().relations());
  IntMatrix k = kernel_basis(joint);
  std::vector<std::size_t> top(g);
  for (std::size_t i = 0; i < g; ++i) top[i] = i;
  return k.select_rows(top);
}

/// Kernel of a hom as a subquotient of the domain's generator space.
inline Subquotient hom_kernel(const GroupHom& f) {
  return Subquotient(hom_kernel_lattice(f), f.dom().relations());
}

namespace detail {

inline void require_commuting(const IntMatrix& b, const IntMatrix& m) {
  if (b.rows() != b.cols() || m.rows() != m.cols() || b.rows() != m.rows())
    throw MalformedInput("induced map needs square matrices of equal size");
  IntMatrix bm = b * m, mb = m * b;
  for (std::size_t i = 0; i < bm.rows(); ++i)
    for (std::size_t j = 0; j < bm.cols(); ++j)
      if (bm(i, j) != mb(i, j))
        throw PreconditionError("B*M != M*B at entry (" + std::to_string(i) + "," + std::to_string(j) +
                                "): " + bm(i, j).str() + " vs " + mb(i, j).str());
}

}  // namespace detail

/// Endomorphism of coker(M) induced by B, assuming B*M = M*B.
inline GroupHom induced_on_cokernel(const IntMatrix& b, const IntMatrix& m) {
  detail::require_commuting(b, m);
  auto q = Subquotient::quotient_of(m.rows(), m);
  return q.induced(b, q);
}

/// Restriction of B to ker(M), in kernel-basis coordinates, assuming B*M = M*B.
inline GroupHom induced_on_kernel(const IntMatrix& b, const IntMatrix& m) {
  detail::require_commuting(b, m);
  auto k = Subquotient::sublattice(kernel_basis(m));
  return k.induced(b, k);
}

}  // namespace cpk
