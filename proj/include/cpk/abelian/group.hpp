#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cpk/abelian/lattice.hpp"
#include "cpk/abelian/smith.hpp"

namespace cpk {

/// Finitely generated abelian group Z^r + Z_{d1} + ... + Z_{dk} in invariant-factor
/// form: every d >= 2 and d1 | d2 | ... | dk. Generators are ordered free first,
/// then torsion in increasing order; all GroupHom matrices use that ordering.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  /// Accepts any cyclic decomposition: orders equal to 0 become free summands,
  /// orders equal to 1 are dropped, and the rest is brought to invariant-factor form.
  FgAbGroup(std::size_t free_rank, std::vector<Integer> cyclic_orders) : free_rank_(free_rank) {
    std::vector<Integer> d;
    for (auto& x : cyclic_orders) {
      if (x < 0) x = -x;
      if (x == 0)
        ++free_rank_;
      else if (x != 1)
        d.push_back(x);
    }
    if (d.empty()) return;
    auto snf = smith_invariants(IntMatrix::diagonal(d));
    for (auto& x : snf.diagonal())
      if (x != 1) torsion_.push_back(x);
  }

  static FgAbGroup free(std::size_t r) { return FgAbGroup(r, {}); }
  static FgAbGroup cyclic(const Integer& n) { return FgAbGroup(0, {n}); }
  static FgAbGroup trivial() { return FgAbGroup(); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t generator_count() const { return free_rank_ + torsion_.size(); }
  bool is_trivial() const { return generator_count() == 0; }
  bool is_free() const { return torsion_.empty(); }

  /// Order of the k-th generator: 0 for a free generator.
  Integer generator_order(std::size_t k) const {
    return k < free_rank_ ? Integer(0) : torsion_[k - free_rank_];
  }

  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
  }

  /// Diagonal relation matrix on the generators (0 for free ones).
  IntMatrix relations() const {
    IntMatrix r(generator_count(), generator_count());
    for (std::size_t k = free_rank_; k < generator_count(); ++k) r(k, k) = torsion_[k - free_rank_];
    return r;
  }

  /// Reduces a coordinate vector to canonical representatives (torsion entries in [0, d)).
  IntVector reduce(IntVector x) const {
    for (std::size_t k = free_rank_; k < generator_count(); ++k) {
      const Integer& d = torsion_[k - free_rank_];
      x[k] %= d;
      if (x[k] < 0) x[k] += d;
    }
    return x;
  }

  /// Cyclic decomposition re-normalized; identity on canonical values.
  FgAbGroup normalized() const { return FgAbGroup(free_rank_, torsion_); }

  FgAbGroup direct_sum(const FgAbGroup& other) const {
    auto t = torsion_;
    t.insert(t.end(), other.torsion_.begin(), other.torsion_.end());
    return FgAbGroup(free_rank_ + other.free_rank_, std::move(t));
  }

  /// Human-readable form, e.g. "Z^2 + Z_3", "0".
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_rank_ == 1) s = "Z";
    if (free_rank_ > 1) s = "Z^" + std::to_string(free_rank_);
    for (const auto& d : torsion_) {
      if (!s.empty()) s += " + ";
      s += "Z_" + d.str();
    }
    return s;
  }

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }
  friend bool operator<(const FgAbGroup& a, const FgAbGroup& b) {
    if (a.free_rank_ != b.free_rank_) return a.free_rank_ < b.free_rank_;
    if (a.torsion_.size() != b.torsion_.size()) return a.torsion_.size() < b.torsion_.size();
    return a.torsion_ < b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Z^rows / im(M), reading M as a map Z^cols -> Z^rows.
inline FgAbGroup cokernel(const IntMatrix& m) {
  auto snf = smith_invariants(m);
  std::vector<Integer> orders = snf.diagonal();
  orders.resize(snf.rank);
  return FgAbGroup(m.rows() - snf.rank, std::move(orders));
}

/// Homomorphism between canonical groups, carried by an integer matrix on the
/// generator tuples (cod.generator_count() x dom.generator_count()).
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FgAbGroup dom, FgAbGroup cod, IntMatrix matrix)
      : dom_(std::move(dom)), cod_(std::move(cod)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != cod_.generator_count() || matrix_.cols() != dom_.generator_count())
      throw MalformedInput("hom matrix is " + std::to_string(matrix_.rows()) + "x" +
                           std::to_string(matrix_.cols()) + " but generator counts are " +
                           std::to_string(cod_.generator_count()) + "x" + std::to_string(dom_.generator_count()));
  }

  static GroupHom identity(const FgAbGroup& g) { return {g, g, IntMatrix::identity(g.generator_count())}; }
  static GroupHom zero(const FgAbGroup& dom, const FgAbGroup& cod) {
    return {dom, cod, IntMatrix(cod.generator_count(), dom.generator_count())};
  }

  const FgAbGroup& dom() const { return dom_; }
  const FgAbGroup& cod() const { return cod_; }
  const IntMatrix& matrix() const { return matrix_; }

  /// Same map with torsion rows reduced to canonical representatives.
  GroupHom reduced() const {
    IntMatrix m = matrix_;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = cod_.reduce(m.column(j));
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = c[i];
    }
    return {dom_, cod_, std::move(m)};
  }

  IntVector apply(const IntVector& x) const { return cod_.reduce(matrix_.apply(x)); }

 private:
  FgAbGroup dom_, cod_;
  IntMatrix matrix_;
};

/// True iff every relation of dom maps into the relation lattice of cod.
inline bool hom_well_defined(const GroupHom& f) {
  if (f.matrix().rows() != f.cod().generator_count() || f.matrix().cols() != f.dom().generator_count())
    throw MalformedInput("hom matrix does not match generator counts");
  ColumnLattice cod_rel(f.cod().relations());
  for (std::size_t k = 0; k < f.dom().generator_count(); ++k) {
    Integer d = f.dom().generator_order(k);
    if (d == 0) continue;
    IntVector img = f.matrix().column(k);
    for (auto& x : img) x *= d;
    if (!cod_rel.contains(img)) return false;
  }
  return true;
}

/// g o f
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.cod() == g.dom())) throw MalformedInput("compose: codomain/domain mismatch");
  return GroupHom(f.dom(), g.cod(), g.matrix() * f.matrix()).reduced();
}

inline GroupHom operator-(const GroupHom& a, const GroupHom& b) {
  if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) throw MalformedInput("hom difference: endpoints differ");
  return GroupHom(a.dom(), a.cod(), a.matrix() - b.matrix()).reduced();
}

/// Equality as maps (matrices agree modulo the relations of cod).
inline bool hom_equal(const GroupHom& a, const GroupHom& b) {
  if (!(a.dom() == b.dom()) || !(a.cod() == b.cod())) return false;
  return a.reduced().matrix() == b.reduced().matrix();
}

/// 1 - f for an endomorphism.
inline GroupHom one_minus(const GroupHom& f) {
  if (!(f.dom() == f.cod())) throw MalformedInput("one_minus needs an endomorphism");
  return GroupHom::identity(f.dom()) - f;
}

}  // namespace cpk
