#pragma once

#include <complex>
#include <cmath>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "cpk/model/graph.hpp"

namespace cpk {

/// K-groups of a coefficient algebra together with the class [E] of one bimodule
/// acting on each degree.
struct AbstractBimodule {
  FgAbGroup k0, k1;
  GroupHom action_k0, action_k1;
};

/// K-data of a coefficient algebra and the classes of two commuting bimodules.
struct AbstractKData {
  FgAbGroup k0, k1;
  GroupHom action1_k0, action1_k1;
  GroupHom action2_k0, action2_k1;

  AbstractBimodule layer(int i) const {
    return i == 1 ? AbstractBimodule{k0, k1, action1_k0, action1_k1} : AbstractBimodule{k0, k1, action2_k0, action2_k1};
  }
  AbstractKData swapped() const { return {k0, k1, action2_k0, action2_k1, action1_k0, action1_k1}; }
};

/// Endpoints and well-definedness of all four maps, and commutation in both degrees.
inline ValidationReport validate_kdata(const AbstractKData& d) {
  ValidationReport rep;
  struct Named {
    const char* name;
    const GroupHom* f;
    const FgAbGroup* g;
  };
  for (auto [name, f, g] : {Named{"action1.K0", &d.action1_k0, &d.k0}, Named{"action1.K1", &d.action1_k1, &d.k1},
                            Named{"action2.K0", &d.action2_k0, &d.k0}, Named{"action2.K1", &d.action2_k1, &d.k1}}) {
    if (!(f->dom() == *g) || !(f->cod() == *g)) {
      rep.violations.push_back(std::string(name) + " is not an endomorphism of " + g->to_string());
      continue;
    }
    if (!hom_well_defined(*f)) rep.violations.push_back(std::string(name) + " is not well defined on " + g->to_string());
  }
  if (!rep.ok()) return rep;
  if (!hom_equal(compose(d.action1_k0, d.action2_k0), compose(d.action2_k0, d.action1_k0)))
    rep.violations.push_back("actions do not commute on K0");
  if (!hom_equal(compose(d.action1_k1, d.action2_k1), compose(d.action2_k1, d.action1_k1)))
    rep.violations.push_back("actions do not commute on K1");
  return rep;
}

/// Any bimodule the K-theory pipeline accepts.
using BimoduleModel = std::variant<FiniteGraph, AbstractBimodule>;

/// Linear chi on C^m (x) C^n for single-vertex layers. Row and column index i*n + j
/// both refer to the pair (e_i, f_j): column i*n+j is e_i (x) f_j, row k*n+l is
/// f_l (x) e_k. The identity matrix is therefore the flip.
struct UnitaryChi {
  std::size_t m = 0, n = 0;
  Eigen::MatrixXcd matrix;

  bool is_unitary(double tol = 1e-12) const {
    if (matrix.rows() != static_cast<Eigen::Index>(m * n) || matrix.cols() != matrix.rows()) return false;
    Eigen::MatrixXcd d = matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
  }
};

/// The 4x4 rotation family on C^2 (x) C^2: a rotation by alpha on the first two
/// coordinates and by beta on the last two.
inline UnitaryChi rotation_chi(double alpha, double beta) {
  UnitaryChi u;
  u.m = u.n = 2;
  u.matrix = Eigen::MatrixXcd::Zero(4, 4);
  u.matrix(0, 0) = std::cos(alpha);
  u.matrix(0, 1) = -std::sin(alpha);
  u.matrix(1, 0) = std::sin(alpha);
  u.matrix(1, 1) = std::cos(alpha);
  u.matrix(2, 2) = std::cos(beta);
  u.matrix(2, 3) = -std::sin(beta);
  u.matrix(3, 2) = std::sin(beta);
  u.matrix(3, 3) = std::cos(beta);
  return u;
}

}  // namespace cpk
