#pragma once

#include <numeric>
#include <variant>

#include "cpk/ktheory/kpair.hpp"
#include "cpk/model.hpp"

namespace cpk {

/// K-theory of the coefficient algebra and the class [E] on each degree.
struct PimsnerProblem {
  FgAbGroup k0, k1;
  GroupHom class0, class1;
};

inline void require_strict(const FiniteGraph& g) {
  auto rep = validate_graph(g, true);
  if (!rep.ok()) throw PreconditionError("graph fails strict validation: " + rep.violations.front());
}

/// Functions on a finite vertex set have K-theory (Z^V, 0); abstract data passes through.
inline KPair coefficient_ktheory(const BimoduleModel& model) {
  if (auto g = std::get_if<FiniteGraph>(&model)) {
    validate_graph(*g, false);
    return KPair::known(FgAbGroup::free(g->vertices.size()), FgAbGroup::trivial());
  }
  const auto& a = std::get<AbstractBimodule>(model);
  return KPair::known(a.k0, a.k1);
}

/// [E] on K0(C^V) = Z^V is the transpose of the vertex matrix; K1 vanishes.
inline PimsnerProblem pimsner_class_maps(const BimoduleModel& model) {
  if (auto g = std::get_if<FiniteGraph>(&model)) {
    require_strict(*g);
    auto z = FgAbGroup::free(g->vertices.size());
    return {z, FgAbGroup::trivial(), GroupHom(z, z, vertex_matrix(*g).transpose()),
            GroupHom::identity(FgAbGroup::trivial())};
  }
  const auto& a = std::get<AbstractBimodule>(model);
  for (const GroupHom* f : {&a.action_k0, &a.action_k1})
    if (!hom_well_defined(*f)) throw PreconditionError("class map is not well defined on " + f->dom().to_string());
  if (!(a.action_k0.dom() == a.k0) || !(a.action_k0.cod() == a.k0) || !(a.action_k1.dom() == a.k1) ||
      !(a.action_k1.cod() == a.k1))
    throw MalformedInput("class maps must be endomorphisms of the coefficient K-groups");
  return {a.k0, a.k1, a.action_k0, a.action_k1};
}

/// K0(A) -(1-[E])-> K0(A) -> K0(O_E) -> K1(A) -(1-[E])-> K1(A) -> K1(O_E) -> K0(A).
inline ExactSequence pimsner_sequence(const PimsnerProblem& p) {
  ExactSequence s(6);
  s.nodes[0] = s.nodes[1] = p.k0;
  s.nodes[3] = s.nodes[4] = p.k1;
  s.arrows[0] = one_minus(p.class0);
  s.arrows[3] = one_minus(p.class1);
  return s;
}

inline KPair kpair_from_outcome(const SolveOutcome& o, std::size_t node0, std::size_t node1) {
  KPair p;
  for (const auto& c : o.certificate) {
    KGroup g{c.group, c.candidates};
    if (c.node == node0) p.k0 = g;
    if (c.node == node1) p.k1 = g;
  }
  p.certificate = o.certificate;
  p.assumed_split = o.assumed_split();
  p.refresh_status();
  if (p.status == SolveStatus::Underdetermined && !o.explanation.empty()) p.notes.push_back(o.explanation);
  return p;
}

inline KPair cuntz_pimsner_ktheory(const PimsnerProblem& p, const SolveOptions& opts = {}) {
  return kpair_from_outcome(solve_six_term(pimsner_sequence(p), opts), 2, 5);
}

/// K(O_m (x) O_n) from the Kuenneth formula: Z_{m-1} (x) Z_{n-1} and Tor(Z_{m-1}, Z_{n-1}),
/// both cyclic of order gcd(m-1, n-1).
inline KPair kunneth_flip_oracle(long long m, long long n) {
  if (m < 2 || n < 2) throw PreconditionError("kunneth_flip_oracle needs m, n >= 2");
  const long long g = std::gcd(m - 1, n - 1);
  return KPair::known(FgAbGroup::cyclic(g), FgAbGroup::cyclic(g));
}

}  // namespace cpk
