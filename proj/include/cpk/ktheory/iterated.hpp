#pragma once

#include <algorithm>
#include <optional>

#include "cpk/ktheory/pimsner.hpp"

namespace cpk {

namespace detail {

inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  return a.hcat(IntMatrix(a.rows(), b.cols())).vcat(IntMatrix(b.rows(), a.cols()).hcat(b));
}

struct SummedAction {
  FgAbGroup group;
  GroupHom action;
};

// fa (+) fb moved onto the canonical form of dom(fa) (+) dom(fb).
inline SummedAction block_sum(const GroupHom& fa, const GroupHom& fb) {
  const std::size_t ga = fa.dom().generator_count(), gb = fb.dom().generator_count();
  auto sq = Subquotient::quotient_of(ga + gb, block_diagonal(fa.dom().relations(), fb.dom().relations()));
  return {sq.group(), sq.induced(block_diagonal(fa.matrix(), fb.matrix()), sq)};
}

}  // namespace detail

/// Outcome of one order of the iterated computation.
struct OrderResult {
  KPair stage1;
  KPair final_pair;
  std::optional<PimsnerProblem> stage2;
};

/// Stage 1 for the bimodule with classes p1, then the second bimodule (classes b0, b1 on
/// the coefficient K-groups) pushed down to K(O_{E1}) and a second Pimsner step.
inline OrderResult iterate_once(const PimsnerProblem& p1, const GroupHom& b0, const GroupHom& b1,
                                const SolveOptions& opts) {
  OrderResult r;
  r.stage1 = cuntz_pimsner_ktheory(p1, opts);

  const GroupHom x0 = one_minus(p1.class0), x1 = one_minus(p1.class1);
  const Subquotient n0 = hom_cokernel(x0), q0 = hom_kernel(x1);
  const Subquotient n1 = hom_cokernel(x1), q1 = hom_kernel(x0);

  if (r.stage1.status != SolveStatus::Determined) {
    r.final_pair.k0 = {};
    r.final_pair.k1 = {};
    r.final_pair.status = SolveStatus::Underdetermined;
    r.final_pair.notes.push_back("stage 1 is not determined; the second stage needs a chosen extension (try --assume-split)");
    return r;
  }

  auto k0 = detail::block_sum(n0.induced(b0.matrix(), n0), q0.induced(b1.matrix(), q0));
  auto k1 = detail::block_sum(n1.induced(b1.matrix(), n1), q1.induced(b0.matrix(), q1));
  std::vector<std::string> notes;
  if (!n0.group().is_trivial() && !q0.group().is_trivial())
    notes.push_back("K0 of stage 1 has both extension parts nonzero; the second action is taken block-diagonal");
  if (!n1.group().is_trivial() && !q1.group().is_trivial())
    notes.push_back("K1 of stage 1 has both extension parts nonzero; the second action is taken block-diagonal");

  r.stage2 = PimsnerProblem{k0.group, k1.group, k0.action, k1.action};
  r.final_pair = cuntz_pimsner_ktheory(*r.stage2, opts);
  r.final_pair.assumed_split = r.final_pair.assumed_split || r.stage1.assumed_split;
  r.final_pair.notes.insert(r.final_pair.notes.end(), notes.begin(), notes.end());
  return r;
}

struct IteratedResult {
  OrderResult first;   // E1 then E2
  OrderResult second;  // E2 then E1
  KPair final_pair;
};

namespace detail {

inline std::vector<FgAbGroup> options_of(const KGroup& g) {
  if (g.group) return {*g.group};
  return g.candidates;
}

inline KGroup merge_orders(const KGroup& a, const KGroup& b, const char* degree, std::vector<std::string>& notes) {
  if (a.group && b.group) {
    if (!(*a.group == *b.group))
      throw InternalError(std::string("iterated orders disagree on ") + degree + ": " + a.group->to_string() + " vs " +
                          b.group->to_string());
    return a;
  }
  auto oa = options_of(a), ob = options_of(b);
  if (oa.empty()) return b;
  if (ob.empty()) return a;
  std::vector<FgAbGroup> both;
  std::set_intersection(oa.begin(), oa.end(), ob.begin(), ob.end(), std::back_inserter(both));
  if (both.empty())
    throw InternalError(std::string("iterated orders have no common candidate for ") + degree);
  KGroup out;
  out.candidates = both;
  if (both.size() == 1) {
    out.group = both.front();
    notes.push_back(std::string(degree) + " resolved by intersecting the candidates of both orders");
  }
  return out;
}

}  // namespace detail

inline KPair merge_orders(const KPair& a, const KPair& b) {
  KPair out;
  out.k0 = detail::merge_orders(a.k0, b.k0, "K0", out.notes);
  out.k1 = detail::merge_orders(a.k1, b.k1, "K1", out.notes);
  out.assumed_split = a.assumed_split || b.assumed_split;
  out.certificate = a.certificate;
  for (const auto* p : {&a, &b})
    for (const auto& n : p->notes)
      if (std::find(out.notes.begin(), out.notes.end(), n) == out.notes.end()) out.notes.push_back(n);
  out.refresh_status();
  return out;
}

inline TwoGraphSpec swapped(const TwoGraphSpec& s) {
  TwoGraphSpec t;
  t.vertices = s.vertices;
  t.edges1 = s.edges2;
  t.edges2 = s.edges1;
  for (const auto& c : s.chi) t.chi.push_back({c.f2, c.f1, c.e1, c.e2});
  return t;
}

/// Both orders of the two-stage computation for a graph two-graph.
inline IteratedResult iterated_ktheory(const TwoGraphSpec& spec, const SolveOptions& opts = {}) {
  auto rep = validate_two_graph(spec, true);
  if (!rep.ok()) throw PreconditionError("two-graph is not valid: " + rep.violations.front());
  const FiniteGraph g1 = spec.layer1(), g2 = spec.layer2();
  const FgAbGroup z = FgAbGroup::free(spec.vertices.size()), o = FgAbGroup::trivial();
  const GroupHom m1t(z, z, vertex_matrix(g1).transpose()), m2t(z, z, vertex_matrix(g2).transpose());
  IteratedResult r;
  r.first = iterate_once(pimsner_class_maps(g1), m2t, GroupHom::identity(o), opts);
  r.second = iterate_once(pimsner_class_maps(g2), m1t, GroupHom::identity(o), opts);
  r.final_pair = merge_orders(r.first.final_pair, r.second.final_pair);
  return r;
}

inline IteratedResult iterated_ktheory(const AbstractKData& d, const SolveOptions& opts = {}) {
  auto rep = validate_kdata(d);
  if (!rep.ok()) throw PreconditionError("abstract K-data is not valid: " + rep.violations.front());
  IteratedResult r;
  r.first = iterate_once(pimsner_class_maps(d.layer(1)), d.action2_k0, d.action2_k1, opts);
  r.second = iterate_once(pimsner_class_maps(d.layer(2)), d.action1_k0, d.action1_k1, opts);
  r.final_pair = merge_orders(r.first.final_pair, r.second.final_pair);
  return r;
}

}  // namespace cpk
