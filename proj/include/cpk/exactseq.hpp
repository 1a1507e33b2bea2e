#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpk/abelian.hpp"

namespace cpk {

inline constexpr std::size_t kDefaultExtensionBound = 4096;

/// Cyclic sequence G_0 -> G_1 -> ... -> G_{n-1} -> G_0. arrows[i] runs from
/// nodes[i] to nodes[(i + 1) % n]; either may be left unknown.
struct ExactSequence {
  std::vector<std::optional<FgAbGroup>> nodes;
  std::vector<std::optional<GroupHom>> arrows;

  ExactSequence() = default;
  explicit ExactSequence(std::size_t length) : nodes(length), arrows(length) {}

  std::size_t size() const { return nodes.size(); }
  std::size_t next(std::size_t i) const { return (i + 1) % size(); }
  std::size_t prev(std::size_t i) const { return (i + size() - 1) % size(); }

  /// Throws MalformedInput on odd length or on arrows whose endpoints disagree with known nodes.
  void check_shape() const {
    if (nodes.size() != arrows.size()) throw MalformedInput("sequence needs one arrow per node");
    if (nodes.empty() || nodes.size() % 2 != 0) throw MalformedInput("sequence length must be even and positive");
    for (std::size_t i = 0; i < size(); ++i) {
      if (!arrows[i]) continue;
      if (nodes[i] && !(arrows[i]->dom() == *nodes[i]))
        throw MalformedInput("arrow " + std::to_string(i) + " domain " + arrows[i]->dom().to_string() +
                             " does not match node " + std::to_string(i) + " = " + nodes[i]->to_string());
      if (nodes[next(i)] && !(arrows[i]->cod() == *nodes[next(i)]))
        throw MalformedInput("arrow " + std::to_string(i) + " codomain " + arrows[i]->cod().to_string() +
                             " does not match node " + std::to_string(next(i)) + " = " +
                             nodes[next(i)]->to_string());
    }
  }

  /// Same sequence with node k moved to position (k + shift) mod n.
  ExactSequence rotated(std::size_t shift) const {
    ExactSequence r(size());
    for (std::size_t i = 0; i < size(); ++i) {
      r.nodes[(i + shift) % size()] = nodes[i];
      r.arrows[(i + shift) % size()] = arrows[i];
    }
    return r;
  }
};

struct NodeExactness {
  std::size_t node = 0;
  bool exact = true;
  std::string detail;
  /// Generator-coordinate vector in the node that lies in one subgroup but not the other.
  std::optional<IntVector> witness;
};

/// Checks im(incoming) = ker(outgoing) at every node.
inline std::vector<NodeExactness> verify_exact(const ExactSequence& seq) {
  seq.check_shape();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq.nodes[i]) throw MalformedInput("verify_exact: node " + std::to_string(i) + " is unknown");
    if (!seq.arrows[i]) throw MalformedInput("verify_exact: arrow " + std::to_string(i) + " is unknown");
    if (!hom_well_defined(*seq.arrows[i]))
      throw MalformedInput("verify_exact: arrow " + std::to_string(i) + " is not well defined");
  }
  std::vector<NodeExactness> out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const GroupHom& in = *seq.arrows[seq.prev(i)];
    const GroupHom& outgoing = *seq.arrows[i];
    NodeExactness rep;
    rep.node = i;
    IntMatrix image_gens = in.matrix().hcat(seq.nodes[i]->relations());
    ColumnLattice image(image_gens);
    IntMatrix kernel_gens = hom_kernel_lattice(outgoing);
    ColumnLattice kernel(kernel_gens);
    for (std::size_t j = 0; j < image_gens.cols() && rep.exact; ++j)
      if (!kernel.contains(image_gens.column(j))) {
        rep.exact = false;
        rep.detail = "image element is not killed by the outgoing map";
        rep.witness = image_gens.column(j);
      }
    for (std::size_t j = 0; j < kernel_gens.cols() && rep.exact; ++j)
      if (!image.contains(kernel_gens.column(j))) {
        rep.exact = false;
        rep.detail = "kernel element is not in the image of the incoming map";
        rep.witness = kernel_gens.column(j);
      }
    if (rep.exact) rep.detail = "exact";
    out.push_back(std::move(rep));
  }
  return out;
}

inline bool all_exact(const std::vector<NodeExactness>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const NodeExactness& r) { return r.exact; });
}

/// Iso-classes G with a subgroup isomorphic to N and G/N isomorphic to Q, listed in
/// ascending canonical order. Classes of Ext(Q, N) are enumerated directly: a lift t_j
/// of the j-th torsion generator of Q (order b_j) satisfies b_j t_j = n_j with n_j
/// ranging over N / b_j N.
inline std::vector<FgAbGroup> extension_candidates(const FgAbGroup& n, const FgAbGroup& q,
                                                   std::size_t bound = kDefaultExtensionBound) {
  const Integer order = n.torsion_order() * q.torsion_order();
  if (order > bound)
    throw ResourceError("extension enumeration: torsion order " + order.str() + " exceeds the bound " +
                        std::to_string(bound) + "; raise CPK_EXT_BOUND to allow it");

  const std::size_t gn = n.generator_count(), gq = q.generator_count();
  const std::size_t g = gn + gq;

  // Per torsion generator of Q: the ranges of each N-coordinate of n_j.
  std::vector<std::vector<Integer>> ranges;
  Integer classes = 1;
  for (std::size_t j = q.free_rank(); j < gq; ++j) {
    const Integer b = q.generator_order(j);
    std::vector<Integer> r(gn);
    for (std::size_t i = 0; i < gn; ++i) {
      const Integer a = n.generator_order(i);
      r[i] = a == 0 ? b : Integer(gcd(a, b));
      classes *= r[i];
    }
    ranges.push_back(std::move(r));
  }
  if (classes > bound)
    throw ResourceError("extension enumeration: " + classes.str() + " extension classes exceed the bound " +
                        std::to_string(bound) + "; raise CPK_EXT_BOUND to allow it");

  std::set<FgAbGroup> found;
  std::vector<std::vector<Integer>> choice(ranges.size());
  for (std::size_t j = 0; j < ranges.size(); ++j) choice[j].assign(gn, 0);

  for (;;) {
    IntMatrix rel(g, g);
    for (std::size_t i = 0; i < gn; ++i) rel(i, i) = n.generator_order(i);
    for (std::size_t j = 0; j < ranges.size(); ++j) {
      const std::size_t col = gn + q.free_rank() + j;
      rel(col, col) = q.generator_order(q.free_rank() + j);
      for (std::size_t i = 0; i < gn; ++i) rel(i, col) = -choice[j][i];
    }
    found.insert(cokernel(rel));

    // Odometer over all choices.
    std::size_t j = 0, i = 0;
    bool advanced = false;
    for (j = 0; j < ranges.size() && !advanced; ++j)
      for (i = 0; i < gn; ++i) {
        if (++choice[j][i] < ranges[j][i]) {
          advanced = true;
          break;
        }
        choice[j][i] = 0;
      }
    if (!advanced) break;
  }
  return {found.begin(), found.end()};
}

enum class SolveStatus { Determined, AmbiguousExtension, Underdetermined };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Determined: return "Determined";
    case SolveStatus::AmbiguousExtension: return "AmbiguousExtension";
    case SolveStatus::Underdetermined: return "Underdetermined";
  }
  return "?";
}

/// 0 -> sub -> G -> quotient -> 0 at one unknown node.
struct ExtensionCertificate {
  std::size_t node = 0;
  FgAbGroup sub;
  FgAbGroup quotient;
  std::vector<FgAbGroup> candidates;
  std::optional<FgAbGroup> group;
  bool assumed_split = false;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Underdetermined;
  std::vector<ExtensionCertificate> certificate;
  std::string explanation;

  bool assumed_split() const {
    return std::any_of(certificate.begin(), certificate.end(),
                       [](const ExtensionCertificate& c) { return c.assumed_split; });
  }
  /// Resolved group at a node, if it was determined.
  std::optional<FgAbGroup> group_at(std::size_t node) const {
    for (const auto& c : certificate)
      if (c.node == node) return c.group;
    return std::nullopt;
  }
};

struct SolveOptions {
  bool assume_split = false;
  std::size_t extension_bound = kDefaultExtensionBound;
};

namespace detail {

inline std::optional<std::string> six_term_layout_error(const ExactSequence& seq, std::size_t& first) {
  if (seq.size() != 6) return "solver handles six-term sequences only";
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < 6; ++i)
    if (!seq.nodes[i]) unknown.push_back(i);
  if (unknown.size() != 2 || unknown[1] != unknown[0] + 3)
    return "expected exactly two unknown nodes three positions apart";
  first = unknown[0];
  for (std::size_t u : unknown) {
    if (!seq.arrows[(u + 1) % 6])
      return "arrow out of the node after unknown " + std::to_string(u) + " is unknown";
  }
  return std::nullopt;
}

}  // namespace detail

/// Solves for the two unknown nodes of a six-term sequence. Unknown node u is the
/// extension of ker(arrow u+1) by coker(arrow u-2).
inline SolveOutcome solve_six_term(const ExactSequence& seq, const SolveOptions& opts = {}) {
  seq.check_shape();
  SolveOutcome out;
  std::size_t first = 0;
  if (auto err = detail::six_term_layout_error(seq, first)) {
    out.explanation = *err;
    return out;
  }
  bool ambiguous = false;
  for (std::size_t u : {first, first + 3}) {
    const GroupHom& before = *seq.arrows[(u + 4) % 6];
    const GroupHom& after = *seq.arrows[(u + 1) % 6];
    ExtensionCertificate cert;
    cert.node = u;
    cert.sub = hom_cokernel(before).group();
    cert.quotient = hom_kernel(after).group();
    cert.candidates = extension_candidates(cert.sub, cert.quotient, opts.extension_bound);
    if (cert.candidates.size() == 1) {
      cert.group = cert.candidates.front();
    } else if (opts.assume_split) {
      cert.group = cert.sub.direct_sum(cert.quotient);
      cert.assumed_split = true;
    } else {
      ambiguous = true;
    }
    out.certificate.push_back(std::move(cert));
  }
  out.status = ambiguous ? SolveStatus::AmbiguousExtension : SolveStatus::Determined;
  out.explanation = ambiguous ? "extension problem has several non-isomorphic solutions"
                              : (out.assumed_split() ? "split extension assumed" : "unique extension class");
  return out;
}

/// Fills both unknown nodes of a six-term sequence with the split extension N + Q and
/// the canonical inclusion/projection maps, ready for verify_exact.
inline ExactSequence split_completion(const ExactSequence& seq) {
  std::size_t first = 0;
  if (auto err = detail::six_term_layout_error(seq, first)) throw PreconditionError("split_completion: " + *err);
  ExactSequence full = seq;
  for (std::size_t u : {first, first + 3}) {
    const std::size_t in_node = (u + 5) % 6, out_node = (u + 1) % 6;
    const Subquotient coker = hom_cokernel(*seq.arrows[(u + 4) % 6]);
    const Subquotient ker = hom_kernel(*seq.arrows[out_node]);
    const std::size_t gn = coker.group().generator_count(), gq = ker.group().generator_count();
    IntMatrix rel = coker.group().relations().vcat(IntMatrix(gq, gn))
                        .hcat(IntMatrix(gn, gq).vcat(ker.group().relations()));
    const Subquotient g = Subquotient::quotient_of(gn + gq, rel);

    const FgAbGroup& left = *seq.nodes[in_node];
    IntMatrix into(g.group().generator_count(), left.generator_count());
    for (std::size_t j = 0; j < left.generator_count(); ++j) {
      IntVector e(left.generator_count());
      e[j] = 1;
      IntVector combined(gn + gq);
      auto c = coker.coordinates(e);
      std::copy(c.begin(), c.end(), combined.begin());
      auto img = g.coordinates(combined);
      for (std::size_t i = 0; i < img.size(); ++i) into(i, j) = img[i];
    }

    const FgAbGroup& right = *seq.nodes[out_node];
    IntMatrix onto(right.generator_count(), g.group().generator_count());
    for (std::size_t k = 0; k < g.group().generator_count(); ++k) {
      IntVector lift = g.lifts().column(k);
      IntVector qpart(lift.begin() + static_cast<std::ptrdiff_t>(gn), lift.end());
      IntVector img = right.reduce(ker.lifts().apply(qpart));
      for (std::size_t i = 0; i < img.size(); ++i) onto(i, k) = img[i];
    }

    full.nodes[u] = g.group();
    full.arrows[in_node] = GroupHom(left, g.group(), std::move(into));
    full.arrows[u] = GroupHom(g.group(), right, std::move(onto));
  }
  return full;
}

}  // namespace cpk
