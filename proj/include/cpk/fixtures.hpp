#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "cpk/io.hpp"

namespace cpk {

struct Fixture {
  std::string id;
  std::string description;
  SpecDocument document;
};

namespace detail {

inline std::vector<std::string> shifted(std::size_t n, std::size_t by) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string((i + by) % n));
  return out;
}

inline std::vector<std::string> numbered(std::size_t n) { return shifted(n, 0); }

inline AbstractKData times_p(long long p1, long long p2) {
  const auto z = FgAbGroup::free(1);
  return {z, z, GroupHom(z, z, IntMatrix{{p1}}), GroupHom::identity(z), GroupHom(z, z, IntMatrix{{p2}}),
          GroupHom::identity(z)};
}

}  // namespace detail

/// Bundled desk-scale documents, in a fixed order.
inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> f;
    f.push_back({"ex1.2.1-toeplitz-circle", "one vertex, one loop: O_E = C(T)", {rose(1)}});
    f.push_back({"ex1.2.1-cuntz-O3", "one vertex, three loops: O_3", {rose(3)}});
    {
      FiniteGraph g{{"v", "w"}, {}};
      for (const auto& v : g.vertices)
        for (int k = 1; k <= 3; ++k) g.edges.push_back({v + std::to_string(k), v, v});
      f.push_back({"ex1.2.2-C2-tensor-O3", "E = A^3 over A = C^2: two vertices with three loops each", {g}});
    }
    f.push_back({"ex1.2.3-swap-crossed-product", "swap automorphism of C^2: C^2 x Z",
                 {PermutationDoc{{"v", "w"}, {"w", "v"}, std::nullopt}}});
    f.push_back({"ex1.2.4-golden-mean", "golden mean graph v->v, v->w, w->v",
                 {FiniteGraph{{"v", "w"}, {{"a", "v", "v"}, {"b", "v", "w"}, {"c", "w", "v"}}}}});
    f.push_back({"ex2.2-pullback-rose2-cover2", "pull-back of the 2-rose along the trivial 2-fold cover",
                 {pullback_graph(rose(2), {"x", "y"}, {{"x", "v"}, {"y", "v"}})}});
    f.push_back({"ex3.4-commuting-swaps", "two swaps of C^2 acting as Z^2",
                 {PermutationDoc{{"v", "w"}, {"w", "v"}, std::vector<std::string>{"w", "v"}}}});
    f.push_back({"ex3.4-cycle-2x3", "Z_2 x Z_3 acting on 6 points by translation",
                 {PermutationDoc{detail::numbered(6), detail::shifted(6, 3), detail::shifted(6, 2)}}});
    f.push_back({"ex3.5-flip-2-2", "E = F = C^2 with the flip chi_1", {flip_two_graph(2, 2)}});
    {
      auto s = single_vertex_two_graph(2, 2);
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
          s.chi.push_back({"e" + std::to_string(i), "f" + std::to_string(j), "f" + std::to_string(i),
                           "e" + std::to_string(j)});
      f.push_back({"ex3.5-chi2-2-2", "E = F = C^2 with chi_2(e_i f_j) = f_i e_j", {s}});
    }
    f.push_back({"ex3.5-unitary-chi", "rotation chi with alpha = pi/4, beta = 0 (Fock checks only)",
                 {rotation_chi(std::numbers::pi / 4, 0)}});
    f.push_back({"ex4.5-commuting-perms-4", "4-cycle and its square on 4 points",
                 {PermutationDoc{detail::numbered(4), detail::shifted(4, 1), detail::shifted(4, 2)}}});
    f.push_back({"ex4.5-perm-orbits", "two swaps and the identity on 4 points: two torus orbits",
                 {PermutationDoc{detail::numbered(4), {"v1", "v0", "v3", "v2"}, detail::numbered(4)}}});
    for (auto [m, n] : {std::pair{2, 2}, {2, 3}, {3, 3}, {3, 5}})
      f.push_back({"ex4.6-flip-" + std::to_string(m) + "-" + std::to_string(n),
                   "flip two-graph with " + std::to_string(m) + " and " + std::to_string(n) + " loops: O_" +
                       std::to_string(m) + " (x) O_" + std::to_string(n),
                   {flip_two_graph(m, n)}});
    f.push_back({"ex4.7-abstract-p2-p3", "abstract K-data on (Z, Z): [E1] = x2, [E2] = x3 on K0, identity on K1",
                 {detail::times_p(2, 3)}});
    {
      const auto z2 = FgAbGroup::cyclic(2);
      const auto id = GroupHom::identity(z2);
      f.push_back({"ext-ambiguous-z2", "abstract K-data (Z_2, Z_2) with identity actions: stage 1 is an unresolved extension",
                   {AbstractKData{z2, z2, id, id, id, id}}});
    }
    return f;
  }();
  return all;
}

inline const Fixture& fixture(const std::string& id) {
  for (const auto& f : fixtures())
    if (f.id == id) return f;
  throw MalformedInput("unknown fixture '" + id + "' (see `cpk examples`)");
}

}  // namespace cpk
