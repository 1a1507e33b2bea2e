#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpk/model/graph.hpp"

namespace cpk {

/// One factorization e1 e2 = f2 f1: blue-then-red pair to red-then-blue pair.
struct ChiPair {
  std::string e1, e2;  // composable: rng(e1) = src(e2)
  std::string f2, f1;  // composable: rng(f2) = src(f1)
  bool operator==(const ChiPair&) const = default;
};

/// Two edge layers over common vertices plus the factorization bijection chi.
struct TwoGraphSpec {
  std::vector<std::string> vertices;
  std::vector<Edge> edges1;
  std::vector<Edge> edges2;
  std::vector<ChiPair> chi;

  FiniteGraph layer1() const { return {vertices, edges1}; }
  FiniteGraph layer2() const { return {vertices, edges2}; }
  bool operator==(const TwoGraphSpec&) const = default;
};

/// chi in edge-position form: (i1, i2) -> (j2, j1) and back.
struct ChiIndex {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> forward;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> backward;
};

namespace detail {

inline std::map<std::string, std::size_t> edge_positions(const std::vector<Edge>& edges) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < edges.size(); ++i) m[edges[i].id] = i;
  return m;
}

inline std::size_t edge_in_layer(const std::map<std::string, std::size_t>& pos, const std::string& id, int layer,
                                 std::size_t entry) {
  auto it = pos.find(id);
  if (it == pos.end())
    throw MalformedInput("chi entry " + std::to_string(entry) + ": '" + id + "' is not an edge of layer " +
                         std::to_string(layer));
  return it->second;
}

}  // namespace detail

/// Position form of chi. Throws MalformedInput on ids that are missing or in the wrong layer.
inline ChiIndex chi_index(const TwoGraphSpec& s) {
  auto p1 = detail::edge_positions(s.edges1), p2 = detail::edge_positions(s.edges2);
  ChiIndex idx;
  for (std::size_t k = 0; k < s.chi.size(); ++k) {
    const auto& c = s.chi[k];
    std::pair<std::size_t, std::size_t> dom{detail::edge_in_layer(p1, c.e1, 1, k), detail::edge_in_layer(p2, c.e2, 2, k)};
    std::pair<std::size_t, std::size_t> img{detail::edge_in_layer(p2, c.f2, 2, k), detail::edge_in_layer(p1, c.f1, 1, k)};
    idx.forward.emplace(dom, img);
    idx.backward.emplace(img, dom);
  }
  return idx;
}

/// Bijectivity, composability and endpoint preservation of chi, then M1 M2 = M2 M1.
/// Violations name the chi entry or matrix entry at fault.
inline ValidationReport validate_chi(const TwoGraphSpec& s) {
  validate_graph(s.layer1(), false);
  validate_graph(s.layer2(), false);
  for (const auto& e : s.edges1)
    for (const auto& f : s.edges2)
      if (e.id == f.id) throw MalformedInput("edge id '" + e.id + "' is used in both layers");

  ValidationReport rep;
  auto p1 = detail::edge_positions(s.edges1), p2 = detail::edge_positions(s.edges2);
  std::map<std::pair<std::string, std::string>, std::size_t> dom_seen, img_seen;
  for (std::size_t k = 0; k < s.chi.size(); ++k) {
    const auto& c = s.chi[k];
    const Edge& e1 = s.edges1[detail::edge_in_layer(p1, c.e1, 1, k)];
    const Edge& e2 = s.edges2[detail::edge_in_layer(p2, c.e2, 2, k)];
    const Edge& f2 = s.edges2[detail::edge_in_layer(p2, c.f2, 2, k)];
    const Edge& f1 = s.edges1[detail::edge_in_layer(p1, c.f1, 1, k)];
    const std::string tag = "chi entry " + std::to_string(k) + " (" + c.e1 + "," + c.e2 + ")->(" + c.f2 + "," + c.f1 + ")";
    if (e1.rng != e2.src) rep.violations.push_back(tag + ": (" + c.e1 + "," + c.e2 + ") is not composable");
    if (f2.rng != f1.src) rep.violations.push_back(tag + ": (" + c.f2 + "," + c.f1 + ") is not composable");
    if (f2.src != e1.src)
      rep.violations.push_back(tag + ": source changes from '" + e1.src + "' to '" + f2.src + "'");
    if (f1.rng != e2.rng)
      rep.violations.push_back(tag + ": range changes from '" + e2.rng + "' to '" + f1.rng + "'");
    auto [d, dnew] = dom_seen.emplace(std::make_pair(c.e1, c.e2), k);
    if (!dnew) rep.violations.push_back(tag + ": pair (" + c.e1 + "," + c.e2 + ") already mapped by entry " + std::to_string(d->second));
    auto [i, inew] = img_seen.emplace(std::make_pair(c.f2, c.f1), k);
    if (!inew) rep.violations.push_back(tag + ": pair (" + c.f2 + "," + c.f1 + ") already hit by entry " + std::to_string(i->second));
  }
  for (const auto& e1 : s.edges1)
    for (const auto& e2 : s.edges2) {
      if (e1.rng == e2.src && !dom_seen.count({e1.id, e2.id}))
        rep.violations.push_back("chi is not defined on the composable pair (" + e1.id + "," + e2.id + ")");
      if (e2.rng == e1.src && !img_seen.count({e2.id, e1.id}))
        rep.violations.push_back("chi does not reach the composable pair (" + e2.id + "," + e1.id + ")");
    }

  IntMatrix m1 = vertex_matrix(s.layer1()), m2 = vertex_matrix(s.layer2());
  IntMatrix a = m1 * m2, b = m2 * m1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j))
        rep.violations.push_back("M1*M2 != M2*M1 at (" + s.vertices[i] + "," + s.vertices[j] + "): " + a(i, j).str() +
                                 " vs " + b(i, j).str());
  return rep;
}

/// Both layers strict plus chi.
inline ValidationReport validate_two_graph(const TwoGraphSpec& s, bool strict = true) {
  ValidationReport rep;
  rep.merge(validate_graph(s.layer1(), strict), "layer 1: ");
  rep.merge(validate_graph(s.layer2(), strict), "layer 2: ");
  rep.merge(validate_chi(s));
  return rep;
}

/// chi from explicit lists of domain pairs (e1,e2) and image pairs (f2,f1), matched by position.
inline std::vector<ChiPair> chi_from_pairing(const std::vector<std::pair<std::string, std::string>>& domain,
                                             const std::vector<std::pair<std::string, std::string>>& image) {
  if (domain.size() != image.size())
    throw MalformedInput("pairing sizes differ: " + std::to_string(domain.size()) + " vs " + std::to_string(image.size()));
  std::vector<ChiPair> chi;
  for (std::size_t k = 0; k < domain.size(); ++k)
    chi.push_back({domain[k].first, domain[k].second, image[k].first, image[k].second});
  return chi;
}

/// Single vertex, blue loops e1..em, red loops f1..fn, no chi yet.
inline TwoGraphSpec single_vertex_two_graph(std::size_t m, std::size_t n) {
  TwoGraphSpec s;
  s.vertices = {"v"};
  s.edges1 = rose(m, "e").edges;
  s.edges2 = rose(n, "f").edges;
  return s;
}

/// (e_i, f_j) -> (f_j, e_i) on the single-vertex (m, n) two-graph.
inline std::vector<ChiPair> chi_flip(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw MalformedInput("chi_flip needs m, n >= 1");
  std::vector<ChiPair> chi;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      auto e = "e" + std::to_string(i), f = "f" + std::to_string(j);
      chi.push_back({e, f, f, e});
    }
  return chi;
}

inline TwoGraphSpec flip_two_graph(std::size_t m, std::size_t n) {
  auto s = single_vertex_two_graph(m, n);
  s.chi = chi_flip(m, n);
  return s;
}

/// Layers made of commuting vertex permutations. Layer 1 has one edge "a<i>:v" per
/// permutation sigma_i and vertex v, layer 2 likewise "b<j>:v" for tau_j. chi sends
/// (a_i at v, b_j at sigma_i v) to (b_j at v, a_i at tau_j v).
inline TwoGraphSpec permutation_two_graph(const std::vector<std::string>& vertices,
                                          const std::vector<std::vector<std::string>>& layer1,
                                          const std::vector<std::vector<std::string>>& layer2) {
  TwoGraphSpec s;
  s.vertices = vertices;
  std::vector<FiniteGraph> g1, g2;
  for (std::size_t i = 0; i < layer1.size(); ++i) {
    g1.push_back(permutation_bimodule(vertices, layer1[i], "a" + std::to_string(i + 1)));
    s.edges1.insert(s.edges1.end(), g1.back().edges.begin(), g1.back().edges.end());
  }
  for (std::size_t j = 0; j < layer2.size(); ++j) {
    g2.push_back(permutation_bimodule(vertices, layer2[j], "b" + std::to_string(j + 1)));
    s.edges2.insert(s.edges2.end(), g2.back().edges.begin(), g2.back().edges.end());
  }
  auto pos = s.layer1().vertex_positions();
  for (std::size_t i = 0; i < layer1.size(); ++i)
    for (std::size_t j = 0; j < layer2.size(); ++j)
      for (std::size_t v = 0; v < vertices.size(); ++v) {
        const Edge& a = g1[i].edges[v];
        const Edge& b = g2[j].edges[pos.at(a.rng)];
        const Edge& b0 = g2[j].edges[v];
        const Edge& a1 = g1[i].edges[pos.at(b0.rng)];
        s.chi.push_back({a.id, b.id, b0.id, a1.id});
      }
  return s;
}

}  // namespace cpk
