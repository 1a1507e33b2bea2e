#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpk/abelian.hpp"

namespace cpk {

/// An edge runs src -> rng; a path e f needs rng(e) == src(f).
struct Edge {
  std::string id;
  std::string src;
  std::string rng;
  bool operator==(const Edge&) const = default;
};

struct FiniteGraph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  /// Vertex id -> position; throws MalformedInput on duplicate vertex ids.
  std::unordered_map<std::string, std::size_t> vertex_positions() const {
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (!pos.emplace(vertices[i], i).second) throw MalformedInput("duplicate vertex id '" + vertices[i] + "'");
    return pos;
  }

  bool operator==(const FiniteGraph&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void merge(const ValidationReport& other, const std::string& prefix = "") {
    for (const auto& v : other.violations) violations.push_back(prefix + v);
  }
};

/// Referential integrity always (throws MalformedInput); with `strict`, also reports
/// every sink (emits no edge) and source (receives no edge).
inline ValidationReport validate_graph(const FiniteGraph& g, bool strict) {
  auto pos = g.vertex_positions();
  std::set<std::string> ids;
  std::vector<std::size_t> out_deg(g.vertices.size()), in_deg(g.vertices.size());
  for (const auto& e : g.edges) {
    if (!ids.insert(e.id).second) throw MalformedInput("duplicate edge id '" + e.id + "'");
    auto s = pos.find(e.src), r = pos.find(e.rng);
    if (s == pos.end()) throw MalformedInput("edge '" + e.id + "' has unknown src vertex '" + e.src + "'");
    if (r == pos.end()) throw MalformedInput("edge '" + e.id + "' has unknown rng vertex '" + e.rng + "'");
    ++out_deg[s->second];
    ++in_deg[r->second];
  }
  ValidationReport rep;
  if (!strict) return rep;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (out_deg[i] == 0) rep.violations.push_back("vertex '" + g.vertices[i] + "' is a sink (emits no edge)");
    if (in_deg[i] == 0) rep.violations.push_back("vertex '" + g.vertices[i] + "' is a source (receives no edge)");
  }
  return rep;
}

/// M(v, w) = number of edges v -> w, in vertex order.
inline IntMatrix vertex_matrix(const FiniteGraph& g) {
  auto pos = g.vertex_positions();
  IntMatrix m(g.vertices.size(), g.vertices.size());
  for (const auto& e : g.edges) {
    auto s = pos.find(e.src), r = pos.find(e.rng);
    if (s == pos.end() || r == pos.end()) throw MalformedInput("edge '" + e.id + "' has a dangling endpoint");
    m(s->second, r->second) += 1;
  }
  return m;
}

/// Single vertex with n loops.
inline FiniteGraph rose(std::size_t n, const std::string& prefix = "e") {
  FiniteGraph g;
  g.vertices = {"v"};
  for (std::size_t i = 1; i <= n; ++i) g.edges.push_back({prefix + std::to_string(i), "v", "v"});
  return g;
}

/// Graph over cover vertices with an edge (x,e,y) for every base edge e with
/// src(e) = p(x) and rng(e) = p(y).
inline FiniteGraph pullback_graph(const FiniteGraph& g, const std::vector<std::string>& cover_vertices,
                                  const std::map<std::string, std::string>& p) {
  validate_graph(g, false);
  auto base = g.vertex_positions();
  std::vector<std::vector<std::string>> fiber(g.vertices.size());
  FiniteGraph cover;
  cover.vertices = cover_vertices;
  cover.vertex_positions();
  for (const auto& x : cover_vertices) {
    auto it = p.find(x);
    if (it == p.end()) throw MalformedInput("cover vertex '" + x + "' has no image");
    auto b = base.find(it->second);
    if (b == base.end()) throw MalformedInput("cover vertex '" + x + "' maps to unknown vertex '" + it->second + "'");
    fiber[b->second].push_back(x);
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (fiber[i].empty()) throw PreconditionError("cover map is not surjective: nothing lies over '" + g.vertices[i] + "'");
  for (const auto& e : g.edges)
    for (const auto& x : fiber[base.at(e.src)])
      for (const auto& y : fiber[base.at(e.rng)]) cover.edges.push_back({"(" + x + "," + e.id + "," + y + ")", x, y});
  return cover;
}

/// Functional graph of a vertex permutation: one edge v -> perm(v) per vertex.
/// `perm[i]` is the image of vertices[i].
inline FiniteGraph permutation_bimodule(const std::vector<std::string>& vertices, const std::vector<std::string>& perm,
                                        const std::string& prefix = "a") {
  FiniteGraph g;
  g.vertices = vertices;
  auto pos = g.vertex_positions();
  if (perm.size() != vertices.size()) throw MalformedInput("permutation has the wrong length");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (!pos.count(perm[i])) throw MalformedInput("permutation image '" + perm[i] + "' is not a vertex");
    if (!seen.insert(perm[i]).second) throw PreconditionError("not a bijection: '" + perm[i] + "' is hit twice");
    g.edges.push_back({prefix + ":" + vertices[i], vertices[i], perm[i]});
  }
  return g;
}

}  // namespace cpk
