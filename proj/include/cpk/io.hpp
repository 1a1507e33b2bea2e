#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cpk/fock.hpp"
#include "cpk/ktheory.hpp"

namespace cpk {

using Json = nlohmann::ordered_json;

/// Single permutation (one layer) or a commuting pair (two-graph with the canonical chi).
struct PermutationDoc {
  std::vector<std::string> vertices;
  std::vector<std::string> perm1;
  std::optional<std::vector<std::string>> perm2;
  bool operator==(const PermutationDoc&) const = default;
};

enum class DocKind { Graph, TwoGraph, Permutation, AbstractKData, UnitaryChi };

inline const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::Graph: return "graph";
    case DocKind::TwoGraph: return "two_graph";
    case DocKind::Permutation: return "permutation";
    case DocKind::AbstractKData: return "abstract_kdata";
    case DocKind::UnitaryChi: return "unitary_chi";
  }
  return "?";
}

struct SpecDocument {
  std::variant<FiniteGraph, TwoGraphSpec, PermutationDoc, AbstractKData, UnitaryChi> payload;
  DocKind kind() const { return static_cast<DocKind>(payload.index()); }
};

/// 64-bit FNV-1a of the raw bytes, as 16 lowercase hex digits.
inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline Json group_json(const FgAbGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion()) t.push_back(integer_json(d));
  return {{"rank", g.free_rank()}, {"torsion", t}, {"text", g.to_string()}};
}

inline Json kgroup_json(const KGroup& g) {
  Json c = Json::array();
  for (const auto& x : g.candidates) c.push_back(group_json(x));
  return {{"group", g.group ? group_json(*g.group) : Json(nullptr)}, {"candidates", c}};
}

inline Json kpair_json(const KPair& p) {
  Json cert = Json::array();
  for (const auto& c : p.certificate) {
    Json cand = Json::array();
    for (const auto& x : c.candidates) cand.push_back(group_json(x));
    cert.push_back({{"node", c.node},
                    {"sub", group_json(c.sub)},
                    {"quotient", group_json(c.quotient)},
                    {"candidates", cand},
                    {"group", c.group ? group_json(*c.group) : Json(nullptr)},
                    {"assumed_split", c.assumed_split}});
  }
  return {{"K0", kgroup_json(p.k0)},          {"K1", kgroup_json(p.k1)},   {"text", p.to_string()},
          {"status", to_string(p.status)},    {"assumed_split", p.assumed_split},
          {"notes", p.notes},                 {"certificate", cert}};
}

inline Json exactness_json(const std::vector<NodeExactness>& r) {
  Json out = Json::array();
  for (const auto& n : r) out.push_back({{"node", n.node}, {"exact", n.exact}, {"detail", n.detail}});
  return out;
}

inline Json defect_json(const DefectReport& d) {
  Json j = {{"relation", d.relation}, {"defect", d.defect}, {"tolerance", d.tolerance}, {"pass", d.pass},
            {"detail", d.detail}};
  if (d.vacuum_rank) j["vacuum_rank"] = *d.vacuum_rank;
  return j;
}

inline Json validation_json(const ValidationReport& r) { return {{"valid", r.ok()}, {"violations", r.violations}}; }

namespace detail {

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw MalformedInput(where + " must be an object");
  auto it = j.find(name);
  if (it == j.end()) throw MalformedInput(where + ": missing field '" + name + "'");
  return *it;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedInput(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw MalformedInput(where + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::vector<Edge> edge_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedInput(where + " must be an array of edges");
  std::vector<Edge> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    Edge e;
    for (auto [name, dst] : {std::pair{"id", &e.id}, std::pair{"src", &e.src}, std::pair{"rng", &e.rng}}) {
      const Json& v = field(j[k], name, at);
      if (!v.is_string()) throw MalformedInput(at + "." + name + " must be a string");
      *dst = v.get<std::string>();
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline Json edges_json(const std::vector<Edge>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back({{"id", e.id}, {"src", e.src}, {"rng", e.rng}});
  return out;
}

inline Integer json_integer(const Json& x, const std::string& where) {
  if (x.is_number_integer()) return Integer(x.get<long long>());
  if (x.is_string()) {
    const auto s = x.get<std::string>();
    if (!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos && s.find('-', 1) == std::string::npos &&
        s != "-")
      return Integer(s);
  }
  throw MalformedInput(where + " must be an integer");
}

inline IntMatrix int_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw MalformedInput(where + " must have " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw MalformedInput(where + " row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = json_integer(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

inline Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(integer_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

// Torsion must already be in invariant-factor form so the generator order of the
// action matrices is the one the document author wrote down.
inline FgAbGroup group_from_json(const Json& j, const std::string& where) {
  const Json& r = field(j, "rank", where);
  if (!r.is_number_unsigned() && !(r.is_number_integer() && r.get<long long>() >= 0))
    throw MalformedInput(where + ".rank must be a non-negative integer");
  const Json& t = field(j, "torsion", where);
  if (!t.is_array()) throw MalformedInput(where + ".torsion must be an array");
  std::vector<Integer> orders;
  for (std::size_t k = 0; k < t.size(); ++k) {
    Integer d = json_integer(t[k], where + ".torsion[" + std::to_string(k) + "]");
    if (d < 2 || (!orders.empty() && d % orders.back() != 0))
      throw MalformedInput(where + ".torsion must be invariant factors d1 | d2 | ... with every d >= 2");
    orders.push_back(d);
  }
  return FgAbGroup(r.get<std::size_t>(), orders);
}

inline Json group_doc(const FgAbGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion()) t.push_back(integer_json(d));
  return {{"rank", g.free_rank()}, {"torsion", t}};
}

inline std::size_t size_field(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw MalformedInput(where + "." + name + " must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace detail

/// Parses a JSON spec document. Schema problems and unresolved ids raise MalformedInput.
inline SpecDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("not valid JSON: ") + e.what());
  }
  const Json& kind = detail::field(j, "kind", "document");
  if (!kind.is_string()) throw MalformedInput("document.kind must be a string");
  const std::string k = kind.get<std::string>();
  SpecDocument doc;
  if (k == "graph") {
    FiniteGraph g{detail::string_list(detail::field(j, "vertices", "graph"), "vertices"),
                  detail::edge_list(detail::field(j, "edges", "graph"), "edges")};
    validate_graph(g, false);
    doc.payload = g;
  } else if (k == "two_graph") {
    TwoGraphSpec s;
    s.vertices = detail::string_list(detail::field(j, "vertices", "two_graph"), "vertices");
    s.edges1 = detail::edge_list(detail::field(j, "edges1", "two_graph"), "edges1");
    s.edges2 = detail::edge_list(detail::field(j, "edges2", "two_graph"), "edges2");
    const Json& chi = detail::field(j, "chi", "two_graph");
    if (!chi.is_array()) throw MalformedInput("chi must be an array of [[e1,e2],[f2,f1]] entries");
    for (std::size_t n = 0; n < chi.size(); ++n) {
      const auto& c = chi[n];
      const std::string at = "chi[" + std::to_string(n) + "]";
      if (!c.is_array() || c.size() != 2) throw MalformedInput(at + " must be [[e1,e2],[f2,f1]]");
      auto dom = detail::string_list(c[0], at + "[0]"), img = detail::string_list(c[1], at + "[1]");
      if (dom.size() != 2 || img.size() != 2) throw MalformedInput(at + " must be [[e1,e2],[f2,f1]]");
      s.chi.push_back({dom[0], dom[1], img[0], img[1]});
    }
    validate_chi(s);
    chi_index(s);
    doc.payload = s;
  } else if (k == "permutation") {
    PermutationDoc p;
    p.vertices = detail::string_list(detail::field(j, "vertices", "permutation"), "vertices");
    p.perm1 = detail::string_list(detail::field(j, "perm1", "permutation"), "perm1");
    if (j.contains("perm2")) p.perm2 = detail::string_list(j["perm2"], "perm2");
    FiniteGraph g{p.vertices, {}};
    auto pos = g.vertex_positions();
    for (const auto* perm : {&p.perm1, p.perm2 ? &*p.perm2 : nullptr}) {
      if (!perm) continue;
      if (perm->size() != p.vertices.size())
        throw MalformedInput("permutation must list one image per vertex (" + std::to_string(p.vertices.size()) + ")");
      for (const auto& v : *perm)
        if (!pos.count(v)) throw MalformedInput("permutation image '" + v + "' is not a vertex");
    }
    doc.payload = p;
  } else if (k == "abstract_kdata") {
    AbstractKData d;
    d.k0 = detail::group_from_json(detail::field(j, "K0", "abstract_kdata"), "K0");
    d.k1 = detail::group_from_json(detail::field(j, "K1", "abstract_kdata"), "K1");
    const std::size_t g0 = d.k0.generator_count(), g1 = d.k1.generator_count();
    for (auto [name, a0, a1] : {std::tuple{"action1", &d.action1_k0, &d.action1_k1},
                                std::tuple{"action2", &d.action2_k0, &d.action2_k1}}) {
      const Json& a = detail::field(j, name, "abstract_kdata");
      const std::string at(name);
      *a0 = GroupHom(d.k0, d.k0, detail::int_matrix(detail::field(a, "K0", at), g0, g0, at + ".K0"));
      *a1 = GroupHom(d.k1, d.k1, detail::int_matrix(detail::field(a, "K1", at), g1, g1, at + ".K1"));
    }
    doc.payload = d;
  } else if (k == "unitary_chi") {
    UnitaryChi u;
    u.m = detail::size_field(j, "m", "unitary_chi");
    u.n = detail::size_field(j, "n", "unitary_chi");
    const std::size_t dim = u.m * u.n;
    if (dim == 0) throw MalformedInput("unitary_chi needs m, n >= 1");
    const Json& mat = detail::field(j, "matrix", "unitary_chi");
    if (!mat.is_array() || mat.size() != dim) throw MalformedInput("matrix must have " + std::to_string(dim) + " rows");
    u.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      if (!mat[r].is_array() || mat[r].size() != dim)
        throw MalformedInput("matrix row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
      for (std::size_t c = 0; c < dim; ++c) {
        const Json& z = mat[r][c];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
          throw MalformedInput("matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be [re, im]");
        u.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    doc.payload = u;
  } else {
    throw MalformedInput("unknown document kind '" + k + "'");
  }
  return doc;
}

inline Json document_json(const SpecDocument& doc) {
  Json j = {{"kind", to_string(doc.kind())}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, FiniteGraph>) {
          j["vertices"] = p.vertices;
          j["edges"] = detail::edges_json(p.edges);
        } else if constexpr (std::is_same_v<T, TwoGraphSpec>) {
          j["vertices"] = p.vertices;
          j["edges1"] = detail::edges_json(p.edges1);
          j["edges2"] = detail::edges_json(p.edges2);
          Json chi = Json::array();
          for (const auto& c : p.chi) chi.push_back(Json::array({Json::array({c.e1, c.e2}), Json::array({c.f2, c.f1})}));
          j["chi"] = chi;
        } else if constexpr (std::is_same_v<T, PermutationDoc>) {
          j["vertices"] = p.vertices;
          j["perm1"] = p.perm1;
          if (p.perm2) j["perm2"] = *p.perm2;
        } else if constexpr (std::is_same_v<T, AbstractKData>) {
          j["K0"] = detail::group_doc(p.k0);
          j["K1"] = detail::group_doc(p.k1);
          j["action1"] = {{"K0", detail::matrix_json(p.action1_k0.matrix())},
                          {"K1", detail::matrix_json(p.action1_k1.matrix())}};
          j["action2"] = {{"K0", detail::matrix_json(p.action2_k0.matrix())},
                          {"K1", detail::matrix_json(p.action2_k1.matrix())}};
        } else {
          j["m"] = p.m;
          j["n"] = p.n;
          Json rows = Json::array();
          for (Eigen::Index r = 0; r < p.matrix.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < p.matrix.cols(); ++c)
              row.push_back(Json::array({p.matrix(r, c).real(), p.matrix(r, c).imag()}));
            rows.push_back(row);
          }
          j["matrix"] = rows;
        }
      },
      doc.payload);
  return j;
}

inline std::string dump_document(const SpecDocument& doc) { return document_json(doc).dump(2) + "\n"; }

/// Graph or two-graph behind a permutation document.
inline std::variant<FiniteGraph, TwoGraphSpec> permutation_model(const PermutationDoc& p) {
  if (p.perm2) return permutation_two_graph(p.vertices, {p.perm1}, {*p.perm2});
  return permutation_bimodule(p.vertices, p.perm1);
}

/// Schema-valid documents can still be semantically invalid; this lists every violation.
inline ValidationReport validate_document(const SpecDocument& doc, bool strict = true) {
  return std::visit(
      [&](const auto& p) -> ValidationReport {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, FiniteGraph>) {
          return validate_graph(p, strict);
        } else if constexpr (std::is_same_v<T, TwoGraphSpec>) {
          return validate_two_graph(p, strict);
        } else if constexpr (std::is_same_v<T, PermutationDoc>) {
          try {
            auto model = permutation_model(p);
            if (auto g = std::get_if<FiniteGraph>(&model)) return validate_graph(*g, strict);
            return validate_two_graph(std::get<TwoGraphSpec>(model), strict);
          } catch (const PreconditionError& e) {
            return ValidationReport{{e.what()}};
          }
        } else if constexpr (std::is_same_v<T, AbstractKData>) {
          return validate_kdata(p);
        } else {
          ValidationReport r;
          if (!p.is_unitary()) {
            Eigen::MatrixXcd d = p.matrix.adjoint() * p.matrix -
                                 Eigen::MatrixXcd::Identity(p.matrix.rows(), p.matrix.cols());
            r.violations.push_back("chi matrix is not unitary: max |U*U - I| = " +
                                   std::to_string(d.cwiseAbs().maxCoeff()));
          }
          return r;
        }
      },
      doc.payload);
}

}  // namespace cpk
