#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpk/model.hpp"

namespace cpk {

inline constexpr std::size_t kDefaultFockCap = 200000;
inline constexpr double kDefaultFockTol = 1e-10;

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;

/// A normal-form path: layer-1 letters, then layer-2 letters, starting at `vertex`.
/// The empty word at v is the vacuum vector of v.
struct FockWord {
  std::size_t vertex = 0;
  std::vector<std::size_t> w1, w2;
  std::size_t degree() const { return w1.size() + w2.size(); }
  auto operator<=>(const FockWord&) const = default;
};

struct FockOptions {
  std::size_t cap = kDefaultFockCap;
  bool check_chi = true;
};

/// Truncated Fock module of a two-graph (or a single layer) with creation operators.
///
/// chi and chi_inverse act on pair indices: column i*n+j of chi is e_i (x) f_j and row
/// k*n+l is f_l (x) e_k, where n is the number of layer-2 edges. chi_inverse goes back.
struct FockRep {
  std::vector<std::string> vertices;
  std::vector<Edge> edges1, edges2;
  std::size_t degree = 0;
  std::vector<FockWord> basis;
  std::map<FockWord, std::size_t> index;
  SparseOp chi, chi_inverse;
  std::vector<SparseOp> t1, t2;
  std::vector<SparseOp> projections;

  std::size_t size() const { return basis.size(); }
  const std::vector<Edge>& edges(int layer) const { return layer == 1 ? edges1 : edges2; }
  const std::vector<SparseOp>& creation(int layer) const { return layer == 1 ? t1 : t2; }
  std::vector<char> degree_at_most(long long d) const {
    std::vector<char> keep(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) keep[i] = static_cast<long long>(basis[i].degree()) <= d;
    return keep;
  }
};

struct DefectReport {
  std::string relation;
  double defect = 0;
  double tolerance = kDefaultFockTol;
  bool pass = true;
  std::string detail;
  std::optional<std::size_t> vacuum_rank;
};

namespace detail {

struct FockLayout {
  std::vector<std::string> vertices;
  std::vector<Edge> edges1, edges2;
  std::vector<std::size_t> src1, rng1, src2, rng2;
};

inline FockLayout fock_layout(const std::vector<std::string>& vertices, const std::vector<Edge>& e1,
                              const std::vector<Edge>& e2) {
  FockLayout l{vertices, e1, e2, {}, {}, {}, {}};
  FiniteGraph g{vertices, {}};
  auto pos = g.vertex_positions();
  auto fill = [&](const std::vector<Edge>& es, std::vector<std::size_t>& s, std::vector<std::size_t>& r) {
    for (const auto& e : es) {
      s.push_back(pos.at(e.src));
      r.push_back(pos.at(e.rng));
    }
  };
  fill(e1, l.src1, l.rng1);
  fill(e2, l.src2, l.rng2);
  return l;
}

inline Integer fock_dimension(const FockLayout& l, std::size_t n) {
  const std::size_t v = l.vertices.size();
  IntMatrix m1(v, v), m2(v, v);
  for (std::size_t i = 0; i < l.src1.size(); ++i) m1(l.src1[i], l.rng1[i]) += 1;
  for (std::size_t i = 0; i < l.src2.size(); ++i) m2(l.src2[i], l.rng2[i]) += 1;
  IntMatrix row(1, v);
  for (std::size_t j = 0; j < v; ++j) row(0, j) = 1;
  Integer total = 0;
  for (std::size_t a = 0; a <= n; ++a) {
    IntMatrix r = row;
    for (std::size_t b = 0; a + b <= n; ++b) {
      for (std::size_t j = 0; j < v; ++j) total += r(0, j);
      r = r * m2;
    }
    row = row * m1;
  }
  return total;
}

inline void enumerate_words(const FockLayout& l, std::size_t a, std::size_t b, std::vector<FockWord>& out) {
  if (a == 0 && b == 0) {
    for (std::size_t v = 0; v < l.vertices.size(); ++v) out.push_back({v, {}, {}});
    return;
  }
  FockWord w;
  auto extend = [&](auto&& self, std::size_t end) -> void {
    const bool first = w.w1.empty() && w.w2.empty();
    const bool in_layer1 = w.w1.size() < a;
    if (!in_layer1 && w.w2.size() == b) {
      out.push_back(w);
      return;
    }
    const auto& src = in_layer1 ? l.src1 : l.src2;
    const auto& rng = in_layer1 ? l.rng1 : l.rng2;
    auto& word = in_layer1 ? w.w1 : w.w2;
    for (std::size_t e = 0; e < src.size(); ++e) {
      if (!first && src[e] != end) continue;
      if (first) w.vertex = src[e];
      word.push_back(e);
      self(self, rng[e]);
      word.pop_back();
    }
  };
  extend(extend, 0);
}

inline void build_operators(FockRep& rep, const FockLayout& l) {
  const std::size_t dim = rep.basis.size(), n = l.edges2.size();
  std::vector<std::vector<Eigen::Triplet<Complex>>> trip1(l.edges1.size()), trip2(n);
  auto locate = [&](const FockWord& w) {
    auto it = rep.index.find(w);
    if (it == rep.index.end()) throw InternalError("normal ordering left the Fock basis");
    return it->second;
  };

  for (std::size_t col = 0; col < dim; ++col) {
    const FockWord& w = rep.basis[col];
    if (w.degree() >= rep.degree) continue;
    for (std::size_t e = 0; e < l.edges1.size(); ++e) {
      if (l.rng1[e] != w.vertex) continue;
      FockWord out{l.src1[e], {e}, w.w2};
      out.w1.insert(out.w1.end(), w.w1.begin(), w.w1.end());
      trip1[e].emplace_back(locate(out), col, Complex(1));
    }
    for (std::size_t f = 0; f < n; ++f) {
      if (l.rng2[f] != w.vertex) continue;
      // Carry f rightwards through the layer-1 letters with chi^{-1}.
      struct Partial {
        std::vector<std::size_t> w1;
        std::size_t carried;
        Complex coeff;
      };
      std::vector<Partial> front{{{}, f, Complex(1)}};
      for (std::size_t k : w.w1) {
        std::vector<Partial> next;
        for (const auto& p : front)
          for (SparseOp::InnerIterator it(rep.chi_inverse, static_cast<Eigen::Index>(k * n + p.carried)); it; ++it) {
            if (it.value() == Complex(0)) continue;
            const std::size_t i = static_cast<std::size_t>(it.row()) / n, j = static_cast<std::size_t>(it.row()) % n;
            Partial q{p.w1, j, p.coeff * it.value()};
            q.w1.push_back(i);
            next.push_back(std::move(q));
          }
        front = std::move(next);
      }
      std::map<std::size_t, Complex> column;
      for (const auto& p : front) {
        FockWord out{l.src2[f], p.w1, {p.carried}};
        out.w2.insert(out.w2.end(), w.w2.begin(), w.w2.end());
        column[locate(out)] += p.coeff;
      }
      for (const auto& [row, c] : column) trip2[f].emplace_back(row, col, c);
    }
  }
  auto assemble = [dim](const std::vector<Eigen::Triplet<Complex>>& t) {
    SparseOp m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(t.begin(), t.end());
    return m;
  };
  rep.t1.clear();
  rep.t2.clear();
  for (const auto& t : trip1) rep.t1.push_back(assemble(t));
  for (const auto& t : trip2) rep.t2.push_back(assemble(t));

  rep.projections.clear();
  for (std::size_t v = 0; v < l.vertices.size(); ++v) {
    std::vector<Eigen::Triplet<Complex>> t;
    for (std::size_t i = 0; i < dim; ++i)
      if (rep.basis[i].vertex == v) t.emplace_back(i, i, Complex(1));
    rep.projections.push_back(assemble(t));
  }
}

inline FockRep build_from_layout(const FockLayout& l, SparseOp chi, SparseOp chi_inverse, std::size_t n,
                                 const FockOptions& opts) {
  Integer size = fock_dimension(l, n);
  if (size > Integer(opts.cap))
    throw ResourceError("Fock basis up to degree " + std::to_string(n) + " has " + size.str() +
                        " vectors, above the cap of " + std::to_string(opts.cap));
  FockRep rep;
  rep.vertices = l.vertices;
  rep.edges1 = l.edges1;
  rep.edges2 = l.edges2;
  rep.degree = n;
  rep.chi = std::move(chi);
  rep.chi_inverse = std::move(chi_inverse);
  for (std::size_t d = 0; d <= n; ++d)
    for (std::size_t a = d + 1; a-- > 0;) enumerate_words(l, a, d - a, rep.basis);
  for (std::size_t i = 0; i < rep.basis.size(); ++i) rep.index.emplace(rep.basis[i], i);
  build_operators(rep, l);
  return rep;
}

inline SparseOp to_sparse(const Eigen::MatrixXcd& m) { return m.sparseView(Complex(0), 0.0); }

}  // namespace detail

/// Fock module of one graph, viewed as layer 1 with an empty layer 2.
inline FockRep build_fock(const FiniteGraph& g, std::size_t n, const FockOptions& opts = {}) {
  validate_graph(g, false);
  return detail::build_from_layout(detail::fock_layout(g.vertices, g.edges, {}), SparseOp(0, 0), SparseOp(0, 0), n,
                                   opts);
}

inline FockRep build_fock(const TwoGraphSpec& spec, std::size_t n, const FockOptions& opts = {}) {
  auto rep = validate_chi(spec);
  if (!rep.ok()) throw PreconditionError("chi is not valid: " + rep.violations.front());
  const std::size_t m = spec.edges1.size(), n2 = spec.edges2.size();
  std::vector<Eigen::Triplet<Complex>> t;
  for (const auto& [dom, img] : chi_index(spec).forward)
    t.emplace_back(img.second * n2 + img.first, dom.first * n2 + dom.second, Complex(1));
  SparseOp chi(static_cast<Eigen::Index>(m * n2), static_cast<Eigen::Index>(m * n2));
  chi.setFromTriplets(t.begin(), t.end());
  SparseOp inverse = chi.adjoint();
  return detail::build_from_layout(detail::fock_layout(spec.vertices, spec.edges1, spec.edges2), chi, inverse, n,
                                   opts);
}

/// Single vertex with m layer-1 loops, n layer-2 loops and a unitary chi.
inline FockRep build_fock(const UnitaryChi& u, std::size_t n, const FockOptions& opts = {}) {
  if (u.m == 0 || u.n == 0) throw MalformedInput("unitary chi needs m, n >= 1");
  if (u.matrix.rows() != static_cast<Eigen::Index>(u.m * u.n) || u.matrix.cols() != u.matrix.rows())
    throw MalformedInput("unitary chi matrix must be " + std::to_string(u.m * u.n) + "x" + std::to_string(u.m * u.n));
  if (opts.check_chi && !u.is_unitary()) throw PreconditionError("chi matrix is not unitary");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(u.matrix);
  if (!lu.isInvertible()) throw PreconditionError("chi matrix is singular");
  auto s = single_vertex_two_graph(u.m, u.n);
  return detail::build_from_layout(detail::fock_layout(s.vertices, s.edges1, s.edges2), detail::to_sparse(u.matrix),
                                   detail::to_sparse(lu.inverse()), n, opts);
}

/// Upper bound sqrt(|D|_1 |D|_inf) on the operator norm of D restricted to the given rows and columns.
inline double restricted_norm(const SparseOp& d, const std::vector<char>& rows, const std::vector<char>& cols) {
  std::vector<double> row_sum(static_cast<std::size_t>(d.rows()), 0.0);
  double max_col = 0;
  for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
    if (!cols[static_cast<std::size_t>(c)]) continue;
    double s = 0;
    for (SparseOp::InnerIterator it(d, c); it; ++it) {
      if (!rows[static_cast<std::size_t>(it.row())]) continue;
      s += std::abs(it.value());
      row_sum[static_cast<std::size_t>(it.row())] += std::abs(it.value());
    }
    max_col = std::max(max_col, s);
  }
  double max_row = row_sum.empty() ? 0.0 : *std::max_element(row_sum.begin(), row_sum.end());
  return std::sqrt(max_col * max_row);
}

namespace detail {

inline SparseOp identity_op(std::size_t dim) {
  SparseOp id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  id.setIdentity();
  return id;
}

inline DefectReport finish(std::string relation, double defect, double tol, std::string detail) {
  return {std::move(relation), defect, tol, defect <= tol, std::move(detail), std::nullopt};
}

struct Worst {
  double value = 0;
  std::string where;
  void update(double v, const std::string& w) {
    if (where.empty() || v > value) {
      value = v;
      where = w;
    }
  }
};

}  // namespace detail

/// T_e* T_f = delta_ef P_rng(e) and P_src(e) T_e = T_e, on degrees <= N-1, for each layer with edges.
inline std::vector<DefectReport> check_toeplitz(const FockRep& rep, double tol = kDefaultFockTol) {
  std::vector<DefectReport> out;
  const auto low = rep.degree_at_most(static_cast<long long>(rep.degree) - 1);
  const std::vector<char> all(rep.size(), 1);
  auto pos = FiniteGraph{rep.vertices, {}}.vertex_positions();
  for (int layer : {1, 2}) {
    const auto& edges = rep.edges(layer);
    const auto& t = rep.creation(layer);
    if (edges.empty()) continue;
    detail::Worst iso, compat;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      for (std::size_t f = 0; f < edges.size(); ++f) {
        SparseOp d = SparseOp(t[e].adjoint()) * t[f];
        if (e == f) d -= rep.projections[pos.at(edges[e].rng)];
        iso.update(restricted_norm(d, low, low), edges[e].id + "," + edges[f].id);
      }
      SparseOp c = rep.projections[pos.at(edges[e].src)] * t[e] - t[e];
      compat.update(restricted_norm(c, all, low), edges[e].id);
    }
    const std::string tag = "layer " + std::to_string(layer);
    out.push_back(detail::finish("toeplitz " + tag, iso.value, tol, "worst pair (" + iso.where + ")"));
    out.push_back(detail::finish("vertex compatibility " + tag, compat.value, tol, "worst edge " + compat.where));
  }
  return out;
}

/// sum_e T_e T_e* = 1 - P0 on degrees <= N-1, where P0 projects onto words with no letter of
/// the layer. On a single-layer module P0 is the vacuum projection, of rank |V|.
inline DefectReport check_covariance_defect(const FockRep& rep, int layer, double tol = kDefaultFockTol) {
  if (layer != 1 && layer != 2) throw MalformedInput("layer must be 1 or 2");
  const std::size_t dim = rep.size();
  const auto low = rep.degree_at_most(static_cast<long long>(rep.degree) - 1);
  SparseOp d(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : rep.creation(layer)) d += SparseOp(t * SparseOp(t.adjoint()));
  std::vector<Eigen::Triplet<Complex>> trip;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& w = rep.basis[i];
    if ((layer == 1 ? w.w1 : w.w2).empty()) {
      if (low[i]) ++rank;
    } else {
      trip.emplace_back(i, i, Complex(1));
    }
  }
  SparseOp target(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  target.setFromTriplets(trip.begin(), trip.end());
  d -= target;
  auto r = detail::finish("covariance layer " + std::to_string(layer), restricted_norm(d, low, low), tol,
                          "vacuum rank " + std::to_string(rank));
  r.vacuum_rank = rank;
  return r;
}

/// T_{e_i} T_{f_j} = sum chi(k*n+l, i*n+j) T_{f_l} T_{e_k} on degrees <= N-2.
inline DefectReport check_chi_commutation(const FockRep& rep, const SparseOp& chi, double tol = kDefaultFockTol) {
  const std::size_t m = rep.edges1.size(), n = rep.edges2.size();
  if (chi.rows() != static_cast<Eigen::Index>(m * n) || chi.cols() != chi.rows())
    throw MalformedInput("chi must be " + std::to_string(m * n) + "x" + std::to_string(m * n));
  const auto low = rep.degree_at_most(static_cast<long long>(rep.degree) - 2);
  const std::vector<char> all(rep.size(), 1);
  detail::Worst worst;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseOp d = rep.t1[i] * rep.t2[j];
      for (SparseOp::InnerIterator it(chi, static_cast<Eigen::Index>(i * n + j)); it; ++it) {
        const std::size_t k = static_cast<std::size_t>(it.row()) / n, l = static_cast<std::size_t>(it.row()) % n;
        d -= SparseOp(it.value() * SparseOp(rep.t2[l] * rep.t1[k]));
      }
      worst.update(restricted_norm(d, all, low), rep.edges1[i].id + "," + rep.edges2[j].id);
    }
  return detail::finish("chi commutation", worst.value, tol, "worst pair (" + worst.where + ")");
}

inline DefectReport check_chi_commutation(const FockRep& rep, double tol = kDefaultFockTol) {
  return check_chi_commutation(rep, rep.chi, tol);
}

inline DefectReport check_chi_commutation(const FockRep& rep, const UnitaryChi& u, double tol = kDefaultFockTol) {
  return check_chi_commutation(rep, detail::to_sparse(u.matrix), tol);
}

/// Left action of a layer-1 edge on f (x) xi, with xi a layer-1 path, through chi; its matrix
/// adjoint is compared with the map that pairs off e through chi^{-1}.
inline DefectReport check_left_action_adjoint(const FockRep& rep, double tol = kDefaultFockTol) {
  const std::size_t m = rep.edges1.size(), n = rep.edges2.size();
  if (m == 0 || n == 0) return detail::finish("left action adjoint", 0.0, tol, "single layer, nothing to check");
  auto pos = FiniteGraph{rep.vertices, {}}.vertex_positions();

  // Basis of E2 (x) F(E1): an edge f followed by a layer-1 path of length <= N-1.
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;
  std::vector<Key> basis;
  std::map<Key, std::size_t> index;
  for (const auto& w : rep.basis)
    if (w.w2.empty() && static_cast<long long>(w.w1.size()) <= static_cast<long long>(rep.degree) - 1)
      for (std::size_t f = 0; f < n; ++f)
        if (pos.at(rep.edges2[f].rng) == w.vertex) {
          index.emplace(Key{f, w.w1}, basis.size());
          basis.emplace_back(f, w.w1);
        }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::vector<char> low(basis.size()), all(basis.size(), 1);
  for (std::size_t r = 0; r < basis.size(); ++r)
    low[r] = static_cast<long long>(basis[r].second.size()) <= static_cast<long long>(rep.degree) - 2;

  detail::Worst worst;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Eigen::Triplet<Complex>> lt, st;
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& [j, mu] = basis[c];
      if (low[c])
        for (SparseOp::InnerIterator it(rep.chi, static_cast<Eigen::Index>(i * n + j)); it; ++it) {
          const std::size_t k = static_cast<std::size_t>(it.row()) / n, l = static_cast<std::size_t>(it.row()) % n;
          Key out{l, {k}};
          out.second.insert(out.second.end(), mu.begin(), mu.end());
          auto found = index.find(out);
          if (found != index.end()) lt.emplace_back(found->second, c, it.value());
        }
      if (mu.empty()) continue;
      const std::size_t k = mu.front(), l = j;
      const std::vector<std::size_t> rest(mu.begin() + 1, mu.end());
      for (SparseOp::InnerIterator it(rep.chi_inverse, static_cast<Eigen::Index>(k * n + l)); it; ++it) {
        if (static_cast<std::size_t>(it.row()) / n != i) continue;
        auto found = index.find(Key{static_cast<std::size_t>(it.row()) % n, rest});
        if (found != index.end()) st.emplace_back(found->second, c, it.value());
      }
    }
    SparseOp left(dim, dim), sharp(dim, dim);
    left.setFromTriplets(lt.begin(), lt.end());
    sharp.setFromTriplets(st.begin(), st.end());
    SparseOp d = SparseOp(left.adjoint()) - sharp;
    worst.update(restricted_norm(d, low, all), rep.edges1[i].id);
  }
  return detail::finish("left action adjoint", worst.value, tol, "worst edge " + worst.where);
}

namespace detail {

using Letter = std::pair<int, std::size_t>;
using Word = std::vector<Letter>;

// Normal form of a word by moving layer-2 letters right through layer-1 letters with chi^{-1},
// resolving either the leftmost or the rightmost out-of-order pair first.
inline void normal_order(const FockRep& rep, Word w, Complex c, bool leftmost, std::map<Word, Complex>& out) {
  std::optional<std::size_t> p;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].first == 2 && w[i + 1].first == 1) {
      p = i;
      if (leftmost) break;
    }
  if (!p) {
    out[w] += c;
    return;
  }
  const std::size_t n = rep.edges2.size(), l = w[*p].second, k = w[*p + 1].second;
  for (SparseOp::InnerIterator it(rep.chi_inverse, static_cast<Eigen::Index>(k * n + l)); it; ++it) {
    Word v = w;
    v[*p] = {1, static_cast<std::size_t>(it.row()) / n};
    v[*p + 1] = {2, static_cast<std::size_t>(it.row()) % n};
    normal_order(rep, std::move(v), c * it.value(), leftmost, out);
  }
}

inline Eigen::VectorXcd word_vector(const FockRep& rep, const std::map<Word, Complex>& terms) {
  auto pos = FiniteGraph{rep.vertices, {}}.vertex_positions();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rep.size()));
  for (const auto& [w, c] : terms) {
    FockWord fw;
    fw.vertex = pos.at(w.front().first == 1 ? rep.edges1[w.front().second].src : rep.edges2[w.front().second].src);
    for (const auto& [layer, e] : w) (layer == 1 ? fw.w1 : fw.w2).push_back(e);
    auto it = rep.index.find(fw);
    if (it == rep.index.end()) throw InternalError("normal form left the Fock basis");
    v(static_cast<Eigen::Index>(it->second)) += c;
  }
  return v;
}

}  // namespace detail

/// Length-3 mixed words x y z applied to basis vectors of degree <= N-3: the operator product
/// T_x T_y T_z and the two rewriting orders of the concatenated word must agree.
inline DefectReport check_associativity(const FockRep& rep, double tol = kDefaultFockTol) {
  if (rep.edges1.empty() || rep.edges2.empty())
    return detail::finish("associativity", 0.0, tol, "single layer, nothing to check");
  auto pos = FiniteGraph{rep.vertices, {}}.vertex_positions();
  std::vector<detail::Letter> letters;
  for (std::size_t e = 0; e < rep.edges1.size(); ++e) letters.push_back({1, e});
  for (std::size_t f = 0; f < rep.edges2.size(); ++f) letters.push_back({2, f});
  auto edge = [&](const detail::Letter& x) -> const Edge& {
    return x.first == 1 ? rep.edges1[x.second] : rep.edges2[x.second];
  };
  auto op = [&](const detail::Letter& x) -> const SparseOp& {
    return x.first == 1 ? rep.t1[x.second] : rep.t2[x.second];
  };

  detail::Worst worst;
  std::size_t checked = 0;
  for (const auto& x : letters)
    for (const auto& y : letters)
      for (const auto& z : letters) {
        if (x.first == y.first && y.first == z.first) continue;
        if (edge(x).rng != edge(y).src || edge(y).rng != edge(z).src) continue;
        for (std::size_t b = 0; b < rep.size(); ++b) {
          const auto& w = rep.basis[b];
          if (w.degree() + 3 > rep.degree || pos.at(edge(z).rng) != w.vertex) continue;
          detail::Word word{x, y, z};
          for (auto e : w.w1) word.push_back({1, e});
          for (auto f : w.w2) word.push_back({2, f});
          std::map<detail::Word, Complex> left, right;
          detail::normal_order(rep, word, Complex(1), true, left);
          detail::normal_order(rep, word, Complex(1), false, right);
          Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rep.size()));
          unit(static_cast<Eigen::Index>(b)) = 1;
          Eigen::VectorXcd via_ops = op(x) * (op(y) * (op(z) * unit));
          Eigen::VectorXcd vl = detail::word_vector(rep, left), vr = detail::word_vector(rep, right);
          double d = std::max((via_ops - vl).norm(), (vl - vr).norm());
          worst.update(d, edge(x).id + edge(y).id + edge(z).id);
          ++checked;
        }
      }
  return detail::finish("associativity", worst.value, tol,
                        std::to_string(checked) + " words checked" + (checked ? ", worst " + worst.where : ""));
}

/// Every relation check that applies to the module.
inline std::vector<DefectReport> check_all(const FockRep& rep, double tol = kDefaultFockTol) {
  auto out = check_toeplitz(rep, tol);
  for (int layer : {1, 2})
    if (!rep.edges(layer).empty()) out.push_back(check_covariance_defect(rep, layer, tol));
  if (!rep.edges1.empty() && !rep.edges2.empty()) {
    out.push_back(check_chi_commutation(rep, tol));
    out.push_back(check_left_action_adjoint(rep, tol));
    out.push_back(check_associativity(rep, tol));
  }
  return out;
}

}  // namespace cpk
