#include <catch_amalgamated.hpp>

#include <numbers>

#include "cpk/model.hpp"
#include "random_specs.hpp"

using namespace cpk;

namespace {

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate_graph") {
  CHECK(validate_graph(rose(2), true).ok());

  FiniteGraph sink{{"v", "w"}, {{"e", "v", "w"}}};
  auto r = validate_graph(sink, true);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "'w' is a sink"));
  CHECK(mentions(r, "'v' is a source"));
  CHECK(validate_graph(sink, false).ok());

  FiniteGraph dangling{{"v"}, {{"e", "v", "x"}}};
  CHECK_THROWS_AS(validate_graph(dangling, false), MalformedInput);
  FiniteGraph dup{{"v"}, {{"e", "v", "v"}, {"e", "v", "v"}}};
  CHECK_THROWS_AS(validate_graph(dup, false), MalformedInput);
  FiniteGraph dupv{{"v", "v"}, {}};
  CHECK_THROWS_AS(validate_graph(dupv, false), MalformedInput);
}

TEST_CASE("vertex_matrix") {
  CHECK(vertex_matrix(rose(5)) == IntMatrix{{5}});
  CHECK(vertex_matrix(rose(2)) == IntMatrix{{2}});
  FiniteGraph cycle{{"v", "w"}, {{"a", "v", "w"}, {"b", "w", "v"}}};
  CHECK(vertex_matrix(cycle) == IntMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("validate_chi on the single-vertex (2,2) examples") {
  auto flip = flip_two_graph(2, 2);
  CHECK(validate_chi(flip).ok());
  CHECK(validate_two_graph(flip).ok());

  auto s = single_vertex_two_graph(2, 2);
  // chi_2(e_i, f_j) = (f_i, e_j)
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      s.chi.push_back({"e" + std::to_string(i), "f" + std::to_string(j), "f" + std::to_string(i), "e" + std::to_string(j)});
  CHECK(validate_chi(s).ok());

  auto bad = flip;
  bad.chi[1] = bad.chi[0];
  auto r = validate_chi(bad);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "already mapped by entry 0"));
  CHECK(mentions(r, "chi is not defined on the composable pair (e1,f2)"));
}

TEST_CASE("validate_chi catches an endpoint change") {
  // Two vertices, layer 1 = layer 2 = the identity permutation.
  auto s = permutation_two_graph({"v", "w"}, {{"v", "w"}}, {{"v", "w"}});
  REQUIRE(validate_chi(s).ok());
  // Send the pair at v to the pair at w.
  std::swap(s.chi[0].f2, s.chi[1].f2);
  std::swap(s.chi[0].f1, s.chi[1].f1);
  auto r = validate_chi(s);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "source changes from 'v' to 'w'"));
}

TEST_CASE("validate_chi rejects ids from the wrong layer") {
  auto s = flip_two_graph(1, 1);
  s.chi[0].e1 = "f1";
  CHECK_THROWS_AS(validate_chi(s), MalformedInput);
}

TEST_CASE("chi_flip and chi_from_pairing") {
  CHECK(chi_flip(2, 2).size() == 4);
  CHECK(chi_flip(1, 1) == std::vector<ChiPair>{{"e1", "f1", "f1", "e1"}});
  auto c = chi_from_pairing({{"e1", "f1"}, {"e1", "f2"}, {"e2", "f1"}, {"e2", "f2"}},
                            {{"f1", "e1"}, {"f1", "e2"}, {"f2", "e1"}, {"f2", "e2"}});
  auto s = single_vertex_two_graph(2, 2);
  s.chi = c;
  CHECK(validate_chi(s).ok());
  CHECK_THROWS_AS(chi_from_pairing({{"e1", "f1"}}, {}), MalformedInput);
}

TEST_CASE("pullback_graph") {
  auto g = rose(3);
  auto same = pullback_graph(g, {"x"}, {{"x", "v"}});
  CHECK(same.vertices.size() == 1);
  CHECK(same.edges.size() == 3);
  CHECK(vertex_matrix(same) == vertex_matrix(g));

  for (std::size_t n = 1; n <= 4; ++n) {
    auto cover = pullback_graph(rose(n), {"x", "y"}, {{"x", "v"}, {"y", "v"}});
    CHECK(cover.edges.size() == 4 * n);
  }
  FiniteGraph cycle{{"v", "w"}, {{"a", "v", "w"}, {"b", "w", "v"}}};
  auto c2 = pullback_graph(cycle, {"v0", "v1", "w0", "w1"}, {{"v0", "v"}, {"v1", "v"}, {"w0", "w"}, {"w1", "w"}});
  CHECK(c2.edges.size() == 8);
  CHECK(c2.edges.front().id == "(v0,a,w0)");

  CHECK_THROWS_AS(pullback_graph(cycle, {"v0"}, {{"v0", "v"}}), PreconditionError);
  CHECK_THROWS_AS(pullback_graph(cycle, {"v0"}, {{"v0", "q"}}), MalformedInput);
}

TEST_CASE("property: pullback row sums over fibers") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int nv = 1 + rng() % 3;
    FiniteGraph g;
    for (int i = 0; i < nv; ++i) g.vertices.push_back("u" + std::to_string(i));
    int ne = rng() % 6;
    for (int e = 0; e < ne; ++e)
      g.edges.push_back({"e" + std::to_string(e), g.vertices[rng() % nv], g.vertices[rng() % nv]});
    std::vector<std::string> cover;
    std::map<std::string, std::string> p;
    std::vector<std::size_t> fiber_size(nv);
    for (int i = 0; i < nv; ++i) {
      int k = 1 + rng() % 3;
      fiber_size[i] = k;
      for (int j = 0; j < k; ++j) {
        cover.push_back(g.vertices[i] + "_" + std::to_string(j));
        p[cover.back()] = g.vertices[i];
      }
    }
    auto mt = vertex_matrix(pullback_graph(g, cover, p));
    auto m = vertex_matrix(g);
    auto base_pos = g.vertex_positions();
    // Row x of M~ summed over the cover fiber of w equals M(p(x), w) * |fiber(w)|.
    for (std::size_t x = 0; x < cover.size(); ++x)
      for (int w = 0; w < nv; ++w) {
        Integer s = 0;
        for (std::size_t y = 0; y < cover.size(); ++y)
          if (p[cover[y]] == g.vertices[w]) s += mt(x, y);
        CHECK(s == m(base_pos.at(p[cover[x]]), w) * fiber_size[w]);
      }
  }
}

TEST_CASE("permutation_bimodule") {
  auto id = permutation_bimodule({"v"}, {"v"});
  CHECK(vertex_matrix(id) == IntMatrix{{1}});
  auto swap = permutation_bimodule({"v", "w"}, {"w", "v"});
  CHECK(vertex_matrix(swap) == IntMatrix{{0, 1}, {1, 0}});
  auto cyc = permutation_bimodule({"a", "b", "c"}, {"b", "c", "a"});
  CHECK(vertex_matrix(cyc) == IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK(validate_graph(cyc, true).ok());
  CHECK_THROWS_AS(permutation_bimodule({"v", "w"}, {"v", "v"}), PreconditionError);
}

TEST_CASE("property: permutation bimodules give permutation matrices") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + rng() % 6;
    auto p = testing_support::random_perm(rng, n);
    auto m = vertex_matrix(permutation_bimodule(testing_support::vertex_names(n), testing_support::images(p)));
    IntMatrix expected(n, n);
    for (int i = 0; i < n; ++i) expected(i, p[i]) = 1;
    CHECK(m == expected);
  }
}

TEST_CASE("property: valid chi implies commuting vertex matrices") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto r = testing_support::random_permutation_spec(rng);
    auto rep = validate_two_graph(r.spec);
    INFO(rep.violations.size());
    REQUIRE(rep.ok());
    auto m1 = vertex_matrix(r.spec.layer1()), m2 = vertex_matrix(r.spec.layer2());
    CHECK(m1 * m2 == m2 * m1);
  }
}

TEST_CASE("abstract K-data validation") {
  auto z = FgAbGroup::free(1);
  AbstractKData d{z, z, GroupHom(z, z, IntMatrix{{2}}), GroupHom::identity(z), GroupHom(z, z, IntMatrix{{3}}),
                  GroupHom::identity(z)};
  CHECK(validate_kdata(d).ok());
  auto z2 = FgAbGroup(2, {});
  AbstractKData nc{z2, z, GroupHom(z2, z2, IntMatrix{{0, 1}, {0, 0}}), GroupHom::identity(z),
                   GroupHom(z2, z2, IntMatrix{{1, 0}, {0, 2}}), GroupHom::identity(z)};
  CHECK(mentions(validate_kdata(nc), "do not commute on K0"));
  auto t = FgAbGroup::cyclic(2);
  AbstractKData bad{t, z, GroupHom::identity(t), GroupHom::identity(z), GroupHom::identity(t), GroupHom(z, z, IntMatrix{{1}})};
  CHECK(validate_kdata(bad).ok());
  bad.action1_k0 = GroupHom(t, t, IntMatrix{{1}});
  bad.k0 = FgAbGroup::cyclic(3);
  CHECK_FALSE(validate_kdata(bad).ok());
}

TEST_CASE("rotation chi is unitary; zero angles give the flip") {
  for (double a : {0.0, std::numbers::pi / 6, std::numbers::pi / 4, 1.0})
    for (double b : {0.0, std::numbers::pi / 3, -2.0}) CHECK(rotation_chi(a, b).is_unitary());
  CHECK(rotation_chi(0, 0).matrix.isIdentity(0));
  auto u = rotation_chi(0.3, 0);
  u.matrix(0, 0) *= 2.0;
  CHECK_FALSE(u.is_unitary());
}
