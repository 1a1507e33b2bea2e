#include <catch_amalgamated.hpp>

#include <random>

#include "cpk/abelian.hpp"
#include "oracles.hpp"

using namespace cpk;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

oracle::Mat to_mat(const IntMatrix& m) {
  oracle::Mat a(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<long long>(m(i, j));
  return a;
}

FgAbGroup group_of(const oracle::CokernelShape& s) {
  std::vector<Integer> t(s.torsion.begin(), s.torsion.end());
  return FgAbGroup(s.free_rank, t);
}

}  // namespace

TEST_CASE("smith normal form of the worked 2x2 example") {
  IntMatrix m{{2, 4}, {6, 8}};
  auto snf = smith_normal_form(m);
  CHECK(snf.S == IntMatrix{{2, 0}, {0, 4}});
  CHECK(snf_invariants_hold(m, snf));
}

TEST_CASE("smith normal form of identity and zero") {
  auto id = IntMatrix::identity(3);
  auto snf = smith_normal_form(id);
  CHECK(snf.S == id);
  CHECK(snf.rank == 3);
  CHECK(snf_invariants_hold(id, snf));

  IntMatrix z(2, 3);
  auto zs = smith_normal_form(z);
  CHECK(zs.S.is_zero());
  CHECK(zs.rank == 0);
  CHECK(snf_invariants_hold(z, zs));
}

TEST_CASE("empty shapes are legal") {
  IntMatrix a(0, 3), b(3, 0), c(0, 0);
  CHECK(snf_invariants_hold(a, smith_normal_form(a)));
  CHECK(snf_invariants_hold(b, smith_normal_form(b)));
  CHECK(cokernel(b) == FgAbGroup::free(3));
  CHECK(cokernel(a) == FgAbGroup::trivial());
  CHECK(kernel_basis(a).cols() == 3);
  CHECK(kernel_basis(b).cols() == 0);
  CHECK(cokernel(c).is_trivial());
}

TEST_CASE("cokernel examples") {
  CHECK(cokernel(IntMatrix{{1 - 3}}) == FgAbGroup::cyclic(2));
  CHECK(cokernel(IntMatrix{{0}}) == FgAbGroup::free(1));
  CHECK(cokernel(IntMatrix{{1, -1}, {-1, 1}}) == FgAbGroup::free(1));
  CHECK(cokernel(IntMatrix{{2, 4}, {6, 8}}).torsion() == std::vector<Integer>{2, 4});
}

TEST_CASE("kernel_basis examples") {
  auto k = kernel_basis(IntMatrix{{1, -1}, {-1, 1}});
  REQUIRE(k.cols() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == k(1, 0));
  CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
  auto z = kernel_basis(IntMatrix(1, 2));
  CHECK(z.cols() == 2);
  CHECK(abs(z(0, 0) * z(1, 1) - z(0, 1) * z(1, 0)) == 1);
}

TEST_CASE("hom_well_defined") {
  auto z2 = FgAbGroup::cyclic(2), z3 = FgAbGroup::cyclic(3);
  CHECK(hom_well_defined(GroupHom(z2, z2, IntMatrix{{3}})));
  CHECK_FALSE(hom_well_defined(GroupHom(z2, z3, IntMatrix{{1}})));
  CHECK(hom_well_defined(GroupHom(FgAbGroup::free(2), FgAbGroup::free(3), IntMatrix{{1, 2}, {3, 4}, {5, 6}})));
  CHECK(hom_well_defined(GroupHom(z2, FgAbGroup::free(1), IntMatrix{{0}})));
  CHECK_FALSE(hom_well_defined(GroupHom(z2, FgAbGroup::free(1), IntMatrix{{1}})));
  CHECK_THROWS_AS(GroupHom(z2, z3, IntMatrix{{1, 2}}), MalformedInput);
}

TEST_CASE("induced_on_cokernel examples") {
  auto f = induced_on_cokernel(IntMatrix{{3}}, IntMatrix{{-2}});
  CHECK(f.dom() == FgAbGroup::cyclic(2));
  CHECK(hom_equal(f, GroupHom::identity(FgAbGroup::cyclic(2))));
  CHECK(hom_well_defined(f));

  IntMatrix b{{0, 1}, {1, 0}};
  auto g = induced_on_cokernel(b, IntMatrix(2, 2));
  CHECK(g.dom() == FgAbGroup::free(2));
  CHECK(g.matrix() == b);

  auto h = induced_on_cokernel(IntMatrix{{2}}, IntMatrix{{-1}});
  CHECK(h.dom().is_trivial());
  CHECK(h.matrix().rows() == 0);
}

TEST_CASE("induced_on_kernel examples") {
  auto f = induced_on_kernel(IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, -1}, {-1, 1}});
  CHECK(f.dom() == FgAbGroup::free(1));
  CHECK(f.matrix() == IntMatrix{{1}});

  auto g = induced_on_kernel(IntMatrix{{5}}, IntMatrix{{2}});
  CHECK(g.dom().is_trivial());

  IntMatrix b{{1, 2}, {3, 4}};
  auto h = induced_on_kernel(b, IntMatrix(2, 2));
  // Kernel basis of the zero map is unimodular; the restriction is conjugate to B.
  CHECK(h.dom() == FgAbGroup::free(2));
  auto k = kernel_basis(IntMatrix(2, 2));
  CHECK(k * h.matrix() == b * k);
}

TEST_CASE("non-commuting inputs are rejected with the offending entry") {
  IntMatrix b{{0, 1}, {0, 0}}, m{{1, 0}, {0, 2}};
  try {
    (void)induced_on_cokernel(b, m);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(induced_on_kernel(b, m), PreconditionError);
}

TEST_CASE("canonical form") {
  FgAbGroup g(1, {6, 4, 1, 0});
  CHECK(g.free_rank() == 2);
  CHECK(g.torsion() == std::vector<Integer>{2, 12});
  CHECK(g.normalized() == g);
  CHECK(g.normalized().normalized() == g.normalized());
  CHECK(FgAbGroup(0, {2, 3}) == FgAbGroup::cyclic(6));
  CHECK(g.to_string() == "Z^2 + Z_2 + Z_12");
  CHECK(FgAbGroup().to_string() == "0");
}

TEST_CASE("subquotient coordinates and lifts") {
  // (2Z + Z) / (4Z + 3Z) = Z_2 + Z_3 = Z_6
  Subquotient sq(IntMatrix{{2, 0}, {0, 1}}, IntMatrix{{4, 0}, {0, 3}});
  CHECK(sq.group() == FgAbGroup::cyclic(6));
  auto lift = sq.lifts().column(0);
  CHECK(sq.coordinates(lift) == IntVector{1});
  CHECK(sq.is_zero_class(IntVector{4, 3}));
  CHECK_THROWS_AS(sq.coordinates(IntVector{1, 0}), PreconditionError);
  CHECK_THROWS_AS(Subquotient(IntMatrix{{2}}, IntMatrix{{3}}), PreconditionError);
}

TEST_CASE("hom kernel and cokernel with torsion") {
  // x2 : Z_4 -> Z_4 has kernel Z_2 and cokernel Z_2.
  auto z4 = FgAbGroup::cyclic(4);
  GroupHom f(z4, z4, IntMatrix{{2}});
  CHECK(hom_kernel(f).group() == FgAbGroup::cyclic(2));
  CHECK(hom_cokernel(f).group() == FgAbGroup::cyclic(2));
  // Z -> Z_3, 1 |-> 1: kernel 3Z = Z, cokernel 0.
  GroupHom g(FgAbGroup::free(1), FgAbGroup::cyclic(3), IntMatrix{{1}});
  CHECK(hom_kernel(g).group() == FgAbGroup::free(1));
  CHECK(hom_cokernel(g).group().is_trivial());
}

TEST_CASE("property: SNF invariants and rank-nullity on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = rng() % 6, c = rng() % 6;
    auto m = random_matrix(rng, r, c, -9, 9);
    auto snf = smith_normal_form(m);
    REQUIRE(snf_invariants_hold(m, snf));
    auto k = kernel_basis(m);
    CHECK(k.cols() + snf.rank == c);
    CHECK((m * k).is_zero());
    if (r == c) CHECK(cokernel(m).free_rank() == k.cols());
  }
}

TEST_CASE("property: cokernel and kernel agree with determinantal oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c, -5, 5);
    auto a = to_mat(m);
    CHECK(cokernel(m) == group_of(oracle::cokernel_by_minors(a, r, c)));
    auto k = kernel_basis(m);
    CHECK(oracle::is_saturated_kernel_basis(a, r, c, to_mat(k), k.cols()));
  }
}

TEST_CASE("property: induced maps on commuting pairs are well defined") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    auto b = random_matrix(rng, n, n, -3, 3);
    // Polynomials in B commute with B.
    auto m = b * b - Integer(rng() % 3) * IntMatrix::identity(n);
    auto f = induced_on_cokernel(b, m);
    auto g = induced_on_kernel(b, m);
    CHECK(hom_well_defined(f));
    CHECK(hom_well_defined(g));
    CHECK(f.dom() == cokernel(m));
  }
}
