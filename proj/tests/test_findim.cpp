#include "qpalg/findim.hpp"

#include <doctest.h>

#include <random>

using namespace qpalg;

namespace {

// k[x,y]/(x^2, xy, y^2), basis 1, x, y.
FinDimAlgebra square_zero_plane() {
  std::vector<MatrixQ> left(3, MatrixQ::Zero(3, 3));
  left[0] = MatrixQ::Identity(3, 3);
  left[1](1, 0) = 1;
  left[2](2, 0) = 1;
  return FinDimAlgebra({"1", "x", "y"}, left, VectorQ::Unit(3, 0));
}

// Path algebra of 1 -> 2 (basis e1, e2, a): hereditary, not self-injective.
FinDimAlgebra a2_path_algebra() {
  std::vector<MatrixQ> left(3, MatrixQ::Zero(3, 3));
  // e1 e1 = e1, e1 a = a; e2 e2 = e2, a e2 = a.
  left[0](0, 0) = 1;
  left[0](2, 2) = 1;
  left[1](1, 1) = 1;
  left[2](2, 1) = 1;
  VectorQ unit(3);
  unit << 1, 1, 0;
  return FinDimAlgebra({"e1", "e2", "a"}, left, unit);
}

// Preprojective-like algebra of the 2-cycle with ab = ba = 0: basis e1,e2,a,b.
// a: 1->2, b: 2->1, paths compose left to right. Self-injective, Nakayama
// permutation swaps the two vertices.
FinDimAlgebra two_cycle_radical_square_zero() {
  std::vector<MatrixQ> left(4, MatrixQ::Zero(4, 4));
  left[0](0, 0) = 1;  // e1 e1
  left[0](2, 2) = 1;  // e1 a
  left[1](1, 1) = 1;  // e2 e2
  left[1](3, 3) = 1;  // e2 b
  left[2](2, 1) = 1;  // a e2
  left[3](3, 0) = 1;  // b e1
  VectorQ unit(4);
  unit << 1, 1, 0, 0;
  return FinDimAlgebra({"e1", "e2", "a", "b"}, left, unit);
}

MatrixQ random_invertible(Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  for (;;) {
    MatrixQ p(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) p(i, j) = coef(rng);
    if (determinant(p) != 0) return p;
  }
}

} // namespace

TEST_CASE("construction validates the table") {
  std::vector<MatrixQ> left(2, MatrixQ::Zero(2, 2));
  left[0] = MatrixQ::Identity(2, 2);
  left[1](1, 0) = 1;
  left[1](0, 1) = 1;  // x*x = 1, fine: Q[x]/(x^2-1)
  CHECK_NOTHROW(FinDimAlgebra({"1", "x"}, left, VectorQ::Unit(2, 0)));
  CHECK_THROWS_AS(FinDimAlgebra({"1", "x"}, left, VectorQ::Unit(2, 1)), InputError);

  // x x = y, y x = x, x y = 0, so (x x) x != x (x x).
  std::vector<MatrixQ> bad(3, MatrixQ::Zero(3, 3));
  bad[0] = MatrixQ::Identity(3, 3);
  bad[1](1, 0) = 1;
  bad[1](2, 1) = 1;  // x x = y
  bad[2](2, 0) = 1;
  bad[2](1, 1) = 1;  // y x = x, while x y = 0
  CHECK_THROWS_AS(FinDimAlgebra({"1", "x", "y"}, bad, VectorQ::Unit(3, 0)), InputError);
}

TEST_CASE("radical examples") {
  CHECK(radical(truncated_polynomial(3)).cols() == 2);
  CHECK(radical(split_semisimple(2)).cols() == 0);
  CHECK(radical(matrix_algebra(2)).cols() == 0);
  CHECK(radical(a2_path_algebra()).cols() == 1);
}

TEST_CASE("commutator quotient examples") {
  CHECK(commutator_quotient(truncated_polynomial(4)).dim == 4);
  CHECK(commutator_quotient(matrix_algebra(2)).dim == 1);
  CHECK(commutator_quotient(split_semisimple(3)).dim == 3);
  CHECK(commutator_quotient(two_cycle_radical_square_zero()).dim == 2);
}

TEST_CASE("fingerprint examples") {
  Fingerprint f = fingerprint(truncated_polynomial(3));
  CHECK(f.dim == 3);
  CHECK(f.hilbert == std::vector<Index>{1, 1, 1});
  CHECK(f.center_dim == 3);
  CHECK(f.cocenter_dim == 3);
  CHECK(f.self_injective == true);

  Fingerprint g = fingerprint(split_semisimple(2));
  CHECK(g.hilbert == std::vector<Index>{2});
  CHECK(g.center_dim == 2);
  CHECK(g.self_injective == true);

  CHECK_FALSE(fingerprint(matrix_algebra(2)).self_injective.has_value());
}

TEST_CASE("self-injectivity") {
  for (int n = 1; n <= 6; ++n) CHECK(is_self_injective(truncated_polynomial(n)));
  CHECK_FALSE(is_self_injective(square_zero_plane()));
  CHECK(is_self_injective(split_semisimple(1)));
  CHECK(is_self_injective(split_semisimple(3)));
  CHECK_FALSE(is_self_injective(a2_path_algebra()));
  CHECK(is_self_injective(two_cycle_radical_square_zero()));
  CHECK_THROWS_AS(is_self_injective(matrix_algebra(2)), RefusalError);
}

TEST_CASE("primitive idempotents are orthogonal and complete") {
  const FinDimAlgebra a = two_cycle_radical_square_zero();
  const auto idems = primitive_idempotents(a);
  REQUIRE(idems.size() == 2);
  CHECK(a.multiply(idems[0], idems[0]) == idems[0]);
  CHECK(a.multiply(idems[0], idems[1]) == VectorQ::Zero(4));
  CHECK(VectorQ(idems[0] + idems[1]) == a.unit());
}

TEST_CASE("symmetric forms") {
  for (int n = 1; n <= 8; ++n) {
    const auto r = symmetric_form(truncated_polynomial(n));
    REQUIRE(r.form.has_value());
    CHECK(r.form->gram == r.form->gram.transpose());
    CHECK(determinant(r.form->gram) != 0);
  }
  CHECK(symmetric_form(split_semisimple(2)).form.has_value());
  CHECK(symmetric_form(matrix_algebra(2)).form.has_value());

  const auto none = symmetric_form(square_zero_plane());
  CHECK_FALSE(none.form.has_value());
  CHECK(none.evidence == "exact");
  CHECK_FALSE(symmetric_form(a2_path_algebra()).form.has_value());
  // Self-injective with a Nakayama permutation swapping the vertices, so not symmetric.
  const auto swapped = symmetric_form(two_cycle_radical_square_zero());
  CHECK_FALSE(swapped.form.has_value());
  CHECK(swapped.evidence == "exact");
}

TEST_CASE("fingerprints are invariant under basis change") {
  std::mt19937_64 rng(99);
  for (const auto& a : {truncated_polynomial(4), split_semisimple(3), two_cycle_radical_square_zero(),
                        a2_path_algebra(), square_zero_plane()}) {
    const Fingerprint f = fingerprint(a);
    for (int t = 0; t < 20; ++t) {
      const FinDimAlgebra b = a.change_basis(random_invertible(a.dim(), rng));
      CHECK(fingerprint(b) == f);
      CHECK(commutator_quotient(b).dim == f.cocenter_dim);
    }
  }
}

TEST_CASE("radical is a nilpotent two-sided ideal") {
  for (const auto& a : {truncated_polynomial(5), two_cycle_radical_square_zero(), a2_path_algebra()}) {
    const Subspace rad = radical(a);
    const Index r = rad.cols();
    Subspace all = MatrixQ::Identity(a.dim(), a.dim());
    auto inRad = [&](const Subspace& s) {
      if (s.cols() == 0) return true;
      MatrixQ both(a.dim(), r + s.cols());
      both << rad, s;
      return rank(both) == r;
    };
    CHECK(inRad(product_space(a, all, rad)));
    CHECK(inRad(product_space(a, rad, all)));
    Subspace p = rad;
    Index k = 1;
    while (p.cols() > 0 && k <= a.dim()) {
      p = product_space(a, p, rad);
      ++k;
    }
    CHECK(p.cols() == 0);
  }
}

TEST_CASE("JSON round trip") {
  const FinDimAlgebra a = two_cycle_radical_square_zero();
  const FinDimAlgebra b = algebra_from_json(to_json(a));
  CHECK(to_json(b) == to_json(a));
  CHECK_THROWS_AS(algebra_from_json(nlohmann::json::parse(R"({"dim": 2})")), InputError);
}

TEST_CASE("self-injectivity of commutative algebras that are not split") {
  // Q[x]/(x^2 - 2) is a field, so the idempotent search over Q cannot split it.
  auto vec = [](int a, int b) {
    VectorQ v(2);
    v << Rational(a), Rational(b);
    return v;
  };
  const auto field = FinDimAlgebra::from_table({"1", "x"}, {{vec(1, 0), vec(0, 1)}, {vec(0, 1), vec(2, 0)}}, vec(1, 0));
  CHECK_THROWS_AS(primitive_idempotents(field), RefusalError);
  CHECK(is_self_injective(field));
}
