#include "qpalg/potential.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace qpalg;
using namespace testutil;

namespace {

Potential pot(const QuiverPtr& q, const std::string& text, int n = 12) { return parse_potential(text, q, n); }

NCSeries ser(const QuiverPtr& q, const std::string& text, int n = 12) { return parse_series(text, q, n); }

ArrowId arrow(const QuiverPtr& q, const std::string& l) { return *q->find_arrow(l); }

} // namespace

TEST_CASE("cyclic derivatives of small potentials") {
  auto x = one_loop();
  CHECK(cyclic_derivative(pot(x, "x^3"), 0) == ser(x, "3*x^2"));
  CHECK(cyclic_derivative(pot(x, "x"), 0) == ser(x, "1"));

  auto c = two_cycle();
  const Potential ab = pot(c, "a*b");
  CHECK(cyclic_derivative(ab, arrow(c, "a")) == ser(c, "b"));
  CHECK(cyclic_derivative(ab, arrow(c, "b")) == ser(c, "a"));

  auto xy = two_loops();
  CHECK(cyclic_derivative(pot(xy, "x*y*x*y"), arrow(xy, "y")) == ser(xy, "2*x*y*x"));
  CHECK(cyclic_derivative(pot(xy, "x*y - y*x"), 0).is_zero());
}

TEST_CASE("potentials are stored modulo rotation") {
  auto q = three_loops();
  CHECK(pot(q, "x*y*z") == pot(q, "y*z*x"));
  CHECK(pot(q, "x*y*z - z*x*y").is_zero());
  CHECK(pot(q, "x*y*z") != pot(q, "x*z*y"));
  auto c = two_cycle();
  CHECK_THROWS_AS(pot(c, "a"), InputError);
  CHECK_THROWS_AS(pot(c, "e_1 + a*b"), InputError);
  CHECK(pot(c, "0").is_zero());
  CHECK(pot(c, "b*a") == pot(c, "a*b"));
}

TEST_CASE("Leibniz rule on powers") {
  auto q = one_loop();
  for (int m = 1; m <= 12; ++m) {
    const Potential w = pot(q, "x^" + std::to_string(m), 14);
    const std::string expected = m == 1 ? "1" : std::to_string(m) + "*x^" + std::to_string(m - 1);
    CHECK(cyclic_derivative(w, 0) == ser(q, expected, 14));
  }
}

TEST_CASE("cyclic derivative agrees with the label-sequence oracle") {
  std::mt19937_64 rng(2024);
  for (const auto& q : {one_loop(), two_loops(), three_loops(), two_cycle()}) {
    const auto nq = naive(*q);
    for (int trial = 0; trial < 150; ++trial) {
      // Random cycles: random walks closed up by rejection.
      Potential w(q, 12);
      oracle::Poly sum[3];
      std::vector<std::pair<PathWord, Rational>> terms;
      std::uniform_int_distribution<int> len(1, 6);
      while (terms.size() < 3) {
        PathWord p = random_path(*q, rng, len(rng));
        if (p.empty() || !p.is_cycle()) continue;
        terms.emplace_back(p, random_rational(rng));
      }
      for (const auto& [p, c] : terms) w.add_cycle(p, c);
      for (ArrowId a = 0; a < q->arrow_count(); ++a) {
        oracle::Poly expect;
        for (const auto& [p, c] : terms) {
          std::vector<std::string> labels;
          for (ArrowId l : p.letters()) labels.push_back(q->arrow(l).label);
          for (const auto& [word, k] : oracle::cyclic_derivative(nq, labels, q->arrow(a).label))
            oracle::add(expect, word, c * k);
        }
        CHECK(naive(cyclic_derivative(w, a)) == expect);
      }
    }
  }
}

TEST_CASE("Jacobi algebras of one-loop potentials") {
  auto q = one_loop();
  const auto jac = jacobi_algebra(pot(q, "1/4*x^4", 10), 10);
  CHECK(jac.exact());
  CHECK(jac.dim() == 3);
  CHECK(hilbert_function(jac.quotient.algebra) == std::vector<Index>{1, 1, 1});

  const auto zero = jacobi_algebra(pot(q, "0", 8), 8);
  CHECK_FALSE(zero.exact());
  CHECK(zero.dim() == 9);
  CHECK_THROWS_AS(canonical_class(pot(q, "0", 8), zero), RefusalError);

  auto [d, cert] = jacobi_dimension(pot(q, "x^3 + x^4", 10), 10);
  CHECK(d == 2);
  CHECK(cert.status == CertificateStatus::Exact);
}

TEST_CASE("two-loop Jacobi algebras") {
  auto q = two_loops();
  const auto jac = jacobi_algebra(pot(q, "1/3*x^3 + 1/2*y^2", 10), 10);
  CHECK(jac.exact());
  CHECK(jac.dim() == 2);
  CHECK(canonical_class(pot(q, "1/3*x^3 + 1/2*y^2", 10), jac).is_zero);

  // Free squares leave alternating words: infinite dimensional.
  CHECK(jacobi_dimension(pot(q, "x^3 + y^3"), 12).second.status == CertificateStatus::Truncated);

  const auto d8 = jacobi_algebra(pot(q, "x^3 + y^3 + x*y*x*y", 14), 14);
  CHECK(d8.exact());
  CHECK(d8.dim() == 8);
}

TEST_CASE("canonical class does not depend on the cyclic representative") {
  auto q = two_loops();
  for (const std::string text : {"x^3 + y^3 + x*y*x*y", "x^2*y - y^3 + x^4", "x^2*y - y^3 + x^4 + x*y*x*y*y"}) {
    const Potential w = pot(q, text, 14);
    const auto jac = jacobi_algebra(w, 14);
    REQUIRE(jac.exact());
    const auto base = canonical_class(w, jac).vector;
    for (std::size_t s = 1; s < 5; ++s) CHECK(canonical_class(w, jac, s).vector == base);
  }
}

TEST_CASE("weighted homogeneity") {
  auto q = two_loops();
  const Potential w = pot(q, "x^3 + y^3 + x*y*x*y");
  CHECK_FALSE(is_weighted_homogeneous(w, {Rational(1, 3), Rational(1, 3)}));
  CHECK(is_weighted_homogeneous(pot(q, "x^3 + y^3"), {Rational(1, 3), Rational(1, 3)}));
  CHECK(is_weighted_homogeneous(pot(q, "x^4 + x*y*y"), {Rational(1, 4), Rational(3, 8)}));
  CHECK_THROWS_AS(is_weighted_homogeneous(w, {Rational(1, 2), Rational(1, 4)}), InputError);
  CHECK_THROWS_AS(is_weighted_homogeneous(w, {Rational(1, 4)}), InputError);

  auto found = find_weights(pot(q, "x*y*x*y + x^4"));
  REQUIRE(found);
  CHECK(is_weighted_homogeneous(pot(q, "x*y*x*y + x^4"), *found));
  CHECK_FALSE(find_weights(pot(one_loop(), "x^3 + x^4")));
  CHECK_FALSE(find_weights(pot(q, "x*y")));  // r_x + r_y = 1 forces a weight >= 1/2
  auto three = find_weights(pot(three_loops(), "x*y*z + x^3 + y^3 + z^3"));
  REQUIRE(three);
  CHECK((*three)[0] == Rational(1, 3));
}

TEST_CASE("Saito test") {
  auto q = one_loop();
  const auto hom = saito_test(pot(q, "x^4"), 12);
  CHECK(hom.class_is_zero);
  CHECK(hom.witness);
  CHECK(hom.jacobi_dim == 3);

  // Right equivalent to x^3 without being homogeneous itself.
  const auto sum = saito_test(pot(q, "x^3 + x^4"), 12);
  CHECK(sum.class_is_zero);
  CHECK_FALSE(sum.witness);

  CHECK_THROWS_AS(saito_test(pot(q, "x^2 + x^3"), 12), RefusalError);
  CHECK_THROWS_AS(saito_test(pot(two_cycle(), "a*b*a*b"), 12), RefusalError);
  CHECK_THROWS_AS(saito_test(pot(two_loops(), "x^3 + y^3"), 12), RefusalError);
}

TEST_CASE("Mather-Yau comparison") {
  auto q = one_loop();
  const auto diff = mather_yau_compare(pot(q, "x^4"), pot(q, "x^5"), 12);
  CHECK_FALSE(diff.all_equal);
  CHECK(diff.verdict == "not right equivalent");
  CHECK(diff.dim[0] == 3);
  CHECK(diff.dim[1] == 4);

  const auto same = mather_yau_compare(pot(q, "x^4"), pot(q, "x^4 + x^7"), 12);
  CHECK(same.all_equal);
  CHECK(same.verdict == "inconclusive (necessary conditions hold)");
  CHECK_THROWS_AS(mather_yau_compare(pot(q, "x^4"), pot(q, "0"), 12), RefusalError);
}

TEST_CASE("right equivalences act by substitution") {
  auto q = one_loop();
  AlgebraMorphism phi{q, 5, {ser(q, "x + x^2", 5)}};
  CHECK(apply_right_equivalence(pot(q, "x^3", 5), phi) == pot(q, "x^3 + 3*x^4 + 3*x^5", 5));
  AlgebraMorphism scale{q, 5, {ser(q, "2*x", 5)}};
  CHECK(apply_right_equivalence(pot(q, "x^3", 5), scale) == pot(q, "8*x^3", 5));
  AlgebraMorphism bad{q, 5, {ser(q, "x^2", 5)}};
  CHECK_THROWS_AS(apply_right_equivalence(pot(q, "x^3", 5), bad), InputError);
}

TEST_CASE("invariants survive random right equivalences") {
  std::mt19937_64 rng(77);
  struct Case {
    QuiverPtr q;
    std::string w;
  };
  const std::vector<Case> cases = {{one_loop(), "x^4 + x^5"},
                                   {two_loops(), "x^3 + y^3 + x*y*x*y"},
                                   {two_loops(), "x^2*y - y^3 + x^4"}};
  const int n = 14;
  for (const auto& c : cases) {
    const Potential w = pot(c.q, c.w, n);
    const auto jw = jacobi_algebra(w, n);
    REQUIRE(jw.exact());
    const auto fw = fingerprint(jw.quotient.algebra);
    const bool cw = canonical_class(w, jw).is_zero;
    for (int t = 0; t < 17; ++t) {
      const auto phi = random_right_equivalence(c.q, n, rng);
      REQUIRE(phi.linear_part_invertible());
      const Potential v = apply_right_equivalence(w, phi);
      const auto jv = jacobi_algebra(v, n);
      REQUIRE(jv.exact());
      const auto fv = fingerprint(jv.quotient.algebra);
      CHECK(fv.dim == fw.dim);
      CHECK(fv.hilbert == fw.hilbert);
      CHECK(fv.center_dim == fw.center_dim);
      CHECK(fv.cocenter_dim == fw.cocenter_dim);
      CHECK(canonical_class(v, jv).is_zero == cw);
    }
  }
}
