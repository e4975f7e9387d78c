#include "oracles/macaulay.hpp"
#include "qpalg/hypersurf.hpp"

#include <doctest.h>

using namespace qpalg;

namespace {

const std::vector<std::string> xyuv{"x", "y", "u", "v"};
const std::vector<std::string> xy{"x", "y"};

CommPoly P(const std::string& text, const std::vector<std::string>& vars) { return parse_poly(text, vars); }

} // namespace

TEST_CASE("polynomial arithmetic and printing") {
  const auto f = P("(x + y)^2 - 2*x*y", xy);
  CHECK(f == P("x^2 + y^2", xy));
  CHECK(to_string(P("3*x^2*y - y + 1/2", xy)) == "3*x^2*y - y + 1/2");
  CHECK(P("x^3*y", xy).derivative(0) == P("3*x^2*y", xy));
  CHECK(P("x - x", xy).is_zero());
  CHECK_THROWS_AS(P("x + z", xy), InputError);
  CHECK_THROWS_AS(parse_poly("x", {"x", "x"}), InputError);
}

TEST_CASE("degrevlex order") {
  DegRevLexGreater gt;
  CHECK(gt({2, 0, 0}, {0, 0, 1}));
  CHECK(gt({1, 1, 0}, {1, 0, 1}));  // degrevlex: smaller last exponent wins
  CHECK(gt({0, 2, 0}, {1, 0, 1}));
  CHECK_FALSE(gt({1, 0, 1}, {1, 0, 1}));
}

TEST_CASE(".poly files") {
  const auto g = parse_poly_file("# comment\npoly: x^2+y^2+u^2+v^6 vars x,y,u,v\n");
  CHECK(g == P("x^2+y^2+u^2+v^6", xyuv));
  const auto h = parse_poly_file("poly: x*y\nvars x, y\n");
  CHECK(h.vars() == xy);
  CHECK_THROWS_AS(parse_poly_file("vars x"), InputError);
  CHECK_THROWS_AS(parse_poly_file("poly: x^2"), InputError);
  CHECK_THROWS_AS(parse_poly_file("poly: x^2 vars x\nbogus"), InputError);
}

TEST_CASE("Groebner bases are reduced and deterministic") {
  const auto gb = groebner_basis({P("x^2 - y", xy), P("x*y - 1", xy)});
  for (const auto& g : gb) {
    CHECK(g.lead_coefficient() == 1);
    for (const auto& h : gb)
      if (&g != &h)
        for (const auto& [m, c] : g.terms()) {
          bool div = true;
          for (std::size_t i = 0; i < m.size(); ++i) div = div && h.lead()[i] <= m[i];
          CHECK_FALSE(div);
        }
  }
  CHECK(normal_form(P("x^3", xy), gb) == P("1", xy));
  CHECK(groebner_basis({P("x*y - 1", xy), P("x^2 - y", xy)}) == gb);
  const std::vector<std::string> ab{"a", "b"};
  const auto renamed = groebner_basis({P("a^2 - b", ab), P("a*b - 1", ab)});
  REQUIRE(renamed.size() == gb.size());
  for (std::size_t k = 0; k < gb.size(); ++k) CHECK(renamed[k].terms() == gb[k].terms());
}

TEST_CASE("Milnor algebras") {
  const auto morse = milnor_algebra(P("x^2 + y^2 + u^2 + v^2", xyuv));
  CHECK(morse.exact);
  CHECK(morse.dim() == 1);
  CHECK(morse.basis_strings() == std::vector<std::string>{"1"});
  for (int n = 1; n <= 5; ++n) {
    const auto m = milnor_algebra(dw_polynomial(n));
    CHECK(m.exact);
    std::vector<std::string> expect{"1"};
    for (int k = 1; k <= 2 * n - 2; ++k) expect.push_back(k == 1 ? "v" : "v^" + std::to_string(k));
    CHECK(m.basis_strings() == expect);
    CHECK(m.warning.empty());
  }
  CHECK(milnor_algebra(P("x*y", xy)).dim() == 1);
  CHECK_THROWS_AS(milnor_algebra(P("x + y^2", xy)), InputError);
  CHECK_THROWS_AS(milnor_algebra(P("1 + x^2", xy)), InputError);
}

TEST_CASE("non-isolated singularities are flagged truncated") {
  const auto m = milnor_algebra(P("x^2", xy));
  CHECK_FALSE(m.exact);
  CHECK(m.reached_degree > 0);
  CHECK_THROWS_AS(kg_module(P("x^2*y^2", xy)), RefusalError);
  CHECK_THROWS_AS(stable_hh(P("x^2", xy), 4), RefusalError);
}

TEST_CASE("zeros away from the origin are reported") {
  const auto m = milnor_algebra(P("x^5 + x^2*y^2 + y^5", xy));
  CHECK(m.exact);
  CHECK_FALSE(m.warning.empty());
  CHECK(milnor_algebra(P("x^3 + y^3", xy)).warning.empty());
}

TEST_CASE("Tyurina algebras") {
  const auto g = P("x^3 + y^3", xy);
  CHECK(tyurina_algebra(g).dim() == milnor_algebra(g).dim());
  CHECK(milnor_algebra(g).dim() == 4);
  const auto xyg = P("x*y", xy);
  CHECK(tyurina_algebra(xyg).dim() == milnor_algebra(xyg).dim());

  // Not weighted homogeneous: both numbers are reported, Tyurina strictly smaller.
  const auto t = P("x^5 + x^2*y^2 + y^5", xy);
  const auto mt = milnor_algebra(t), tt = tyurina_algebra(t);
  CHECK(tt.dim() < mt.dim());
  CHECK(tt.dim() == oracle::tyurina({{{5, 0}, 1}, {{2, 2}, 1}, {{0, 5}, 1}}, 2, 14));
  CHECK(oracle::milnor({{{5, 0}, 1}, {{2, 2}, 1}, {{0, 5}, 1}}, 2, 14) == 11);

  // E12: the global Milnor algebra also sees a second critical point (with g != 0 there).
  const auto u = P("x^3 + y^7 + x*y^5", xy);
  const oracle::CommTerms uo{{{3, 0}, 1}, {{0, 7}, 1}, {{1, 5}, 1}};
  CHECK(oracle::milnor(uo, 2, 14) == 12);
  CHECK(oracle::tyurina(uo, 2, 14) == 11);
  CHECK_FALSE(milnor_algebra(u).warning.empty());
  CHECK(tyurina_algebra(u).dim() == 11);
}

TEST_CASE("DW family against the Macaulay oracle") {
  for (int n = 1; n <= 5; ++n) {
    const auto g = dw_polynomial(n);
    const long o = oracle::tyurina(oracle::dw(n), 4, 2 * n + 2);
    CHECK(o == 2 * n - 1);
    CHECK(oracle::milnor(oracle::dw(n), 4, 2 * n + 2) == 2 * n - 1);
    const auto t = tyurina_algebra(g);
    CHECK(t.exact);
    CHECK(t.dim() == o);
    const auto k = kg_module(g);
    CHECK(k.dim == o);
    CHECK(k.cokernel_dim == o);
    CHECK(k.tyurina_dim == o);
  }
}

TEST_CASE("K_g") {
  const auto morse = kg_module(P("x^2 + y^2", xy));
  CHECK(morse.dim == 1);
  for (const auto& text : {"x^3 + y^3", "x^5 + x^2*y^2 + y^5", "x^3 + y^7 + x*y^5", "x^3 + x*y^4"}) {
    const auto g = P(text, xy);
    const auto k = kg_module(g);
    CHECK(k.dim == k.cokernel_dim);
    CHECK(k.dim == tyurina_algebra(g).dim());
    CHECK(static_cast<Index>(k.basis.size()) == k.dim);
  }
}

TEST_CASE("stable Hochschild cohomology") {
  const auto g = dw_polynomial(2);
  CHECK(stable_hh(g, 6) == 3);
  CHECK(stable_hh(g, 7) == 3);
  CHECK(stable_hh(g, 4) == 3);
  CHECK_THROWS_AS(stable_hh(g, 3), RefusalError);
  const auto morse = P("x^2 + y^2 + u^2 + v^2", xyuv);
  for (int r = 4; r <= 9; ++r) CHECK(stable_hh(morse, r) == 1);
  const auto t = P("x^5 + x^2*y^2 + y^5", xy);
  for (int r = 2; r <= 8; ++r) CHECK(stable_hh(t, r) == stable_hh(t, r + 2));
}

TEST_CASE("finite quotients as algebras") {
  const auto m = milnor_algebra(dw_polynomial(3));
  const FinDimAlgebra a = as_algebra(m);
  CHECK(a.dim() == 5);
  const MatrixQ v = multiplication_matrix(P("v", xyuv), m);
  MatrixQ p = MatrixQ::Identity(5, 5);
  for (int k = 0; k < 5; ++k) p = p * v;
  CHECK(p.isZero());
  CHECK(coordinates(P("x + v^7", xyuv), m).isZero());
}

TEST_CASE("dw_check") {
  struct Row {
    int n;
    Index jac, tyu;
  };
  for (const auto& r : std::vector<Row>{{1, 1, 1}, {2, 2, 3}, {5, 5, 9}}) {
    const auto rep = dw_check(r.n);
    CHECK(rep.jacobi_dim == r.jac);
    CHECK(rep.tyurina_dim == r.tyu);
    CHECK(rep.class_zero);
    CHECK(rep.symmetric);
    CHECK(rep.periodic);
    CHECK(rep.passed());
    CHECK(rep.reasons.empty());
  }
  CHECK_THROWS_AS(dw_check(0), InputError);
}
