#include "oracles/one_loop_ginzburg.hpp"
#include "qpalg/ginzburg.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace qpalg;
using namespace testutil;

namespace {

Potential pot(const QuiverPtr& q, const std::string& text, int n = 12) { return parse_potential(text, q, n); }

Potential pagoda_potential(int n, int truncation) {
  return pot(one_loop(), "1/" + std::to_string(n + 1) + "*x^" + std::to_string(n + 1), truncation);
}

NCSeries on(const DGAPresentation& p, const std::string& text) { return parse_series(text, p.quiver, p.truncation); }

const NCSeries& d_of(const DGAPresentation& p, const std::string& label) {
  return p.differential[static_cast<std::size_t>(*p.quiver->find_arrow(label))];
}

std::vector<QuiverPtr> corpus_quivers() {
  return {one_loop(), two_loops(), three_loops(), two_cycle(),
          quiver("vertices 1,2,3; arrows a:1->2, b:2->3, c:3->1, d:1->1")};
}

// Random cycles of the graded quiver, by rejection.
NCSeries random_cycles(const QuiverPtr& q, int n, std::mt19937_64& rng, int terms) {
  NCSeries s(q, n);
  std::uniform_int_distribution<int> len(1, 5);
  while (static_cast<int>(s.size()) < terms) {
    const PathWord w = random_path(*q, rng, len(rng));
    if (!w.empty() && w.is_cycle()) s.add_term(w, random_rational(rng));
  }
  return s;
}

} // namespace

TEST_CASE("Ginzburg presentation of x^3/3") {
  const auto p = build_ginzburg(pot(one_loop(), "1/3*x^3"));
  const Quiver& q = *p.quiver;
  REQUIRE(q.arrow_count() == 3);
  CHECK(q.arrow(0).label == "x");
  CHECK(q.arrow(1).label == "x'");
  CHECK(q.arrow(1).degree == -1);
  CHECK(q.arrow(2).label == "t_1");
  CHECK(q.arrow(2).degree == -2);
  CHECK(d_of(p, "x").is_zero());
  CHECK(d_of(p, "x'") == on(p, "x^2"));
  CHECK(d_of(p, "t_1") == on(p, "x*x' - x'*x"));
}

TEST_CASE("Ginzburg presentation of the zero potential and of (ab)^2") {
  const auto z = build_ginzburg(pot(two_cycle(), "0"));
  CHECK(d_of(z, "a'").is_zero());
  CHECK(d_of(z, "b'").is_zero());
  CHECK(d_of(z, "t_1") == on(z, "a*a' - b'*b"));
  CHECK(d_of(z, "t_2") == on(z, "b*b' - a'*a"));

  const auto p = build_ginzburg(pot(two_cycle(), "1/2*a*b*a*b"));
  CHECK(d_of(p, "a'") == on(p, "b*a*b"));
  CHECK(d_of(p, "b'") == on(p, "a*b*a"));
}

TEST_CASE("dual labels avoid collisions") {
  auto q = quiver("vertices 1; arrows x:1->1, x':1->1");
  const auto p = build_ginzburg(pot(q, "x^3 + x'^3"));
  CHECK(p.quiver->arrow(2).label == "x''");
  CHECK(p.quiver->arrow(3).label == "x'''");
  CHECK(p.quiver->arrow(4).label == "t_1");
}

TEST_CASE("d squares to zero") {
  std::mt19937_64 rng(11);
  for (const auto& q : corpus_quivers()) {
    for (int trial = 0; trial < 6; ++trial) {
      Potential w(q, 10);
      const NCSeries c = random_cycles(q, 10, rng, 4);
      for (const auto& [word, x] : c.terms()) w.add_cycle(word, x);
      const auto p = build_ginzburg(w);
      CHECK(check_d_squared(p, 10));
    }
  }
  for (int n = 2; n <= 5; ++n) CHECK(check_d_squared(pagoda_model(n, 20), 20));
  CHECK(check_d_squared(build_ginzburg(pagoda_potential(3, 24)), 24));

  auto bad = build_ginzburg(pot(one_loop(), "1/3*x^3"));
  bad.override_differential("x'", "x^2 + x'");
  CHECK_FALSE(check_d_squared(bad, 12));
  CHECK_FALSE(bad.potential.has_value());
  CHECK_THROWS_AS(bad.override_differential("y'", "x"), InputError);
}

TEST_CASE("homology of the one-loop cubic and quartic") {
  const auto p3 = build_ginzburg(pagoda_potential(2, 12));
  const auto h0 = homology(p3, 0, 12);
  CHECK(h0.dim == 2);
  CHECK(h0.graded);
  CHECK(h0.certificate == CertificateStatus::Exact);
  CHECK(h0.basis == std::vector<std::string>{"e_1", "x"});
  CHECK(homology(p3, -1, 12).dim == 0);
  CHECK(homology(p3, -2, 12).dim == 2);

  const auto p4 = build_ginzburg(pagoda_potential(3, 12));
  CHECK(homology(p4, 0, 12).dim == 3);
  CHECK(homology(p4, -1, 12).dim == 0);
  CHECK_THROWS_AS(homology(p4, 1, 12), InputError);
}

TEST_CASE("homology agrees with the string oracle") {
  for (int n = 1; n <= 3; ++n) {
    const oracle::OneLoopGinzburg o(n);
    const auto p = build_ginzburg(pagoda_potential(n, 8));
    for (int i = 0; i >= -4; --i) CHECK(homology(p, i, 8).dim == o.homology(i, 8));
  }
}

TEST_CASE("degree-0 homology is the Jacobi algebra") {
  struct Case {
    QuiverPtr q;
    std::string w;
  };
  for (const auto& c : std::vector<Case>{{one_loop(), "x^5"},
                                         {two_cycle(), "a*b*a*b"},
                                         {two_cycle(), "a*b*a*b*a*b"},
                                         {two_loops(), "x^2*y + y^4"},
                                         {one_loop(), "x^3 + x^4"}}) {
    const Potential w = pot(c.q, c.w, 14);
    const auto jac = jacobi_dimension(w, 14);
    REQUIRE(jac.second.status == CertificateStatus::Exact);
    const auto h = homology(build_ginzburg(w), 0, 14);
    CHECK(h.dim == static_cast<Index>(jac.first));
    CHECK(h.certificate == CertificateStatus::Exact);
  }
}

TEST_CASE("ungraded potentials use the stable image") {
  const auto p = build_ginzburg(pot(one_loop(), "x^3 + x^4", 10));
  CHECK_FALSE(dg_weights(p));
  const auto h0 = homology(p, 0, 10);
  CHECK_FALSE(h0.graded);
  CHECK(h0.dim == 2);
  CHECK(h0.stabilized);
  CHECK(homology(p, -1, 10).dim == 0);
  CHECK(homology(p, -2, 10).dim == 2);
}

TEST_CASE("the zero potential does not stabilise") {
  const auto p = build_ginzburg(pot(one_loop(), "0", 8));
  const auto h = homology(p, 0, 8);
  CHECK_FALSE(h.stabilized);
  CHECK(h.certificate == CertificateStatus::Truncated);
  CHECK_FALSE(h.warning.empty());
}

TEST_CASE("Pagoda model homology and quasi-isomorphism") {
  CHECK(homology(pagoda_model(1), 0, 16).dim == 1);
  for (int n = 1; n <= 6; ++n) {
    const auto model = pagoda_model(n, 16);
    const auto g = build_ginzburg(pagoda_potential(n, 16));
    for (int i = 0; i >= -8; --i) {
      const auto hm = homology(model, i, 16);
      CHECK(hm.dim == (i % 2 == 0 ? n : 0));
      CHECK(hm.certificate == CertificateStatus::Exact);
      if (n <= 4) CHECK(homology(g, i, 16).dim == hm.dim);
    }
  }
}

TEST_CASE("u acts by theta^2") {
  CHECK(verify_u_action(2, 16));
  CHECK(verify_u_action(5, 20));
  auto bad = pagoda_model(3, 12);
  bad.override_differential("x", "x");
  CHECK_FALSE(verify_u_action(bad, 12));
  auto odd = pagoda_model(3, 12);
  odd.override_differential("x'", "x^3 + x'*x'*x'*x");
  CHECK_FALSE(verify_u_action(odd, 12));
}

TEST_CASE("del1 and del0 on small inputs") {
  const auto p = build_ginzburg(pot(one_loop(), "1/3*x^3"));
  const QuiverPtr& q = p.quiver;
  const PathWord x = PathWord::single(*q, 0);
  Tensor xt{{x, on(p, "x'")}};
  CHECK(del1(xt, q, p.truncation) == on(p, "x*x' - x'*x"));
  Tensor ex{{PathWord::idempotent(0), on(p, "x*x'")}};
  CHECK(del1(ex, q, p.truncation).is_zero());

  auto c = build_ginzburg(pot(two_cycle(), "0"));
  Tensor ae{{PathWord::single(*c.quiver, 0), on(c, "e_1")}};
  CHECK(del1(ae, c.quiver, c.truncation).is_zero());  // a*e_1 does not compose

  const Tensor d0 = del0(on(p, "x^3"));
  REQUIRE(d0.size() == 1);
  CHECK(d0.at(x) == on(p, "3*x^2"));
  CHECK(del1(d0, q, p.truncation).is_zero());
  CHECK(del0(del1(xt, q, p.truncation)).empty());
  CHECK_THROWS_AS(del0(on(c, "a")), InputError);
}

TEST_CASE("del0 del1 = 0 = del1 del0 on random graded tensors") {
  std::mt19937_64 rng(99);
  for (const auto& base : corpus_quivers()) {
    const auto p = build_ginzburg(pot(base, "0", 8));
    const QuiverPtr& q = p.quiver;
    for (int trial = 0; trial < 100; ++trial) {
      const NCSeries cyc = random_cycles(q, 8, rng, 3);
      CHECK(del1(del0(cyc), q, 8).is_zero());
      Tensor t;
      for (int k = 0; k < 3; ++k) {
        const PathWord v = random_path(*q, rng, 1);
        NCSeries a = random_series(q, 8, rng, 4, 0, 4);
        auto [it, fresh] = t.try_emplace(v, q, 8);
        it->second += a;
      }
      CHECK(del0(del1(t, q, 8)).empty());
    }
  }
}

TEST_CASE("S(t) identities") {
  struct Case {
    QuiverPtr q;
    std::string w;
  };
  for (const auto& c : std::vector<Case>{{one_loop(), "1/3*x^3"},
                                         {one_loop(), "x^4"},
                                         {two_cycle(), "1/2*a*b*a*b"},
                                         {two_loops(), "x^3 + y^3 + x*y*x*y"},
                                         {two_loops(), "x*y*y - 2*x^3"},
                                         {three_loops(), "x*y*z - x*z*y"},
                                         {one_loop(), "0"}}) {
    const auto rep = verify_S_of_t(pot(c.q, c.w));
    CHECK(rep.dt_identity);
    CHECK(rep.dual_identity);
  }
}
