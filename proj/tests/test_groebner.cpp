#include "oracles/truncated_ideal.hpp"
#include "qpalg/groebner.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace qpalg;
using namespace testutil;

namespace {

oracle::TruncatedIdeal brute_force(const QuiverPtr& q, const std::vector<NCSeries>& gens, int n) {
  std::vector<oracle::Poly> g;
  for (const auto& s : gens) g.push_back(naive(s.truncated(n)));
  static std::vector<oracle::NaiveQuiver> keep;  // the oracle keeps a reference
  keep.push_back(naive(*q));
  return oracle::TruncatedIdeal(keep.back(), q->vertices(), g, static_cast<std::size_t>(n));
}

} // namespace

TEST_CASE("monomial ideal x^2") {
  auto q = one_loop();
  auto r = groebner({parse_series("x^2", q, 10)}, 10);
  REQUIRE(r.rules.size() == 1);
  CHECK(to_string(*q, r.rules[0].lead) == "x*x");
  CHECK(r.rules[0].tail.is_zero());
  auto quot = quotient_algebra(r);
  CHECK(quot.algebra.dim() == 2);
  CHECK(quot.certificate.status == CertificateStatus::Exact);
  CHECK(normal_form(parse_series("x^5", q, 10), r).is_zero());
}

TEST_CASE("x^3 + x^4 collapses to x^3 = 0") {
  auto q = one_loop();
  auto r = groebner({parse_series("x^3 + x^4", q, 8)}, 8);
  REQUIRE(r.rules.size() == 1);
  CHECK(to_string(*q, r.rules[0].lead) == "x*x*x");
  CHECK(r.rules[0].tail.is_zero());
  auto words = normal_words(r);
  CHECK(words.size() == 3);
  CHECK(normal_form(parse_series("x^3", q, 8), r).is_zero());
  CHECK(quotient_algebra(r).certificate.status == CertificateStatus::Exact);
}

TEST_CASE("x^3 rewrites through -x^4 at truncation 4") {
  auto q = one_loop();
  ReductionSystem r{q, 4, {{*PathWord::from_letters(*q, {0, 0, 0}), parse_series("-x^4", q, 4)}}};
  // Chained rewriting x^3 -> -x^4 -> x^5 (dropped) ends at zero.
  CHECK(normal_form(parse_series("x^3", q, 4), r).is_zero());
  CHECK(normal_form(parse_series("x^4", q, 4), r).is_zero());
  auto full = groebner({parse_series("x^3 + x^4", q, 4)}, 4);
  CHECK(normal_form(parse_series("x^3", q, 4), full).is_zero());
}

TEST_CASE("commutative ring stays truncated") {
  auto q = two_loops();
  for (int n : {6, 8, 10}) {
    auto r = groebner({parse_series("x*y - y*x", q, n)}, n);
    const auto cert = certify(r);
    CHECK(cert.status == CertificateStatus::Truncated);
    CHECK_FALSE(cert.ufnarovski_acyclic);
    // Normal words y^a x^b of length <= n.
    CHECK(cert.normal_word_count == static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  }
}

TEST_CASE("commutative quotient by y and x^2") {
  auto q = two_loops();
  auto r = groebner({parse_series("x*y - y*x", q, 10), parse_series("y", q, 10), parse_series("x^2", q, 10)}, 10);
  auto quot = quotient_algebra(r);
  CHECK(quot.algebra.dim() == 2);
  CHECK(quot.certificate.status == CertificateStatus::Exact);
}

TEST_CASE("constant generators and idempotents") {
  auto q = two_cycle();
  CHECK_THROWS_AS(groebner({parse_series("e_1 + a*b", q, 6)}, 6), InputError);
  auto r = groebner({parse_series("a*b*a", q, 6)}, 6);
  CHECK(normal_form(NCSeries::idempotent(q, 6, 0), r) == NCSeries::idempotent(q, 6, 0));
}

TEST_CASE("quotient dimensions match brute-force elimination") {
  struct Case {
    QuiverPtr q;
    std::vector<std::string> gens;
    int n;
  };
  const std::vector<Case> cases = {
      {one_loop(), {"x^3 + x^4"}, 7},
      {one_loop(), {"x^2 - 3*x^5"}, 8},
      {two_loops(), {"x*x", "y"}, 6},
      {two_loops(), {"x*y - y*x"}, 6},
      {two_loops(), {"x*y + y*x", "x*x - y*y"}, 6},
      {two_loops(), {"x*x + y*y*y", "y*x"}, 6},
      {two_cycle(), {"b*a*b", "a*b*a"}, 7},
      {two_cycle(), {"b*a*b - b*a*b*a*b", "a*b*a"}, 8},
      {three_loops(), {"y*z - z*y", "z*x - x*z", "x*y - y*x"}, 4},
  };
  for (const auto& c : cases) {
    std::vector<NCSeries> gens;
    for (const auto& g : c.gens) gens.push_back(parse_series(g, c.q, c.n));
    auto r = groebner(gens, c.n);
    CHECK(check_confluence(r));
    const auto oracle = brute_force(c.q, gens, c.n);
    CHECK(normal_words(r).size() == oracle.quotient_dim());
    for (const auto& g : gens) CHECK(normal_form(g, r).is_zero());
  }
}

TEST_CASE("normal form is a linear idempotent projection along the ideal") {
  std::mt19937_64 rng(5);
  auto q = two_loops();
  const int n = 6;
  std::vector<NCSeries> gens{parse_series("x*x + y*y*y", q, n), parse_series("y*x - 2*x*y", q, n)};
  auto r = groebner(gens, n);
  const auto oracle = brute_force(q, gens, n);
  for (int t = 0; t < 30; ++t) {
    NCSeries s = random_series(q, n, rng, 6, 0, 6);
    NCSeries u = random_series(q, n, rng, 6, 0, 6);
    NCSeries nf = normal_form(s, r);
    CHECK(normal_form(nf, r) == nf);
    CHECK(normal_form(s + u, r) == nf + normal_form(u, r));
    CHECK(oracle.contains(naive(s - nf)));
  }
}

TEST_CASE("exact certificates are stable under larger truncation") {
  auto q = two_cycle();
  for (int n : {10, 12}) {
    auto r1 = groebner({parse_series("2*b*a*b", q, n), parse_series("2*a*b*a", q, n)}, n);
    auto r2 = groebner({parse_series("2*b*a*b", q, n + 5), parse_series("2*a*b*a", q, n + 5)}, n + 5);
    auto q1 = quotient_algebra(r1);
    auto q2 = quotient_algebra(r2);
    REQUIRE(q1.certificate.status == CertificateStatus::Exact);
    CHECK(q1.basis.size() == q2.basis.size());
    CHECK(to_json(q1.algebra) == to_json(q2.algebra));
  }
}

TEST_CASE("dimension is non-increasing once the order passes the relations") {
  auto q = two_loops();
  std::size_t prev = 0;
  for (int n = 4; n <= 9; ++n) {
    auto r = groebner({parse_series("x*x - y*y*y", q, n), parse_series("x*y", q, n), parse_series("y*x", q, n)}, n);
    const std::size_t d = normal_words(r).size();
    if (n > 6) CHECK(d <= prev);
    prev = d;
  }
}

TEST_CASE("basis cap") {
  auto q = three_loops();
  auto r = groebner({NCSeries(q, 12)}, 12);
  CHECK_THROWS_AS(normal_words(r, 1000), RefusalError);
}
