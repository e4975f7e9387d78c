#include "qpalg/potential.hpp"

#include "qpalg/lp.hpp"
#include "qpalg/parse.hpp"

namespace qpalg {

PathWord canonical_rotation(const Quiver& q, const PathWord& cycle) {
  if (!cycle.is_cycle()) throw InputError("canonical_rotation of a path that is not a cycle");
  PathWord best = cycle;
  for (std::size_t k = 1; k < cycle.length(); ++k) {
    PathWord r = cycle.rotated(q, k);
    if (r < best) best = std::move(r);
  }
  return best;
}

Potential::Potential(QuiverPtr q, int truncation) : quiver_(std::move(q)), truncation_(truncation) {
  if (!quiver_) throw InputError("potential needs a quiver");
}

Potential Potential::from_series(const NCSeries& s) {
  Potential w(s.quiver_ptr(), s.truncation());
  for (const auto& [word, c] : s.terms()) {
    if (word.empty()) throw InputError("potential has a constant term");
    if (!word.is_cycle())
      throw InputError("potential monomial '" + to_string(s.quiver(), word) + "' is not a cycle");
    w.add_cycle(word, c);
  }
  return w;
}

void Potential::add_cycle(const PathWord& cycle, const Rational& c) {
  if (cycle.empty() || !cycle.is_cycle()) throw InputError("potential terms must be cycles of positive length");
  if (c == 0 || static_cast<int>(cycle.length()) > truncation_) return;
  const PathWord key = canonical_rotation(*quiver_, cycle);
  auto [it, fresh] = cycles_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) cycles_.erase(it);
  }
}

int Potential::order() const { return cycles_.empty() ? 0 : static_cast<int>(cycles_.begin()->first.length()); }
int Potential::max_length() const {
  return cycles_.empty() ? 0 : static_cast<int>(cycles_.rbegin()->first.length());
}

NCSeries Potential::as_series(int truncation, std::size_t shift) const {
  NCSeries s(quiver_, truncation);
  for (const auto& [w, c] : cycles_) s.add_term(shift ? w.rotated(*quiver_, shift % w.length()) : w, c);
  return s;
}

Potential parse_potential(std::string_view text, const QuiverPtr& q, int truncation) {
  return Potential::from_series(parse_series(text, q, truncation));
}

std::string to_string(const Potential& w) { return to_string(w.as_series()); }

NCSeries cyclic_derivative(const Potential& w, ArrowId a, int truncation) {
  const Quiver& q = w.quiver();
  if (a < 0 || a >= q.arrow_count()) throw InputError("cyclic_derivative: unknown arrow");
  NCSeries out(w.quiver_ptr(), truncation);
  for (const auto& [p, c] : w.cycles()) {
    const std::size_t n = p.length();
    if (static_cast<int>(n) - 1 > truncation) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (p[k] != a) continue;
      if (n == 1) {
        out.add_term(PathWord::idempotent(q.arrow(a).target), c);
        continue;
      }
      // p = u a v contributes v u: the rotation starting right after a, minus a.
      const PathWord r = p.rotated(q, (k + 1) % n);
      out.add_term(r.subword(q, 0, n - 1), c);
    }
  }
  return out;
}

namespace {

std::vector<NCSeries> jacobian_relations(const Potential& w, int truncation) {
  std::vector<NCSeries> rels;
  for (ArrowId a = 0; a < w.quiver().arrow_count(); ++a) rels.push_back(cyclic_derivative(w, a, truncation));
  rels.emplace_back(w.quiver_ptr(), truncation);
  return rels;
}

} // namespace

JacobiAlgebra jacobi_algebra(const Potential& w, int truncation) {
  ReductionSystem sys = groebner(jacobian_relations(w, truncation), truncation);
  Quotient quot = quotient_algebra(sys);
  return {std::move(sys), std::move(quot)};
}

std::pair<std::size_t, QuotientCertificate> jacobi_dimension(const Potential& w, int truncation, std::size_t cap) {
  const ReductionSystem sys = groebner(jacobian_relations(w, truncation), truncation);
  QuotientCertificate cert = certify(sys, cap);
  return {cert.normal_word_count, cert};
}

CanonicalClass canonical_class(const Potential& w, const JacobiAlgebra& jac, std::size_t shift) {
  if (!jac.exact())
    throw RefusalError("canonical class needs an exact Jacobi algebra (" + jac.quotient.certificate.reason + ")");
  const int n = jac.system.truncation;
  CanonicalClass out;
  out.normal_coordinates = coordinates(w.as_series(n, shift), jac.system, jac.quotient.basis);
  const CommutatorQuotient cq = commutator_quotient(jac.quotient.algebra);
  const Index d = jac.dim();
  MatrixQ frame(d, d);
  frame.leftCols(cq.commutators.cols()) = cq.commutators;
  for (std::size_t k = 0; k < cq.lifted.size(); ++k)
    frame.col(cq.commutators.cols() + static_cast<Index>(k)) = VectorQ::Unit(d, cq.lifted[k]);
  const auto y = solve(frame, out.normal_coordinates);
  if (!y) throw Error("commutator frame is singular");
  out.vector = y->tail(static_cast<Index>(cq.lifted.size()));
  out.is_zero = out.vector.isZero();
  return out;
}

bool is_weighted_homogeneous(const Potential& w, const WeightVector& r) {
  const Quiver& q = w.quiver();
  if (static_cast<int>(r.size()) != q.arrow_count()) throw InputError("weight vector needs one entry per arrow");
  for (const auto& x : r)
    if (!(x > 0 && x < Rational(1, 2))) throw InputError("weights must lie strictly between 0 and 1/2");
  for (const auto& [p, c] : w.cycles()) {
    Rational total = 0;
    for (ArrowId a : p.letters()) total += r[static_cast<std::size_t>(a)];
    if (total != 1) return false;
  }
  return true;
}

std::optional<WeightVector> find_weights(const Potential& w) {
  const Quiver& q = w.quiver();
  const Index m = q.arrow_count();
  const auto cycles = static_cast<Index>(w.cycles().size());
  // Variables: r (m), eps (1), s (m), u (m).
  const Index vars = 3 * m + 1;
  const Index eps = m;
  MatrixQ a = MatrixQ::Zero(cycles + 2 * m, vars);
  VectorQ b = VectorQ::Zero(cycles + 2 * m);
  Index row = 0;
  for (const auto& [p, c] : w.cycles()) {
    for (ArrowId x : p.letters()) a(row, x) += 1;
    b(row++) = 1;
  }
  for (Index k = 0; k < m; ++k) {
    a(row, k) = 1;  // r - eps - s = 0
    a(row, eps) = -1;
    a(row, m + 1 + k) = -1;
    b(row++) = 0;
    a(row, k) = 1;  // r + eps + u = 1/2
    a(row, eps) = 1;
    a(row, 2 * m + 1 + k) = 1;
    b(row++) = Rational(1, 2);
  }
  VectorQ cost = VectorQ::Zero(vars);
  cost(eps) = 1;
  const auto sol = lp_maximize(a, b, cost);
  if (!sol || (*sol)(eps) <= 0) return std::nullopt;
  WeightVector r;
  for (Index k = 0; k < m; ++k) r.push_back((*sol)(k));
  return r;
}

SaitoReport saito_test(const Potential& w, int truncation) {
  if (w.quiver().vertex_count() != 1)
    throw RefusalError("saito_test is only defined for one-vertex quivers");
  if (!w.is_zero() && w.order() < 3) throw RefusalError("saito_test needs a potential with only cubic and higher terms");
  const JacobiAlgebra jac = jacobi_algebra(w, truncation);
  if (!jac.exact())
    throw RefusalError("saito_test needs a finite-dimensional Jacobi algebra (" + jac.quotient.certificate.reason + ")");
  SaitoReport rep;
  rep.jacobi_dim = jac.dim();
  rep.class_is_zero = canonical_class(w, jac).is_zero;
  rep.witness = find_weights(w);
  return rep;
}

MatherYauReport mather_yau_compare(const Potential& w1, const Potential& w2, int truncation) {
  MatherYauReport rep;
  const Potential* ws[2] = {&w1, &w2};
  for (int k = 0; k < 2; ++k) {
    const JacobiAlgebra jac = jacobi_algebra(*ws[k], truncation);
    if (!jac.exact())
      throw RefusalError("mather_yau_compare needs exact Jacobi algebras (potential " + std::to_string(k + 1) + ": " +
                         jac.quotient.certificate.reason + ")");
    rep.dim[k] = jac.dim();
    rep.hilbert[k] = hilbert_function(jac.quotient.algebra);
    rep.cocenter_dim[k] = commutator_quotient(jac.quotient.algebra).dim;
    rep.class_is_zero[k] = canonical_class(*ws[k], jac).is_zero;
  }
  rep.all_equal = rep.dim[0] == rep.dim[1] && rep.hilbert[0] == rep.hilbert[1] &&
                  rep.cocenter_dim[0] == rep.cocenter_dim[1] && rep.class_is_zero[0] == rep.class_is_zero[1];
  rep.verdict = rep.all_equal ? "inconclusive (necessary conditions hold)" : "not right equivalent";
  return rep;
}

Potential apply_right_equivalence(const Potential& w, const AlgebraMorphism& phi) {
  if (phi.truncation != w.truncation()) throw InputError("apply_right_equivalence: truncation mismatch");
  return Potential::from_series(substitute(w.as_series(), phi, true));
}

AlgebraMorphism random_right_equivalence(const QuiverPtr& q, int truncation, std::mt19937_64& rng,
                                         int max_extra_length) {
  AlgebraMorphism phi{q, truncation, {}};
  for (ArrowId a = 0; a < q->arrow_count(); ++a) phi.images.emplace_back(q, truncation);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (VertexId i = 0; i < q->vertex_count(); ++i)
    for (VertexId j = 0; j < q->vertex_count(); ++j) {
      std::vector<ArrowId> block;
      for (ArrowId a = 0; a < q->arrow_count(); ++a)
        if (q->arrow(a).source == i && q->arrow(a).target == j) block.push_back(a);
      if (block.empty()) continue;
      const auto k = static_cast<Index>(block.size());
      MatrixQ m(k, k);
      do {
        for (Index r = 0; r < k; ++r)
          for (Index c = 0; c < k; ++c) m(r, c) = coef(rng);
      } while (determinant(m) == 0);
      for (Index r = 0; r < k; ++r)
        for (Index c = 0; c < k; ++c)
          phi.images[static_cast<std::size_t>(block[static_cast<std::size_t>(r)])].add_term(
              PathWord::single(*q, block[static_cast<std::size_t>(c)]), m(r, c));
    }
  // Higher terms: random walks of length 2..max that happen to be parallel.
  std::uniform_int_distribution<int> len(2, std::max(2, max_extra_length));
  for (ArrowId a = 0; a < q->arrow_count(); ++a) {
    const Arrow& ar = q->arrow(a);
    for (int attempt = 0; attempt < 6; ++attempt) {
      const int l = len(rng);
      VertexId v = ar.source;
      std::vector<ArrowId> letters;
      for (int s = 0; s < l; ++s) {
        std::vector<ArrowId> out;
        for (ArrowId b = 0; b < q->arrow_count(); ++b)
          if (q->arrow(b).source == v) out.push_back(b);
        if (out.empty()) break;
        const ArrowId b = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        letters.push_back(b);
        v = q->arrow(b).target;
      }
      if (static_cast<int>(letters.size()) != l || v != ar.target) continue;
      const int c = coef(rng);
      if (c != 0) phi.images[static_cast<std::size_t>(a)].add_term(*PathWord::from_letters(*q, letters), c);
    }
  }
  return phi;
}

} // namespace qpalg
