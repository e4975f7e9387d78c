#include "qpalg/ginzburg.hpp"

#include "qpalg/lp.hpp"
#include "qpalg/parse.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace qpalg {

namespace {

using Terms = NCSeries::Terms;
constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

void accumulate(Terms& t, const PathWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

PathWord normalize_word(const Quiver& q, const PathWord& w, WordMode mode) {
  if (mode == WordMode::Free || w.length() < 2) return w;
  std::vector<ArrowId> letters = w.letters();
  std::sort(letters.begin(), letters.end());
  return *PathWord::from_letters(q, std::move(letters));
}

// d of c*w, Leibniz rule, words longer than maxLen dropped.
void d_word(const DGAPresentation& p, const PathWord& w, const Rational& c, Terms& out,
            std::size_t maxLen = kUnbounded) {
  const Quiver& q = *p.quiver;
  long long prefixDeg = 0;
  for (std::size_t k = 0; k < w.length(); ++k) {
    const ArrowId l = w[k];
    const NCSeries& dl = p.differential[static_cast<std::size_t>(l)];
    if (!dl.is_zero()) {
      const Rational sc = c * parity_sign(prefixDeg);
      const PathWord left = w.subword(q, 0, k);
      const PathWord right = w.subword(q, k + 1, w.length() - k - 1);
      for (const auto& [t, x] : dl.terms()) {
        if (left.length() + t.length() + right.length() > maxLen) continue;
        auto lt = concat(left, t);
        auto ltr = lt ? concat(*lt, right) : std::nullopt;
        if (!ltr) throw Error("differential of '" + q.arrow(l).label + "' is not parallel to it");
        accumulate(out, normalize_word(q, *ltr, p.mode), sc * x);
      }
    }
    prefixDeg += q.arrow(l).degree;
  }
}

NCSeries from_terms(const QuiverPtr& q, int truncation, const Terms& t) {
  NCSeries s(q, truncation);
  for (const auto& [w, c] : t) s.add_term(w, c);
  return s;
}

// Moves a series on Q to the quiver qbar whose first arrows and vertices coincide with Q's.
NCSeries transplant(const NCSeries& s, const QuiverPtr& qbar) {
  NCSeries out(qbar, s.truncation());
  for (const auto& [w, c] : s.terms())
    out.add_term(w.empty() ? PathWord::idempotent(w.source()) : *PathWord::from_letters(*qbar, w.letters()), c);
  return out;
}

std::string fresh_label(std::string base, const std::set<std::string>& used) {
  while (used.count(base)) base += '\'';
  return base;
}

} // namespace

NCSeries DGAPresentation::d(const NCSeries& s) const {
  Terms out;
  for (const auto& [w, c] : s.terms()) d_word(*this, w, c, out, static_cast<std::size_t>(s.truncation()));
  return from_terms(s.quiver_ptr(), s.truncation(), out);
}

void DGAPresentation::override_differential(const std::string& label, const std::string& expr) {
  const auto a = quiver->find_arrow(label);
  if (!a) throw InputError("differential for unknown generator '" + label + "'");
  differential[static_cast<std::size_t>(*a)] = parse_series(expr, quiver, truncation);
  potential.reset();
}

DGAPresentation build_ginzburg(const Potential& w) {
  const Quiver& q = w.quiver();
  if (!q.is_ungraded()) throw InputError("build_ginzburg needs a quiver concentrated in degree 0");
  std::set<std::string> used;
  for (const auto& a : q.arrows()) used.insert(a.label);
  std::vector<Arrow> arrows = q.arrows();
  const auto m = static_cast<ArrowId>(arrows.size());
  DGAPresentation p;
  for (ArrowId a = 0; a < m; ++a) {
    const Arrow& src = q.arrow(a);
    const std::string label = fresh_label(src.label + "'", used);
    used.insert(label);
    p.dual.push_back(static_cast<ArrowId>(arrows.size()));
    arrows.push_back({label, src.target, src.source, -1});
  }
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    const std::string label = fresh_label("t_" + q.vertex_name(v), used);
    used.insert(label);
    p.loop.push_back(static_cast<ArrowId>(arrows.size()));
    arrows.push_back({label, v, v, -2});
  }
  p.quiver = std::make_shared<const Quiver>(q.vertices(), arrows);
  p.truncation = w.truncation();
  p.potential = w;
  const int n = w.truncation();
  for (ArrowId a = 0; a < p.quiver->arrow_count(); ++a) p.differential.emplace_back(p.quiver, n);
  for (ArrowId a = 0; a < m; ++a)
    p.differential[static_cast<std::size_t>(p.dual[static_cast<std::size_t>(a)])] =
        transplant(cyclic_derivative(w, a, n), p.quiver);
  for (ArrowId a = 0; a < m; ++a) {
    const PathWord x = PathWord::single(*p.quiver, a);
    const PathWord xs = PathWord::single(*p.quiver, p.dual[static_cast<std::size_t>(a)]);
    const Arrow& ar = q.arrow(a);
    p.differential[static_cast<std::size_t>(p.loop[static_cast<std::size_t>(ar.source)])].add_term(*concat(x, xs), 1);
    p.differential[static_cast<std::size_t>(p.loop[static_cast<std::size_t>(ar.target)])].add_term(*concat(xs, x), -1);
  }
  return p;
}

bool check_d_squared(const DGAPresentation& p, int truncation) {
  const Quiver& q = *p.quiver;
  for (ArrowId g = 0; g < q.arrow_count(); ++g) {
    const NCSeries& dg = p.differential[static_cast<std::size_t>(g)];
    NCSeries cut(p.quiver, truncation);
    for (const auto& [w, c] : dg.terms()) {
      if (w.degree(q) != q.arrow(g).degree + 1) return false;
      if (w.source() != q.arrow(g).source || w.target() != q.arrow(g).target) return false;
      cut.add_term(w, c);
    }
    if (!p.d(cut).is_zero()) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> dg_weights(const DGAPresentation& p) {
  const Quiver& q = *p.quiver;
  const Index m = q.arrow_count();
  std::set<std::vector<int>> rows;
  for (ArrowId g = 0; g < m; ++g)
    for (const auto& [w, c] : p.differential[static_cast<std::size_t>(g)].terms()) {
      std::vector<int> row(static_cast<std::size_t>(m), 0);
      for (ArrowId l : w.letters()) ++row[static_cast<std::size_t>(l)];
      --row[static_cast<std::size_t>(g)];
      if (std::any_of(row.begin(), row.end(), [](int x) { return x != 0; })) rows.insert(row);
      else if (w.length() != 1) return std::nullopt;  // only reachable for w = g itself
    }
  // Variables: omega (m), eps, s (m), u (m); omega - eps - s = 0, omega + u = 1.
  const Index vars = 3 * m + 1;
  const Index eps = m;
  const auto homog = static_cast<Index>(rows.size());
  MatrixQ a = MatrixQ::Zero(homog + 2 * m, vars);
  VectorQ b = VectorQ::Zero(homog + 2 * m);
  Index r = 0;
  for (const auto& row : rows) {
    for (Index k = 0; k < m; ++k) a(r, k) = row[static_cast<std::size_t>(k)];
    ++r;
  }
  for (Index k = 0; k < m; ++k) {
    a(r, k) = 1;
    a(r, eps) = -1;
    a(r, m + 1 + k) = -1;
    ++r;
    a(r, k) = 1;
    a(r, 2 * m + 1 + k) = 1;
    b(r) = 1;
    ++r;
  }
  VectorQ cost = VectorQ::Zero(vars);
  cost(eps) = 1;
  const auto sol = lp_maximize(a, b, cost);
  if (!sol || (*sol)(eps) <= 0) return std::nullopt;
  std::vector<Rational> out;
  for (Index k = 0; k < m; ++k) out.push_back((*sol)(k));
  return out;
}

namespace {

struct MorseCycle {};

// Complex of one weight piece (graded case) or of words of bounded length.
class HomologyEngine {
public:
  HomologyEngine(const DGAPresentation& p, std::vector<long long> weights)
      : p_(p), q_(*p.quiver), weight_(std::move(weights)) {
    pattern_.assign(static_cast<std::size_t>(q_.vertex_count()), std::nullopt);
    matchedLoop_.assign(static_cast<std::size_t>(q_.arrow_count()), false);
    if (p.mode == WordMode::Free && !p.dual.empty() && !p.loop.empty()) {
      for (ArrowId a = 0; a < static_cast<ArrowId>(p.dual.size()); ++a) {
        const VertexId v = q_.arrow(a).source;
        if (pattern_[static_cast<std::size_t>(v)]) continue;
        const ArrowId t = p.loop[static_cast<std::size_t>(v)];
        const PathWord lead = *concat(PathWord::single(q_, a), PathWord::single(q_, p.dual[static_cast<std::size_t>(a)]));
        if (p.differential[static_cast<std::size_t>(t)].coefficient(lead) == 0) continue;
        pattern_[static_cast<std::size_t>(v)] = std::make_pair(a, p.dual[static_cast<std::size_t>(a)]);
        matchedLoop_[static_cast<std::size_t>(t)] = true;
      }
    }
  }

  struct Piece {
    Index dim = 0;
    std::vector<std::string> basis;
    std::vector<Terms> classes;  ///< representative cycles (in cell coordinates)
  };

  // Rank of the span of vs modulo boundaries, in the plain (unreduced) piece.
  Index rank_mod_boundaries(int degree, long long w, const std::vector<Terms>& vs) const {
    const auto below = cells(degree - 1, w, false);
    const auto at = cells(degree, w, false);
    std::map<PathWord, Index> atIdx;
    for (std::size_t k = 0; k < at.size(); ++k) atIdx[at[k]] = static_cast<Index>(k);
    SparseEchelon<Rational> ech;
    for (const auto& c : below) ech.insert(vec(d_of(c), atIdx));
    const Index base = ech.rank();
    for (const auto& v : vs) ech.insert(vec(v, atIdx));
    return ech.rank() - base;
  }

  // Homology in `degree` of the finite weight piece `w`.
  Piece piece(int degree, long long w) {
    try {
      return piece_impl(degree, w, true);
    } catch (const MorseCycle&) {
      return piece_impl(degree, w, false);
    }
  }

  // Weights of words of the given degree and length <= n.
  std::set<long long> weights_up_to(int degree, int n) const {
    // state: (end vertex, degree) -> weights, for words of the current length
    std::map<std::pair<VertexId, int>, std::set<long long>> level;
    for (VertexId v = 0; v < q_.vertex_count(); ++v) level[{v, 0}].insert(0);
    std::set<long long> out;
    if (degree == 0) out.insert(0);
    for (int len = 1; len <= n; ++len) {
      std::map<std::pair<VertexId, int>, std::set<long long>> next;
      for (const auto& [key, ws] : level)
        for (ArrowId a = 0; a < q_.arrow_count(); ++a) {
          const Arrow& ar = q_.arrow(a);
          if (ar.source != key.first) continue;
          const int d = key.second + ar.degree;
          if (d < degree) continue;
          auto& dst = next[{ar.target, d}];
          for (long long x : ws) dst.insert(x + weight_[static_cast<std::size_t>(a)]);
        }
      level = std::move(next);
      for (const auto& [key, ws] : level)
        if (key.second == degree) out.insert(ws.begin(), ws.end());
    }
    return out;
  }

  // Image of H^i(words <= n) in H^i(words <= m), no grading needed.
  Piece stable_image(int degree, int n, int m) {
    const auto below = words_by_length(degree - 1, n);
    const auto at = words_by_length(degree, n);
    const auto above = words_by_length(degree + 1, n);
    auto index = [](const std::vector<PathWord>& ws) {
      std::map<PathWord, Index> idx;
      for (std::size_t k = 0; k < ws.size(); ++k) idx[ws[k]] = static_cast<Index>(k);
      return idx;
    };
    const auto atIdx = index(at);
    const auto aboveIdx = index(above);
    // Cycles of the length-n complex.
    std::vector<SparseVec<Rational>> images;
    for (const auto& w : at) images.push_back(vec(d_of(w, static_cast<std::size_t>(n)), aboveIdx));
    const auto ker = sparse_kernel(images, static_cast<Index>(above.size()));
    // Boundaries of the length-m complex.
    SparseEchelon<Rational> bound;
    for (const auto& w : below) {
      if (static_cast<int>(w.length()) > m) continue;
      bound.insert(vec(d_of(w, static_cast<std::size_t>(m)), atIdx));
    }
    Piece out;
    for (const auto& z : ker.kernel) {
      SparseVec<Rational> proj;
      for (const auto& [k, c] : z)
        if (static_cast<int>(at[static_cast<std::size_t>(k)].length()) <= m) proj.emplace_back(k, c);
      const auto rem = bound.reduce(proj);
      if (rem.empty()) continue;
      const Index pivot = rem.front().first;
      bound.insert(proj);
      ++out.dim;
      out.basis.push_back(to_string(q_, at[static_cast<std::size_t>(pivot)]));
    }
    return out;
  }

private:
  Terms d_of(const PathWord& w, std::size_t maxLen = kUnbounded) const {
    Terms out;
    d_word(p_, w, Rational(1), out, maxLen);
    return out;
  }

  static SparseVec<Rational> vec(const Terms& t, const std::map<PathWord, Index>& idx) {
    std::map<Index, Rational> acc;
    for (const auto& [w, c] : t) {
      auto it = idx.find(w);
      if (it == idx.end()) throw Error("homology: differential leaves the enumerated cells");
      acc[it->second] += c;
    }
    SparseVec<Rational> out;
    for (const auto& [k, c] : acc)
      if (c != 0) out.emplace_back(k, c);
    return out;
  }

  enum class Special { None, Up, Down };

  std::pair<Special, std::size_t> first_special(const PathWord& w) const {
    for (std::size_t k = 0; k < w.length(); ++k) {
      if (matchedLoop_[static_cast<std::size_t>(w[k])]) return {Special::Up, k};
      if (k + 1 < w.length()) {
        const auto& pat = pattern_[static_cast<std::size_t>(q_.arrow(w[k]).source)];
        if (pat && pat->first == w[k] && pat->second == w[k + 1]) return {Special::Down, k};
      }
    }
    return {Special::None, 0};
  }

  // Projection of a cell onto the critical cells along the Morse flow.
  Terms flow(const PathWord& v) {
    const auto [kind, k] = first_special(v);
    if (kind == Special::None) return Terms{{v, Rational(1)}};
    if (kind == Special::Up) return {};
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    if (!active_.insert(v).second) throw MorseCycle{};
    const VertexId vert = q_.arrow(v[k]).source;
    const PathWord loop = PathWord::single(q_, p_.loop[static_cast<std::size_t>(vert)]);
    const PathWord u = *concat(*concat(v.subword(q_, 0, k), loop), v.subword(q_, k + 2, v.length() - k - 2));
    const Terms du = d_of(u);
    auto self = du.find(v);
    if (self == du.end()) throw MorseCycle{};
    const Rational inv = Rational(-1) / self->second;
    Terms res;
    for (const auto& [x, c] : du) {
      if (x == v) continue;
      for (const auto& [y, e] : flow(x)) accumulate(res, y, inv * c * e);
    }
    active_.erase(v);
    return memo_.emplace(v, std::move(res)).first->second;
  }

  // Cells of weight w and degree deg; with `morse` only the critical ones.
  std::vector<PathWord> cells(int deg, long long w, bool morse) const {
    std::vector<PathWord> out;
    if (w == 0 && deg == 0)
      for (VertexId v = 0; v < q_.vertex_count(); ++v) out.push_back(PathWord::idempotent(v));
    std::vector<ArrowId> letters;
    std::function<void(VertexId, long long, int)> grow = [&](VertexId end, long long wt, int d) {
      if (wt == w && d == deg && !letters.empty()) out.push_back(*PathWord::from_letters(q_, letters));
      for (ArrowId a = 0; a < q_.arrow_count(); ++a) {
        const Arrow& ar = q_.arrow(a);
        if (!letters.empty() && ar.source != end) continue;
        if (p_.mode == WordMode::Commutative && !letters.empty() && a < letters.back()) continue;
        const long long nw = wt + weight_[static_cast<std::size_t>(a)];
        const int nd = d + ar.degree;
        if (nw > w || nd < deg) continue;
        if (morse) {
          if (matchedLoop_[static_cast<std::size_t>(a)]) continue;
          if (!letters.empty()) {
            const auto& pat = pattern_[static_cast<std::size_t>(q_.arrow(letters.back()).source)];
            if (pat && pat->first == letters.back() && pat->second == a) continue;
          }
        }
        letters.push_back(a);
        grow(ar.target, nw, nd);
        letters.pop_back();
      }
    };
    grow(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<PathWord> words_by_length(int deg, int n) const {
    std::vector<PathWord> out;
    if (deg == 0)
      for (VertexId v = 0; v < q_.vertex_count(); ++v) out.push_back(PathWord::idempotent(v));
    std::vector<ArrowId> letters;
    std::function<void(VertexId, int)> grow = [&](VertexId end, int d) {
      if (d == deg && !letters.empty()) out.push_back(*PathWord::from_letters(q_, letters));
      if (static_cast<int>(letters.size()) == n) return;
      for (ArrowId a = 0; a < q_.arrow_count(); ++a) {
        const Arrow& ar = q_.arrow(a);
        if (!letters.empty() && ar.source != end) continue;
        if (p_.mode == WordMode::Commutative && !letters.empty() && a < letters.back()) continue;
        if (d + ar.degree < deg) continue;
        letters.push_back(a);
        grow(ar.target, d + ar.degree);
        letters.pop_back();
      }
    };
    grow(0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  Piece piece_impl(int degree, long long w, bool morse) {
    const auto below = cells(degree - 1, w, morse);
    const auto at = cells(degree, w, morse);
    const auto above = cells(degree + 1, w, morse);
    Piece out;
    if (at.empty()) return out;
    std::map<PathWord, Index> atIdx, aboveIdx;
    for (std::size_t k = 0; k < at.size(); ++k) atIdx[at[k]] = static_cast<Index>(k);
    for (std::size_t k = 0; k < above.size(); ++k) aboveIdx[above[k]] = static_cast<Index>(k);
    auto reduced = [&](const PathWord& c) {
      Terms t;
      for (const auto& [x, e] : d_of(c)) {
        if (!morse) {
          accumulate(t, x, e);
          continue;
        }
        for (const auto& [y, f] : flow(x)) accumulate(t, y, e * f);
      }
      return t;
    };
    std::vector<SparseVec<Rational>> images;
    for (const auto& c : at) images.push_back(vec(reduced(c), aboveIdx));
    const auto ker = sparse_kernel(images, static_cast<Index>(above.size()));
    SparseEchelon<Rational> bound;
    for (const auto& c : below) bound.insert(vec(reduced(c), atIdx));
    for (const auto& z : ker.kernel) {
      const auto rem = bound.reduce(z);
      if (rem.empty()) continue;
      bound.insert(z);
      ++out.dim;
      out.basis.push_back(to_string(q_, at[static_cast<std::size_t>(rem.front().first)]));
      Terms cls;
      for (const auto& [k, c] : z) accumulate(cls, at[static_cast<std::size_t>(k)], c);
      out.classes.push_back(std::move(cls));
    }
    return out;
  }

  const DGAPresentation& p_;
  const Quiver& q_;
  std::vector<long long> weight_;
  std::vector<std::optional<std::pair<ArrowId, ArrowId>>> pattern_;
  std::vector<bool> matchedLoop_;
  std::map<PathWord, Terms> memo_;
  std::set<PathWord> active_;
};

std::optional<std::vector<long long>> integer_weights(const DGAPresentation& p) {
  const auto w = dg_weights(p);
  if (!w) return std::nullopt;
  Integer l = 1;
  for (const auto& x : *w) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  std::vector<long long> out;
  for (const auto& x : *w) out.push_back(static_cast<long long>(Integer(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)))));
  return out;
}

void check_presentation(const DGAPresentation& p) {
  const Quiver& q = *p.quiver;
  if (p.differential.size() != static_cast<std::size_t>(q.arrow_count()))
    throw InputError("presentation needs one differential per generator");
  for (ArrowId g = 0; g < q.arrow_count(); ++g)
    for (const auto& [w, c] : p.differential[static_cast<std::size_t>(g)].terms())
      if (w.degree(q) != q.arrow(g).degree + 1)
        throw InputError("d('" + q.arrow(g).label + "') is not homogeneous of degree " +
                         std::to_string(q.arrow(g).degree + 1));
  if (p.mode == WordMode::Commutative && q.vertex_count() != 1)
    throw InputError("commutative words need a one-vertex quiver");
}

} // namespace

HomologyEntry homology(const DGAPresentation& p, int degree, int truncation) {
  if (degree > 0) throw InputError("homology is only computed in degrees <= 0");
  if (truncation < 2) throw InputError("homology needs a truncation of at least 2");
  check_presentation(p);
  HomologyEntry out;
  out.degree = degree;
  Index previous = 0;
  const auto weights = integer_weights(p);
  if (weights) {
    out.graded = true;
    HomologyEngine engine(p, *weights);
    std::map<long long, HomologyEngine::Piece> cache;
    auto total = [&](int n, bool keep) {
      Index dim = 0;
      for (long long w : engine.weights_up_to(degree, n)) {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, engine.piece(degree, w)).first;
        dim += it->second.dim;
        if (keep) out.basis.insert(out.basis.end(), it->second.basis.begin(), it->second.basis.end());
      }
      return dim;
    };
    previous = total(truncation - 2, false);
    out.dim = total(truncation, true);
  } else {
    for (ArrowId g = 0; g < p.quiver->arrow_count(); ++g)
      for (const auto& [w, c] : p.differential[static_cast<std::size_t>(g)].terms())
        if (w.length() < 1)
          throw RefusalError("ungraded homology needs differentials without constant terms");
    HomologyEngine engine(p, std::vector<long long>(static_cast<std::size_t>(p.quiver->arrow_count()), 1));
    previous = engine.stable_image(degree, truncation - 2, (truncation - 2 + 1) / 2).dim;
    auto top = engine.stable_image(degree, truncation, (truncation + 1) / 2);
    out.dim = top.dim;
    out.basis = std::move(top.basis);
  }
  out.stabilized = previous == out.dim;
  bool exact = out.stabilized;
  if (p.potential) exact = exact && jacobi_dimension(*p.potential, truncation).second.status == CertificateStatus::Exact;
  out.certificate = exact ? CertificateStatus::Exact : CertificateStatus::Truncated;
  if (!out.stabilized)
    out.warning = "truncation too small: H^" + std::to_string(degree) + " changed from " + std::to_string(previous) +
                  " to " + std::to_string(out.dim) + " between N-2 and N";
  else if (!exact)
    out.warning = "Jacobi algebra is not certified finite at this truncation";
  return out;
}

DGAPresentation pagoda_model(int n, int truncation) {
  if (n < 1) throw InputError("pagoda_model needs n >= 1");
  DGAPresentation p;
  p.quiver = std::make_shared<const Quiver>(std::vector<std::string>{"1"},
                                            std::vector<Arrow>{{"x", 0, 0, 0}, {"x'", 0, 0, -1}});
  p.truncation = truncation;
  p.mode = WordMode::Commutative;
  p.differential = {NCSeries(p.quiver, truncation),
                    NCSeries::monomial(p.quiver, truncation, *PathWord::from_letters(*p.quiver, std::vector<ArrowId>(static_cast<std::size_t>(n), 0)))};
  return p;
}

bool verify_u_action(const DGAPresentation& p, int truncation) {
  try {
    check_presentation(p);
  } catch (const InputError&) {
    return false;
  }
  if (!check_d_squared(p, truncation)) return false;
  if (p.mode != WordMode::Commutative) throw InputError("verify_u_action needs the commutative model");
  const Quiver& q = *p.quiver;
  std::optional<ArrowId> theta;
  for (ArrowId a = 0; a < q.arrow_count(); ++a)
    if (q.arrow(a).degree == -1) {
      if (theta) throw InputError("verify_u_action needs exactly one generator of degree -1");
      theta = a;
    }
  if (!theta) throw InputError("verify_u_action needs a generator of degree -1");
  const PathWord theta2 = *PathWord::from_letters(q, {*theta, *theta});

  auto times_u = [&](const Terms& t, std::size_t maxLen) {
    Terms out;
    for (const auto& [w, c] : t)
      if (w.length() + 2 <= maxLen) accumulate(out, normalize_word(q, *concat(theta2, w), p.mode), c);
    return out;
  };

  // Chain map: d(u m) = u d(m) on every word of length <= N - 2.
  const auto n = static_cast<std::size_t>(truncation);
  std::vector<ArrowId> letters;
  bool commutes = true;
  std::function<void()> walk = [&]() {
    if (!commutes) return;
    const PathWord m = letters.empty() ? PathWord::idempotent(0) : *PathWord::from_letters(q, letters);
    Terms dm, dum;
    d_word(p, m, Rational(1), dm, n);
    d_word(p, normalize_word(q, *concat(theta2, m), p.mode), Rational(1), dum, n);
    if (dum != times_u(dm, n)) commutes = false;
    if (letters.size() + 2 >= n) return;
    for (ArrowId a = letters.empty() ? 0 : letters.back(); a < q.arrow_count(); ++a) {
      letters.push_back(a);
      walk();
      letters.pop_back();
    }
  };
  walk();
  if (!commutes) return false;

  const auto weights = integer_weights(p);
  if (!weights) return false;
  const long long shift = 2 * (*weights)[static_cast<std::size_t>(*theta)];
  HomologyEngine engine(p, *weights);
  for (int i = 0; i >= 2 - truncation / 2; --i) {
    std::set<long long> pieces = engine.weights_up_to(i, truncation - 2);
    for (long long w : engine.weights_up_to(i - 2, truncation))
      if (w - shift >= 0) pieces.insert(w - shift);
    for (long long w : pieces) {
      const auto src = engine.piece(i, w);
      const auto dst = engine.piece(i - 2, w + shift);
      if (src.dim != dst.dim) return false;
    }
  }
  // The classes of u * (cycle representatives) stay independent modulo boundaries.
  for (int i = 0; i >= 2 - truncation / 2; --i)
    for (long long w : engine.weights_up_to(i, truncation - 2)) {
      const auto src = engine.piece(i, w);
      std::vector<Terms> image;
      for (const auto& z : src.classes) image.push_back(times_u(z, kUnbounded));
      if (engine.rank_mod_boundaries(i - 2, w + shift, image) != src.dim) return false;
    }
  return true;
}

bool verify_u_action(int n, int truncation) { return verify_u_action(pagoda_model(n, truncation), truncation); }

NCSeries del1(const Tensor& t, const QuiverPtr& q, int truncation) {
  NCSeries out(q, truncation);
  for (const auto& [v, a] : t) {
    if (v.length() > 1) throw InputError("del1: the left factor must be a generator or an idempotent");
    const int dv = v.degree(*q);
    for (const auto& [u, c] : a.terms()) {
      const int sign = parity_sign(static_cast<long long>(dv) * u.degree(*q));
      if (auto va = concat(v, u); va && va->is_cycle()) out.add_term(*va, c);
      if (auto av = concat(u, v); av && av->is_cycle()) out.add_term(*av, -c * sign);
    }
  }
  return out;
}

Tensor del0(const NCSeries& s) {
  const Quiver& q = s.quiver();
  Tensor out;
  for (const auto& [w, c] : s.terms()) {
    if (!w.is_cycle()) throw InputError("del0 needs a combination of cycles");
    const std::size_t n = w.length();
    long long total = w.degree(q);
    long long prefix = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int sign = parity_sign(prefix * (total - prefix));
      const PathWord v = PathWord::single(q, w[i]);
      const PathWord rest = n == 1 ? PathWord::idempotent(q.arrow(w[i]).target)
                                   : w.rotated(q, (i + 1) % n).subword(q, 0, n - 1);
      auto [it, fresh] = out.try_emplace(v, s.quiver_ptr(), s.truncation());
      it->second.add_term(rest, c * sign);
      prefix += q.arrow(w[i]).degree;
    }
  }
  return normalized(out);
}

Tensor d_tensor(const DGAPresentation& p, const Tensor& t) {
  Tensor out;
  for (const auto& [v, a] : t) {
    NCSeries da = p.d(a);
    if (v.degree(*p.quiver) % 2 != 0) da *= Rational(-1);
    auto [it, fresh] = out.try_emplace(v, da);
    if (!fresh) it->second += da;
  }
  return normalized(out);
}

Tensor normalized(const Tensor& t) {
  Tensor out;
  for (const auto& [v, a] : t)
    if (!a.is_zero()) out.emplace(v, a);
  return out;
}

STReport verify_S_of_t(const Potential& w) {
  const DGAPresentation p = build_ginzburg(w);
  const int n = w.truncation();
  Tensor x;
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.dual.size()); ++a)
    x.emplace(PathWord::single(*p.quiver, a), NCSeries::arrow(p.quiver, n, p.dual[static_cast<std::size_t>(a)]));
  NCSeries dt(p.quiver, n);
  for (ArrowId t : p.loop) dt += p.differential[static_cast<std::size_t>(t)];
  STReport rep;
  rep.dt_identity = dt == del1(x, p.quiver, n);
  rep.dual_identity = d_tensor(p, x) == del0(transplant(w.as_series(), p.quiver));
  return rep;
}

} // namespace qpalg
