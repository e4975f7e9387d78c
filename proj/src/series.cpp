#include "qpalg/series.hpp"

#include "qpalg/linalg.hpp"

namespace qpalg {

NCSeries::NCSeries(QuiverPtr q, int truncation) : quiver_(std::move(q)), truncation_(truncation) {
  if (!quiver_) throw InputError("series needs a quiver");
  if (truncation_ < 0) throw InputError("truncation must be non-negative");
}

NCSeries NCSeries::unit(QuiverPtr q, int truncation) {
  NCSeries s(std::move(q), truncation);
  for (VertexId v = 0; v < s.quiver().vertex_count(); ++v) s.add_term(PathWord::idempotent(v), Rational(1));
  return s;
}

NCSeries NCSeries::idempotent(QuiverPtr q, int truncation, VertexId v) {
  NCSeries s(std::move(q), truncation);
  if (v < 0 || v >= s.quiver().vertex_count()) throw InputError("vertex out of range");
  s.add_term(PathWord::idempotent(v), Rational(1));
  return s;
}

NCSeries NCSeries::arrow(QuiverPtr q, int truncation, ArrowId a) {
  NCSeries s(std::move(q), truncation);
  s.add_term(PathWord::single(s.quiver(), a), Rational(1));
  return s;
}

NCSeries NCSeries::monomial(QuiverPtr q, int truncation, const PathWord& w, const Rational& c) {
  NCSeries s(std::move(q), truncation);
  s.add_term(w, c);
  return s;
}

Rational NCSeries::coefficient(const PathWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NCSeries::add_term(const PathWord& w, const Rational& c) {
  if (c == 0 || static_cast<int>(w.length()) > truncation_) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void require_compatible(const NCSeries& a, const NCSeries& b, const char* what) {
  if (!a.quiver_ptr() || !b.quiver_ptr()) throw InputError(std::string(what) + ": uninitialised series");
  if (a.quiver_ptr() != b.quiver_ptr() && !(a.quiver() == b.quiver()))
    throw InputError(std::string(what) + ": series live on different quivers");
  if (a.truncation() != b.truncation())
    throw InputError(std::string(what) + ": truncation mismatch (" + std::to_string(a.truncation()) + " vs " +
                     std::to_string(b.truncation()) + ")");
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
  require_compatible(*this, o, "addition");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
  require_compatible(*this, o, "subtraction");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCSeries& NCSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

NCSeries NCSeries::truncated(int m) const {
  if (m > truncation_) throw InputError("cannot raise the truncation of a series");
  NCSeries out(quiver_, m);
  for (const auto& [w, c] : terms_) out.add_term(w, c);
  return out;
}

NCSeries NCSeries::corner(VertexId from, VertexId to) const {
  NCSeries out(quiver_, truncation_);
  for (const auto& [w, c] : terms_)
    if (w.source() == from && w.target() == to) out.terms_.emplace(w, c);
  return out;
}

int NCSeries::max_length() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.length());
}

int NCSeries::order() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.length());
}

bool NCSeries::operator==(const NCSeries& o) const {
  return truncation_ == o.truncation_ && terms_ == o.terms_ &&
         (quiver_ == o.quiver_ || (quiver_ && o.quiver_ && *quiver_ == *o.quiver_));
}

NCSeries multiply(const NCSeries& s, const NCSeries& t) {
  require_compatible(s, t, "multiply");
  NCSeries out(s.quiver_ptr(), s.truncation());
  const auto n = static_cast<std::size_t>(s.truncation());
  for (const auto& [u, a] : s.terms())
    for (const auto& [v, b] : t.terms()) {
      if (u.length() + v.length() > n) break;  // t's terms are sorted by length
      if (auto uv = concat(u, v)) out.add_term(*uv, a * b);
    }
  return out;
}

AlgebraMorphism AlgebraMorphism::identity(QuiverPtr q, int truncation) {
  AlgebraMorphism phi{q, truncation, {}};
  for (ArrowId a = 0; a < q->arrow_count(); ++a) phi.images.push_back(NCSeries::arrow(q, truncation, a));
  return phi;
}

void AlgebraMorphism::validate() const {
  if (!quiver) throw InputError("morphism without quiver");
  if (static_cast<int>(images.size()) != quiver->arrow_count())
    throw InputError("morphism must give one image per arrow");
  for (ArrowId a = 0; a < quiver->arrow_count(); ++a) {
    const Arrow& ar = quiver->arrow(a);
    const NCSeries& img = images[static_cast<std::size_t>(a)];
    if (img.truncation() != truncation) throw InputError("image of '" + ar.label + "' has the wrong truncation");
    for (const auto& [w, c] : img.terms()) {
      if (w.empty()) throw InputError("image of '" + ar.label + "' has a constant term");
      if (w.source() != ar.source || w.target() != ar.target)
        throw InputError("image of '" + ar.label + "' contains a path with the wrong endpoints");
    }
  }
}

bool AlgebraMorphism::linear_part_invertible() const {
  const Quiver& q = *quiver;
  for (VertexId i = 0; i < q.vertex_count(); ++i)
    for (VertexId j = 0; j < q.vertex_count(); ++j) {
      std::vector<ArrowId> parallel;
      for (ArrowId a = 0; a < q.arrow_count(); ++a)
        if (q.arrow(a).source == i && q.arrow(a).target == j) parallel.push_back(a);
      if (parallel.empty()) continue;
      const auto k = static_cast<Index>(parallel.size());
      MatrixQ m(k, k);
      for (Index r = 0; r < k; ++r)
        for (Index c = 0; c < k; ++c)
          m(r, c) = images[static_cast<std::size_t>(parallel[static_cast<std::size_t>(r)])].coefficient(
              PathWord::single(q, parallel[static_cast<std::size_t>(c)]));
      if (determinant(m) == 0) return false;
    }
  return true;
}

NCSeries substitute(const NCSeries& s, const AlgebraMorphism& phi, bool require_equivalence) {
  phi.validate();
  if (phi.quiver != s.quiver_ptr() && !(*phi.quiver == s.quiver()))
    throw InputError("substitute: morphism and series live on different quivers");
  if (phi.truncation != s.truncation()) throw InputError("substitute: truncation mismatch");
  if (require_equivalence && !phi.linear_part_invertible())
    throw InputError("substitute: linear part of the substitution is not invertible");

  // Images of prefixes, shared between words with a common prefix.
  std::map<std::vector<ArrowId>, NCSeries> prefix;
  auto image_of = [&](const std::vector<ArrowId>& letters) -> const NCSeries& {
    std::vector<ArrowId> key;
    const NCSeries* cur = nullptr;
    for (ArrowId a : letters) {
      key.push_back(a);
      auto it = prefix.find(key);
      if (it == prefix.end()) {
        NCSeries next = cur ? multiply(*cur, phi.images[static_cast<std::size_t>(a)])
                            : phi.images[static_cast<std::size_t>(a)];
        it = prefix.emplace(key, std::move(next)).first;
      }
      cur = &it->second;
    }
    return *cur;
  };

  NCSeries out(s.quiver_ptr(), s.truncation());
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) {
      out.add_term(w, c);
      continue;
    }
    for (const auto& [v, x] : image_of(w.letters()).terms()) out.add_term(v, c * x);
  }
  return out;
}

AlgebraMorphism compose(const AlgebraMorphism& phi, const AlgebraMorphism& psi) {
  if (phi.truncation != psi.truncation) throw InputError("compose: truncation mismatch");
  AlgebraMorphism out{psi.quiver, psi.truncation, {}};
  for (const auto& img : psi.images) out.images.push_back(substitute(img, phi));
  return out;
}

std::string to_string(const NCSeries& s) {
  if (s.is_zero()) return "0";
  const Quiver& q = s.quiver();
  std::string out;
  bool first = true;
  for (const auto& [w, c] : s.terms()) {
    Rational mag = c;
    if (first) {
      if (c < 0) {
        out += '-';
        mag = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) mag = -c;
    }
    first = false;
    const bool plainConstant = w.empty() && q.vertex_count() == 1;
    if (plainConstant) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(q, w);
    } else {
      out += to_string(mag) + "*" + to_string(q, w);
    }
  }
  return out;
}

} // namespace qpalg
