#include "qpalg/quiver.hpp"

#include <set>

namespace qpalg {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw InputError("duplicate vertex '" + v + "'");
  std::set<std::string> labels;
  for (const auto& a : arrows_) {
    if (a.label.empty()) throw InputError("empty arrow label");
    if (!labels.insert(a.label).second) throw InputError("duplicate arrow label '" + a.label + "'");
    if (a.source < 0 || a.source >= vertex_count() || a.target < 0 || a.target >= vertex_count())
      throw InputError("arrow '" + a.label + "' references a vertex that does not exist");
  }
}

std::optional<ArrowId> Quiver::find_arrow(std::string_view label) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].label == label) return static_cast<ArrowId>(i);
  return std::nullopt;
}

std::optional<VertexId> Quiver::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return static_cast<VertexId>(i);
  return std::nullopt;
}

bool Quiver::is_ungraded() const {
  for (const auto& a : arrows_)
    if (a.degree != 0) return false;
  return true;
}

PathWord PathWord::single(const Quiver& q, ArrowId a) {
  const Arrow& ar = q.arrow(a);
  return PathWord({a}, ar.source, ar.target);
}

std::optional<PathWord> PathWord::from_letters(const Quiver& q, std::vector<ArrowId> letters) {
  if (letters.empty()) throw InputError("PathWord::from_letters needs at least one arrow");
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] < 0 || letters[i] >= q.arrow_count()) throw InputError("arrow id out of range");
    if (i > 0 && q.arrow(letters[i - 1]).target != q.arrow(letters[i]).source) return std::nullopt;
  }
  const VertexId s = q.arrow(letters.front()).source;
  const VertexId t = q.arrow(letters.back()).target;
  return PathWord(std::move(letters), s, t);
}

std::optional<PathWord> concat(const PathWord& u, const PathWord& v) {
  if (u.target_ != v.source_) return std::nullopt;
  std::vector<ArrowId> letters;
  letters.reserve(u.length() + v.length());
  letters.insert(letters.end(), u.letters_.begin(), u.letters_.end());
  letters.insert(letters.end(), v.letters_.begin(), v.letters_.end());
  return PathWord(std::move(letters), u.source_, v.target_);
}

PathWord PathWord::subword(const Quiver& q, std::size_t from, std::size_t len) const {
  if (from + len > letters_.size()) throw InputError("subword out of range");
  if (len == 0) {
    const VertexId v = from == 0 ? source_ : q.arrow(letters_[from - 1]).target;
    return idempotent(v);
  }
  std::vector<ArrowId> part(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                            letters_.begin() + static_cast<std::ptrdiff_t>(from + len));
  return PathWord(std::move(part), q.arrow(letters_[from]).source, q.arrow(letters_[from + len - 1]).target);
}

PathWord PathWord::rotated(const Quiver& q, std::size_t k) const {
  if (!is_cycle()) throw InputError("rotation of a path that is not a cycle");
  if (letters_.empty()) return *this;
  k %= letters_.size();
  std::vector<ArrowId> r;
  r.reserve(letters_.size());
  r.insert(r.end(), letters_.begin() + static_cast<std::ptrdiff_t>(k), letters_.end());
  r.insert(r.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k));
  const VertexId base = q.arrow(r.front()).source;
  return PathWord(std::move(r), base, base);
}

std::strong_ordering PathWord::operator<=>(const PathWord& o) const {
  if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
  if (auto c = letters_ <=> o.letters_; c != 0) return c;
  if (auto c = source_ <=> o.source_; c != 0) return c;
  return target_ <=> o.target_;
}

int PathWord::degree(const Quiver& q) const {
  int d = 0;
  for (ArrowId a : letters_) d += q.arrow(a).degree;
  return d;
}

std::string to_string(const Quiver& q, const PathWord& w) {
  if (w.empty()) return "e_" + q.vertex_name(w.source());
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += '*';
    out += q.arrow(w[i]).label;
  }
  return out;
}

} // namespace qpalg
