#pragma once

#include "qpalg/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace qpalg {

using VertexId = int;
using ArrowId = int;

struct Arrow {
  std::string label;
  VertexId source = 0;
  VertexId target = 0;
  int degree = 0;  ///< cohomological degree; 0 for ordinary quivers

  bool operator==(const Arrow&) const = default;
};

/// Finite quiver. Vertices and arrows keep their declaration order; arrow
/// order breaks ties in every monomial order used by the library.
class Quiver {
public:
  Quiver() = default;
  /// Throws InputError on duplicate labels/vertex names or dangling endpoints.
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(static_cast<std::size_t>(a)); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::string>& vertices() const { return vertices_; }

  std::optional<ArrowId> find_arrow(std::string_view label) const;
  std::optional<VertexId> find_vertex(std::string_view name) const;

  /// True when every arrow has degree 0.
  bool is_ungraded() const;

  bool operator==(const Quiver&) const = default;

private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// A path in a quiver: a composable sequence of arrows, read left to right
/// (the word `ab` means a first, then b). The empty word is the idempotent
/// e_v of its base vertex.
class PathWord {
public:
  static PathWord idempotent(VertexId v) { return PathWord({}, v, v); }
  static PathWord single(const Quiver& q, ArrowId a);
  /// Checked constructor: nullopt if consecutive arrows are not composable.
  static std::optional<PathWord> from_letters(const Quiver& q, std::vector<ArrowId> letters);

  const std::vector<ArrowId>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  VertexId source() const { return source_; }
  VertexId target() const { return target_; }
  bool is_cycle() const { return source_ == target_; }
  ArrowId operator[](std::size_t i) const { return letters_[i]; }

  /// Concatenation u·v, nullopt when target(u) != source(v).
  friend std::optional<PathWord> concat(const PathWord& u, const PathWord& v);
  /// Subword [from, from+len); the result of an empty range is the idempotent at the cut.
  PathWord subword(const Quiver& q, std::size_t from, std::size_t len) const;
  /// Rotation starting at position k (cycles only).
  PathWord rotated(const Quiver& q, std::size_t k) const;

  /// Total order: shorter words first, then lexicographic in arrow ids, then endpoints.
  std::strong_ordering operator<=>(const PathWord& o) const;
  bool operator==(const PathWord& o) const = default;

  int degree(const Quiver& q) const;

private:
  PathWord(std::vector<ArrowId> letters, VertexId s, VertexId t)
      : letters_(std::move(letters)), source_(s), target_(t) {}

  std::vector<ArrowId> letters_;
  VertexId source_ = 0;
  VertexId target_ = 0;
};

/// Letters joined by '*', or e_<vertex> for an idempotent.
std::string to_string(const Quiver& q, const PathWord& w);

} // namespace qpalg
