#pragma once

#include "qpalg/quiver.hpp"

#include <map>
#include <memory>
#include <vector>

namespace qpalg {

using QuiverPtr = std::shared_ptr<const Quiver>;

/// Element of the complete path algebra modulo paths longer than the
/// truncation N. Terms are kept in PathWord order (shortest first).
class NCSeries {
public:
  using Terms = std::map<PathWord, Rational>;

  NCSeries() = default;
  NCSeries(QuiverPtr q, int truncation);

  static NCSeries unit(QuiverPtr q, int truncation);  ///< sum of all e_i
  static NCSeries idempotent(QuiverPtr q, int truncation, VertexId v);
  static NCSeries arrow(QuiverPtr q, int truncation, ArrowId a);
  static NCSeries monomial(QuiverPtr q, int truncation, const PathWord& w, const Rational& c = Rational(1));

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const Quiver& quiver() const { return *quiver_; }
  int truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const PathWord& w) const;

  /// Adds c·w; words beyond the truncation are dropped, zero sums erased.
  void add_term(const PathWord& w, const Rational& c);

  NCSeries& operator+=(const NCSeries& o);
  NCSeries& operator-=(const NCSeries& o);
  NCSeries& operator*=(const Rational& c);
  friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
  friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
  friend NCSeries operator*(NCSeries a, const Rational& c) { return a *= c; }
  friend NCSeries operator*(const Rational& c, NCSeries a) { return a *= c; }
  NCSeries operator-() const { return *this * Rational(-1); }

  /// Same terms at a smaller truncation M <= N.
  NCSeries truncated(int m) const;
  /// Terms whose word runs from `from` to `to`.
  NCSeries corner(VertexId from, VertexId to) const;
  /// Highest word length present, or -1 for zero.
  int max_length() const;
  /// Length of the shortest word, or -1 for zero.
  int order() const;

  bool operator==(const NCSeries& o) const;

private:
  QuiverPtr quiver_;
  int truncation_ = 0;
  Terms terms_;
};

/// Throws InputError unless a and b live on the same quiver with equal truncation.
void require_compatible(const NCSeries& a, const NCSeries& b, const char* what);

/// Concatenation product; non-composable pairs vanish, long words dropped.
NCSeries multiply(const NCSeries& s, const NCSeries& t);
inline NCSeries operator*(const NCSeries& s, const NCSeries& t) { return multiply(s, t); }

/// Continuous unital algebra map on the complete path algebra, fixing every
/// idempotent and sending each arrow to `images[arrow id]`.
struct AlgebraMorphism {
  QuiverPtr quiver;
  int truncation = 0;
  std::vector<NCSeries> images;

  static AlgebraMorphism identity(QuiverPtr q, int truncation);
  /// Throws InputError unless each image of a: i->j is a constant-free
  /// combination of paths i->j.
  void validate() const;
  /// Per vertex pair, the matrix of linear coefficients among parallel arrows.
  bool linear_part_invertible() const;
};

/// Replaces each arrow by its image. When `require_equivalence` is set the
/// linear part must be invertible (a right-equivalence); otherwise InputError.
NCSeries substitute(const NCSeries& s, const AlgebraMorphism& phi, bool require_equivalence = false);

/// (phi ∘ psi)(a) = phi(psi(a)).
AlgebraMorphism compose(const AlgebraMorphism& phi, const AlgebraMorphism& psi);

/// Human-readable form accepted by parse_series.
std::string to_string(const NCSeries& s);

} // namespace qpalg
