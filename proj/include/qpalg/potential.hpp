#pragma once

#include "qpalg/groebner.hpp"
#include "qpalg/series.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qpalg {

/// Lexicographically least rotation of a cycle (the cycle itself when it is an idempotent).
PathWord canonical_rotation(const Quiver& q, const PathWord& cycle);

/// Finite combination of cycles modulo rotation, each stored in canonical rotation.
class Potential {
public:
  Potential() = default;
  Potential(QuiverPtr q, int truncation);

  /// Every word must be a cycle of positive length; InputError otherwise.
  static Potential from_series(const NCSeries& s);

  void add_cycle(const PathWord& cycle, const Rational& c);

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const Quiver& quiver() const { return *quiver_; }
  int truncation() const { return truncation_; }
  const std::map<PathWord, Rational>& cycles() const { return cycles_; }
  bool is_zero() const { return cycles_.empty(); }
  /// Shortest cycle length, or 0 for the zero potential.
  int order() const;
  int max_length() const;

  /// Series of canonical representatives, each rotated left by `shift` letters
  /// (the class in the cyclic quotient does not depend on the shift).
  NCSeries as_series(int truncation, std::size_t shift = 0) const;
  NCSeries as_series() const { return as_series(truncation_); }

  bool operator==(const Potential& o) const { return truncation_ == o.truncation_ && cycles_ == o.cycles_; }

private:
  QuiverPtr quiver_;
  int truncation_ = 0;
  std::map<PathWord, Rational> cycles_;
};

Potential parse_potential(std::string_view text, const QuiverPtr& q, int truncation);
std::string to_string(const Potential& w);

/// D_a w: sum over cycles p and decompositions p = u a v of v u.
NCSeries cyclic_derivative(const Potential& w, ArrowId a, int truncation);
inline NCSeries cyclic_derivative(const Potential& w, ArrowId a) {
  return cyclic_derivative(w, a, w.truncation());
}

struct JacobiAlgebra {
  ReductionSystem system;
  Quotient quotient;
  bool exact() const { return quotient.certificate.status == CertificateStatus::Exact; }
  Index dim() const { return quotient.algebra.dim(); }
};

/// Quotient of the path algebra by all cyclic derivatives, modulo paths
/// longer than `truncation`.
JacobiAlgebra jacobi_algebra(const Potential& w, int truncation);
/// Dimension and certificate without building a multiplication table.
std::pair<std::size_t, QuotientCertificate> jacobi_dimension(const Potential& w, int truncation,
                                                             std::size_t cap = 100000);

struct CanonicalClass {
  VectorQ normal_coordinates;  ///< normal form of w in the normal-word basis
  VectorQ vector;              ///< coordinates in the commutator quotient
  bool is_zero = true;
};

/// Image of w in A/[A,A]. Refuses (RefusalError) a truncated Jacobi algebra.
CanonicalClass canonical_class(const Potential& w, const JacobiAlgebra& jac, std::size_t shift = 0);

/// Arrow weights r_a, indexed by arrow id.
using WeightVector = std::vector<Rational>;

/// Every cycle has total weight exactly 1. InputError unless 0 < r_a < 1/2.
bool is_weighted_homogeneous(const Potential& w, const WeightVector& r);

/// A weight vector with 0 < r_a < 1/2 making w weighted homogeneous, found by
/// linear programming (maximising the distance to the bounds), if any.
std::optional<WeightVector> find_weights(const Potential& w);

struct SaitoReport {
  bool class_is_zero = false;
  std::optional<WeightVector> witness;
  Index jacobi_dim = 0;
};
/// One-vertex quivers only, cubic and higher terms, exact Jacobi algebra.
SaitoReport saito_test(const Potential& w, int truncation);

struct MatherYauReport {
  Index dim[2] = {0, 0};
  std::vector<Index> hilbert[2];
  Index cocenter_dim[2] = {0, 0};
  bool class_is_zero[2] = {false, false};
  bool all_equal = false;
  std::string verdict;  ///< "not right equivalent" or "inconclusive (necessary conditions hold)"
};
MatherYauReport mather_yau_compare(const Potential& w1, const Potential& w2, int truncation);

/// Substitutes phi into every cycle and renormalises. phi must have an
/// invertible linear part (InputError otherwise).
Potential apply_right_equivalence(const Potential& w, const AlgebraMorphism& phi);

/// Random right-equivalence: invertible integer linear part on each block of
/// parallel arrows plus random higher terms of length 2..max_extra_length.
AlgebraMorphism random_right_equivalence(const QuiverPtr& q, int truncation, std::mt19937_64& rng,
                                         int max_extra_length = 3);

} // namespace qpalg
