#pragma once

#include "qpalg/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qpalg {

/// Finite-dimensional associative unital algebra over Q given by structure
/// constants. left(i) is the matrix of x -> b_i x, so (left(i))(k, j) is the
/// coefficient of b_k in b_i b_j.
class FinDimAlgebra {
public:
  FinDimAlgebra() = default;
  /// Validates shapes, the unit axioms and associativity (exhaustively up to
  /// dim 200, on a seeded sample above). Throws InputError on violation.
  FinDimAlgebra(std::vector<std::string> basis, std::vector<MatrixQ> left, VectorQ unit);

  /// table[i][j] = coordinates of b_i b_j.
  static FinDimAlgebra from_table(std::vector<std::string> basis,
                                  const std::vector<std::vector<VectorQ>>& table, VectorQ unit);

  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  const VectorQ& unit() const { return unit_; }
  const MatrixQ& left(Index i) const { return left_[static_cast<std::size_t>(i)]; }
  /// Coordinates of b_i b_j.
  VectorQ product(Index i, Index j) const { return left(i).col(j); }

  VectorQ multiply(const VectorQ& a, const VectorQ& b) const;
  MatrixQ left_mult(const VectorQ& a) const;   ///< x -> a x
  MatrixQ right_mult(const VectorQ& b) const;  ///< x -> x b

  /// Same algebra in the basis given by the columns of p (must be invertible).
  FinDimAlgebra change_basis(const MatrixQ& p) const;

private:
  std::vector<std::string> basis_;
  std::vector<MatrixQ> left_;
  VectorQ unit_;
};

/// Subspace of A given by basis columns.
using Subspace = MatrixQ;

/// Jacobson radical: kernel of the trace form tr(L_x L_y) (characteristic 0).
Subspace radical(const FinDimAlgebra& a);
/// Span of all products u v with u in s, v in t.
Subspace product_space(const FinDimAlgebra& a, const Subspace& s, const Subspace& t);
/// dims of rad^k / rad^{k+1}, k = 0, 1, ... until rad^k = 0.
std::vector<Index> hilbert_function(const FinDimAlgebra& a);
Subspace center(const FinDimAlgebra& a);

struct CommutatorQuotient {
  Index dim = 0;
  Subspace commutators;           ///< basis of span{b_i b_j - b_j b_i}
  std::vector<Index> lifted;      ///< basis elements b_k spanning a complement
};
CommutatorQuotient commutator_quotient(const FinDimAlgebra& a);

struct FrobeniusForm {
  VectorQ functional;  ///< lambda as a covector
  MatrixQ gram;        ///< lambda(b_i b_j)
};

struct SymmetricFormResult {
  std::optional<FrobeniusForm> form;
  /// How a negative answer was established: "exact" (the determinant
  /// polynomial vanishes identically), "trivial" (no nonzero trace functional)
  /// or "randomized" (too many parameters for the exact check).
  std::string evidence;
  int trials = 0;
};
/// Searches for lambda vanishing on [A,A] with nondegenerate Gram matrix.
SymmetricFormResult symmetric_form(const FinDimAlgebra& a, std::uint64_t seed = 1);

/// Complete set of primitive orthogonal idempotents of a basic algebra.
/// Throws RefusalError when A/rad A is not a product of copies of Q.
std::vector<VectorQ> primitive_idempotents(const FinDimAlgebra& a, std::uint64_t seed = 1);

/// Self-injectivity of a basic algebra (Nakayama permutation criterion).
/// Commutative algebras that are not split basic are decided by the existence
/// of a Frobenius form instead. Throws RefusalError for other non-basic input.
bool is_self_injective(const FinDimAlgebra& a, std::uint64_t seed = 1);

struct Fingerprint {
  Index dim = 0;
  std::vector<Index> hilbert;
  Index center_dim = 0;
  Index cocenter_dim = 0;             ///< dim A/[A,A]
  std::optional<bool> self_injective; ///< empty when A is not basic
  bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const FinDimAlgebra& a, std::uint64_t seed = 1);

nlohmann::json to_json(const FinDimAlgebra& a);
FinDimAlgebra algebra_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Fingerprint& f);

/// Standard examples.
FinDimAlgebra truncated_polynomial(int n);  ///< k[x]/(x^n)
FinDimAlgebra split_semisimple(int m);      ///< Q^m
FinDimAlgebra matrix_algebra(int n);        ///< M_n(Q)

} // namespace qpalg
