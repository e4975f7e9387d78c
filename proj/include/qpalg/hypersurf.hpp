#pragma once

#include "qpalg/findim.hpp"
#include "qpalg/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpalg {

using Monomial = std::vector<int>;

/// Degree reverse lexicographic order, as a "greater than" so that maps keyed
/// by it list the leading monomial first.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial in named commuting variables with rational coefficients.
class CommPoly {
public:
  using Terms = std::map<Monomial, Rational, DegRevLexGreater>;

  CommPoly() = default;
  explicit CommPoly(std::vector<std::string> vars);

  static CommPoly constant(std::vector<std::string> vars, const Rational& c);
  static CommPoly monomial(std::vector<std::string> vars, Monomial m, const Rational& c = Rational(1));

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Monomial& lead() const { return terms_.begin()->first; }
  const Rational& lead_coefficient() const { return terms_.begin()->second; }
  Rational coefficient(const Monomial& m) const;
  int total_degree() const;

  void add_term(const Monomial& m, const Rational& c);

  CommPoly& operator+=(const CommPoly& o);
  CommPoly& operator-=(const CommPoly& o);
  CommPoly& operator*=(const Rational& c);
  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
  friend CommPoly operator*(CommPoly a, const Rational& c) { return a *= c; }
  friend CommPoly operator*(const CommPoly& a, const CommPoly& b);
  CommPoly times_monomial(const Monomial& m, const Rational& c) const;

  CommPoly derivative(std::size_t var) const;
  /// Value at the origin.
  Rational constant_term() const;

  bool operator==(const CommPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

private:
  std::vector<std::string> vars_;
  Terms terms_;
};

std::string to_string(const CommPoly& p);
std::string monomial_string(const std::vector<std::string>& vars, const Monomial& m);

/// Parses an expression in the given variables (the expression grammar of .qp files).
CommPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);
/// `poly: <expr> vars x,y,...` (the vars clause may also sit on its own line).
CommPoly parse_poly_file(std::string_view text);
CommPoly load_poly(const std::string& path);

/// Reduced Groebner basis for degrevlex, leading coefficients 1, sorted by
/// leading monomial (largest first).
std::vector<CommPoly> groebner_basis(std::vector<CommPoly> gens);
/// Remainder of full reduction by a Groebner basis.
CommPoly normal_form(const CommPoly& f, const std::vector<CommPoly>& gb);

/// k[x]/I described by standard monomials.
struct ArtinQuotient {
  std::vector<std::string> vars;
  std::vector<CommPoly> basis_gb;
  std::vector<Monomial> basis;  ///< standard monomials, increasing; all of them when exact
  bool exact = false;           ///< finitely many standard monomials
  int reached_degree = 0;       ///< when truncated: basis lists standard monomials up to this degree
  std::string warning;          ///< e.g. support away from the origin

  Index dim() const { return static_cast<Index>(basis.size()); }
  std::vector<std::string> basis_strings() const;
};

ArtinQuotient quotient_ring(const std::vector<CommPoly>& gens);
VectorQ coordinates(const CommPoly& f, const ArtinQuotient& a);
/// Matrix of multiplication by f on the standard-monomial basis (exact quotients only).
MatrixQ multiplication_matrix(const CommPoly& f, const ArtinQuotient& a);
/// Structure constants of an exact quotient.
FinDimAlgebra as_algebra(const ArtinQuotient& a);

/// Jacobian ideal quotient; g needs no constant term and a critical point at 0.
ArtinQuotient milnor_algebra(const CommPoly& g);
/// Quotient by g and its partial derivatives.
ArtinQuotient tyurina_algebra(const CommPoly& g);

struct KgReport {
  Index dim = 0;                  ///< kernel of multiplication by g on M_g
  std::vector<std::string> basis;  ///< kernel vectors in the M_g basis
  Index cokernel_dim = 0;         ///< equals dim T_g
  Index tyurina_dim = 0;
};
/// Refuses (RefusalError) when the Milnor algebra is not certified finite.
KgReport kg_module(const CommPoly& g);

/// dim HH^r of the singularity category: T_g for even r, K_g for odd r.
/// Refuses r below the number of variables and non-isolated singularities.
Index stable_hh(const CommPoly& g, int r);

/// x^2 + y^2 + u^2 + v^(2n).
CommPoly dw_polynomial(int n);

struct DWReport {
  int n = 0;
  Index jacobi_dim = 0;
  bool jacobi_exact = false;
  bool class_zero = false;
  Index tyurina_dim = 0;
  bool tyurina_exact = false;
  bool symmetric = false;
  bool periodic = false;
  std::vector<Index> homology;  ///< dims in degrees 0, -1, ..., -8
  std::vector<std::string> reasons;

  bool jacobi_ok() const { return jacobi_exact && jacobi_dim == n; }
  bool tyurina_ok() const { return tyurina_exact && tyurina_dim == 2 * n - 1; }
  bool passed() const { return jacobi_ok() && class_zero && tyurina_ok() && symmetric && periodic; }
};
/// One-loop QP x^(n+1)/(n+1) against the hypersurface x^2+y^2+u^2+v^(2n).
DWReport dw_check(int n, int truncation = 20, int homology_truncation = 16);

} // namespace qpalg
