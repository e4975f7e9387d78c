#pragma once

#include "qpalg/groebner.hpp"
#include "qpalg/potential.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpalg {

/// How words of the presentation are normalised. Commutative mode sorts the
/// letters of every word (one-vertex quivers only), which models a quotient
/// by the commutators of the generators.
enum class WordMode { Free, Commutative };

/// A dg algebra freely generated (in the completed sense) by the arrows of a
/// graded quiver, with d given on generators and extended by the graded
/// Leibniz rule d(uv) = d(u)v + (-1)^|u| u d(v).
struct DGAPresentation {
  QuiverPtr quiver;                  ///< arrow degrees are the cohomological degrees
  std::vector<NCSeries> differential;  ///< indexed by arrow id
  int truncation = 0;
  WordMode mode = WordMode::Free;

  // Filled in by build_ginzburg.
  std::optional<Potential> potential;
  std::vector<ArrowId> dual;  ///< a -> a* for the original arrows
  std::vector<ArrowId> loop;  ///< vertex -> t_i

  const Quiver& graded_quiver() const { return *quiver; }
  /// d applied to a series, Leibniz rule with Koszul signs.
  NCSeries d(const NCSeries& s) const;
  /// Replaces d on the generator with this label.
  void override_differential(const std::string& label, const std::string& expr);
};

/// Doubled graded quiver: a in degree 0, a* (label a') reversed in degree -1,
/// a loop t_<vertex> in degree -2 per vertex. d(a) = 0, d(a*) = D_a w,
/// d(t_i) = e_i (sum_a [a, a*]) e_i.
DGAPresentation build_ginzburg(const Potential& w);

/// Every generator's differential is homogeneous of degree |g| + 1 and
/// d(d(g)) vanishes up to paths of length N.
bool check_d_squared(const DGAPresentation& p, int truncation);

struct HomologyEntry {
  int degree = 0;
  Index dim = 0;
  std::vector<std::string> basis;  ///< one normal word per class
  CertificateStatus certificate = CertificateStatus::Truncated;
  bool stabilized = false;  ///< dims at N-2 and N agree
  bool graded = false;      ///< computed on weight pieces of a positive grading
  std::string warning;
};

/// H^i of the presentation. With a positive weight grading preserved by d,
/// every weight piece is finite and computed exactly (after algebraic Morse
/// reduction along t_i <-> a_i a_i*); the pieces included are those holding a
/// degree-i word of length <= N. Without a grading the result is the image of
/// H^i(length <= N) in H^i(length <= N/2). Exact needs stabilisation from
/// N-2 to N and, for Ginzburg presentations, an exact Jacobi algebra.
HomologyEntry homology(const DGAPresentation& p, int degree, int truncation);

/// Positive weights (indexed by arrow id) with every d(g) homogeneous of
/// weight w(g), if the LP finds any.
std::optional<std::vector<Rational>> dg_weights(const DGAPresentation& p);

/// x in degree 0, theta (label x') in degree -1, commutative words x^a theta^b,
/// d(theta) = x^n.
DGAPresentation pagoda_model(int n, int truncation = 20);

/// Multiplication by theta^2 commutes with d on words of length <= N - 2 and
/// induces isomorphisms H^i -> H^(i-2) for 0 >= i >= -(N/2 - 2) on every
/// weight piece. Also false when check_d_squared fails.
bool verify_u_action(const DGAPresentation& p, int truncation);
bool verify_u_action(int n, int truncation);

/// Elements of V (x) A: generator or idempotent v -> series a.
using Tensor = std::map<PathWord, NCSeries>;

/// v (x) a -> v a - (-1)^{|v||a|} a v, keeping only cycles.
NCSeries del1(const Tensor& t, const QuiverPtr& q, int truncation);
/// v_1...v_n -> sum_i (-1)^{|v_1..v_{i-1}| |v_i..v_n|} v_i (x) v_{i+1}..v_n v_1..v_{i-1}.
Tensor del0(const NCSeries& cycles);
/// d(v (x) a) = (-1)^{|v|} v (x) d(a).
Tensor d_tensor(const DGAPresentation& p, const Tensor& t);
/// Drops zero entries so tensors compare by value.
Tensor normalized(const Tensor& t);

struct STReport {
  bool dt_identity = false;    ///< sum_i d(t_i) = del1(sum_a a (x) a*)
  bool dual_identity = false;  ///< d(sum_a a (x) a*) = del0(w)
  bool passed() const { return dt_identity && dual_identity; }
};
STReport verify_S_of_t(const Potential& w);

} // namespace qpalg
