#pragma once

#include "qpalg/linalg.hpp"

#include <optional>

namespace qpalg {

/// Exact two-phase simplex (Bland's rule) for
///   maximize c·x  subject to  A x = b,  x >= 0.
/// Returns an optimal vertex, or nullopt when the system is infeasible.
/// Throws Error when the objective is unbounded.
std::optional<VectorQ> lp_maximize(const MatrixQ& a, const VectorQ& b, const VectorQ& c);

/// Some x >= 0 with A x = b, or nullopt.
std::optional<VectorQ> lp_feasible(const MatrixQ& a, const VectorQ& b);

} // namespace qpalg
