#pragma once

// Small exact linear solvers used by the GW baselines.

#include "ogw/types.hpp"

#include <vector>

namespace ogw {

struct Assignment {
  std::vector<int> row_to_col;
  double total = 0.0;
};

/// Minimum-cost perfect matching on a square cost matrix, O(n^3).
Assignment hungarian(const Matrix& costs);

/// Minimum-cost transport plan with row sums `p` and column sums `q`
/// (successive shortest paths with potentials). The masses must agree to
/// 1e-9 relative.
Matrix solve_transport(const Matrix& costs, const Vector& p, const Vector& q);

/// (1/n) sum (a_i - b_i)^2 for two ascending vectors of equal length.
double ot1d_squared(const Vector& a, const Vector& b);

/// Squared-cost transport between the uniform distributions on the entries
/// of `a` and `b` (any lengths). Inputs need not be sorted.
double ot1d_squared_uniform(Vector a, Vector b);

}  // namespace ogw
