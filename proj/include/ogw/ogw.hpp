#pragma once

// Orthogonal Gromov-Wasserstein discrepancy: closed-form lower bounds and a
// locally optimised upper bound.
//
// With the larger order m in front (arguments are swapped internally when
// needed), couplings are parameterised as
//     P = 1_m 1_n^T / sqrt(mn) + U Q V^T
// and the discrepancy becomes
//     ||C||^2/m^2 + ||D||^2/n^2 - 2/(mn) * [ s_C s_D/(mn) + max_Q f(Q) ],
//     f(Q) = tr(C^ Q D^ Q^T) + tr(E^^T Q),
// with C^ = U^T C U, D^ = V^T D V and E^ = 2/sqrt(mn) U^T C 1 1^T D V, the
// last two zero-padded to (m-1) x (m-1).

#include "ogw/graph_io.hpp"
#include "ogw/stiefel_ascent.hpp"
#include "ogw/types.hpp"

namespace ogw {

struct ReducedProblem {
  Index m = 0;  // larger order
  Index n = 0;  // smaller order
  bool swapped = false;
  Matrix chat;
  Matrix dhat_padded;
  Matrix ehat_padded;
  Vector c_row_proj;  // U^T C 1_m
  Vector d_row_proj;  // V^T D 1_n
  double const_term = 0.0;  // s_C s_D / (mn)
  double scale_quad = 0.0;  // 2 / (mn)
  double norm_c = 0.0;      // ||C||^2 / m^2
  double norm_d = 0.0;      // ||D||^2 / n^2
  double s_c = 0.0;
  double s_d = 0.0;
};

ReducedProblem build_reduced(const Matrix& c, const Matrix& d);
ReducedProblem build_reduced(const CostMatrix& c, const CostMatrix& d);

struct Coupling {
  Matrix p;
  Matrix q;
};

/// P = 1 1^T / sqrt(mn) + U q V^T for q of shape (m-1) x (n-1). q must have
/// orthonormal columns (m >= n) or rows (m < n) to 1e-6.
Coupling recover_coupling(const Matrix& q, Index m, Index n);

/// Truncates a padded reduced variable to the unpadded block and orients it
/// to the caller's argument order: (order(C)-1) x (order(D)-1).
Matrix orient_reduced(const ReducedProblem& rp, const Matrix& q_padded);

DiscrepancyResult ogw_o(const CostMatrix& c, const CostMatrix& d);

/// Eigenvalue-only evaluation unless `with_coupling` is set, in which case
/// the coupling built from the quadratic-term maximiser is attached.
DiscrepancyResult ogw_lb(const CostMatrix& c, const CostMatrix& d, bool with_coupling = false);

DiscrepancyResult ogw_ub(const CostMatrix& c, const CostMatrix& d, const PqnOptions& opts = {});

struct OgwUbSolution {
  ReducedProblem reduced;
  AscentResult ascent;
  double value = 0.0;
};

QuadraticTraceObjective ogw_objective(const ReducedProblem& rp);

/// Upper bound with access to the solver state. `warm_start` is a padded
/// (m-1) x (m-1) reduced variable in the internal orientation.
OgwUbSolution solve_ogw_ub(const Matrix& c, const Matrix& d, const PqnOptions& opts,
                           const Matrix* warm_start = nullptr);

/// Maximisers of the two decoupled terms, oriented to the caller's argument
/// order: q1 pairs the descending eigenvectors of C^ and D^, q2 maximises
/// the linear term.
struct LowerBoundFactors {
  Matrix q1;
  Matrix q2;
  double value = 0.0;  // the lower bound itself
};

LowerBoundFactors lower_bound_factors(const Matrix& c, const Matrix& d);

}  // namespace ogw
