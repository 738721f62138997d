#pragma once

// Fused variant with a cross-graph feature cost M and trade-off alpha:
//     alpha (||C||^2/m^2 + ||D||^2/n^2)
//       - 1/(mn) * max_P [ 2 alpha tr(C P D P^T) - (1 - alpha) tr(M^T P) ].
// In reduced coordinates the maximand is
//     2 alpha s_C s_D/(mn) - (1 - alpha) s_M/sqrt(mn) + g(Q),
//     g(Q) = 2 alpha tr(C^ Q D^ Q^T) + tr(L^T Q),  L = 2 alpha E^ - (1 - alpha) M^,
// with M^ = U^T M V zero-padded like E^.

#include "ogw/graph_io.hpp"
#include "ogw/ogw.hpp"

namespace ogw {

struct FusedProblem {
  ReducedProblem reduced;
  Matrix mhat_padded;
  double s_m = 0.0;
  double alpha = 1.0;
  Matrix l;
};

/// `m` has one row per node of `c` and one column per node of `d`.
FusedProblem build_fused(const Matrix& c, const Matrix& d, const Matrix& m, double alpha);

QuadraticTraceObjective ofgw_objective(const FusedProblem& fp);

DiscrepancyResult ofgw_lb(const CostMatrix& c, const CostMatrix& d, const FeatureDistance& m,
                          double alpha);
DiscrepancyResult ofgw_ub(const CostMatrix& c, const CostMatrix& d, const FeatureDistance& m,
                          double alpha, const PqnOptions& opts = {});

struct NonnegativityCheck {
  bool holds = false;
  double lhs = 0.0;  // 1^T M 1
  double rhs = 0.0;  // n ||V^T M V||_*
};

/// Sufficient condition for the fused value to be nonnegative (square M).
NonnegativityCheck check_fused_nonnegativity_condition(const FeatureDistance& m);

}  // namespace ogw
