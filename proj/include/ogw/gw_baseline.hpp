#pragma once

// Reference Gromov-Wasserstein computations: a conditional-gradient local
// solver, the eccentricity and row-profile lower bounds, and an exhaustive
// permutation oracle for tiny graphs.
//
// Values use the squared-loss normalisation
//     sum_{i,j,k,l} (C_ik - D_jl)^2 T_ij T_kl
//       = p^T C^2 p + q^T D^2 q - 2 tr(C T D T^T)   (C^2 entrywise),
// which coincides with the OGW scale for uniform marginals and equal orders.

#include "ogw/graph_io.hpp"
#include "ogw/types.hpp"

#include <optional>
#include <vector>

namespace ogw {

struct TransportPlan {
  Matrix t;
  Vector p;
  Vector q;
};

struct GwFwOptions {
  std::optional<Vector> p;  // uniform when absent
  std::optional<Vector> q;
  int max_iters = 200;
  double tol = 1e-9;
  /// Starting plan; defaults to p q^T.
  std::optional<Matrix> start;
};

struct GwFwResult {
  DiscrepancyResult result;
  TransportPlan plan;
  /// Objective at the start plan followed by one entry per iteration.
  std::vector<double> trace;
};

/// Objective of a fixed plan in the normalisation above.
double gw_objective(const Matrix& c, const Matrix& d, const Matrix& t, const Vector& p,
                    const Vector& q);

GwFwResult gw_fw(const CostMatrix& c, const CostMatrix& d, const GwFwOptions& opts = {});

DiscrepancyResult gw_flb(const CostMatrix& c, const CostMatrix& d);

/// Equal orders only; throws Unsupported otherwise.
DiscrepancyResult gw_tlb(const CostMatrix& c, const CostMatrix& d);

struct PermutationOracle {
  DiscrepancyResult result;
  /// perm[i] is the node of C matched to node i of D.
  std::vector<int> perm;
};

/// min over permutations of (1/n^2) ||Pi^T C Pi - D||_F^2; n <= 8.
PermutationOracle brute_force_perm(const CostMatrix& c, const CostMatrix& d);

}  // namespace ogw
