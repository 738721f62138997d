#pragma once

// Weighted Frechet mean of cost matrices under the OGW bounds, and the
// post-processing that turns the optimiser into a usable graph or point set.

#include "ogw/graph_io.hpp"
#include "ogw/stiefel_ascent.hpp"
#include "ogw/types.hpp"

#include <cstdint>
#include <vector>

namespace ogw {

enum class BarycenterVariant { lb, ub };

BarycenterVariant parse_barycenter_variant(const std::string& name);

struct BarycenterSpec {
  std::vector<CostMatrix> samples;
  std::vector<double> weights;  // uniform when empty
  Index m = 0;
  BarycenterVariant variant = BarycenterVariant::lb;
  int outer_iters = 50;
  std::uint64_t seed = 0;
  double rel_tol = 1e-7;
  PqnOptions pqn;
};

struct BarycenterResult {
  /// Symmetric with zero diagonal: the lift of the optimiser's reduced part.
  Matrix c_star;
  /// Weighted objective at every visited iterate, starting from the random
  /// initial matrix.
  std::vector<double> objective_trace;
  /// m x n_i coupling per sample at the final iterate.
  std::vector<Matrix> couplings;
  int iterations = 0;
  bool converged = false;
};

/// Block-coordinate descent: per-sample coupling solves alternate with the
/// exact minimiser C = m * sum_i (w_i / n_i) P_i D_i P_i^T. The iterate is
/// left unconstrained; only the returned c_star is diagonal-corrected.
BarycenterResult solve_barycenter(const BarycenterSpec& spec);

/// Keeps the reduced spectrum of `c_star` and re-pairs it with each sample's
/// reduced eigenvectors (descending on both sides): sum_i w_i S_i Sigma S_i^T.
Matrix spectral_reconstruct(const Matrix& c_star, const std::vector<CostMatrix>& samples,
                            const std::vector<double>& weights);

/// V X V^T - (d 1^T + 1 d^T)/2 with d = diag(V X V^T): the symmetric matrix
/// with zero diagonal whose reduced part is X.
Matrix lift_to_full(const Matrix& x);

struct ThresholdResult {
  Graph graph;
  double threshold = 0.0;
  double error = 0.0;  // ||C - SP(A_t)||_F
};

/// Line search over thresholds t, A_t = [C_ij <= t] off the diagonal.
ThresholdResult threshold_adjacency(const Matrix& c);

struct CoordinateResult {
  Matrix points;  // m x 2
  double stress = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Local minimiser of sum_{i<j} (||x_i - x_j|| - C_ij)^2 via BFGS, best of
/// `restarts` seeded random starts.
CoordinateResult recover_coordinates_2d(const Matrix& c, std::uint64_t seed, int restarts = 4);

double stress_2d(const Matrix& points, const Matrix& c);

}  // namespace ogw
