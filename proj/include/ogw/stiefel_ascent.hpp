#pragma once

// Local maximisation of
//     f(Q) = a * tr(A Q B Q^T) + tr(L^T Q)
// over square orthogonal Q, the reduced form shared by the OGW and fused
// upper bounds. A and B are symmetric.

#include "ogw/types.hpp"

#include <cstdint>
#include <vector>

namespace ogw {

enum class PqnInit { closed_form, identity, random };

struct PqnOptions {
  int max_iters = 500;
  double rel_tol = 1e-9;
  /// Sufficient-increase constant in f(Q+) >= f(Q) + c * ||Q+ - Q||^2 / t.
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  PqnInit init = PqnInit::closed_form;
  std::uint64_t seed = 0;

  void validate() const;
};

class QuadraticTraceObjective {
 public:
  QuadraticTraceObjective(Matrix a, Matrix b, Matrix l, double quad_weight);

  Index dim() const noexcept { return a_.rows(); }
  double value(const Matrix& q) const;
  Matrix gradient(const Matrix& q) const;
  /// Value and gradient sharing the A Q B product.
  double value_and_gradient(const Matrix& q, Matrix& grad) const;

  /// P_A R P_B^T, where P_A, P_B hold the descending eigenvectors of A, B and
  /// R is block diagonal over clusters of equal eigenvalues of B, each block
  /// the polar factor of the matching block of P_A^T L P_B. Attains the
  /// decoupled maximum whenever that maximum is jointly achievable (e.g. for
  /// isomorphic inputs).
  Matrix closed_form_start() const;

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  const Matrix& l() const noexcept { return l_; }
  double quad_weight() const noexcept { return w_; }

 private:
  Matrix a_;
  Matrix b_;
  Matrix l_;
  double w_;
};

struct AscentResult {
  Matrix q;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// f at the start point followed by f after every accepted step.
  std::vector<double> trace;
};

/// Projected gradient ascent with Barzilai-Borwein step lengths and
/// backtracking on the sufficient-increase test. The projection onto the
/// orthogonal group is the polar factor. `warm_start`, when given, overrides
/// opts.init.
AscentResult maximize_on_orthogonal_group(const QuadraticTraceObjective& obj,
                                          const PqnOptions& opts,
                                          const Matrix* warm_start = nullptr);

/// Haar-ish random orthogonal matrix (polar factor of a Gaussian matrix).
Matrix random_orthogonal(Index n, std::uint64_t seed);

}  // namespace ogw
