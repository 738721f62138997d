#pragma once

// Linear-algebra substrate shared by every discrepancy in the library.
//
// V is the n x (n-1) matrix with orthonormal columns orthogonal to the
// all-ones vector:
//   row 0        = y * 1^T,           y = -1/sqrt(n)
//   rows 1..n-1  = x * 1 1^T + I,     x = -1/(n + sqrt(n))
// Its structure lets V^T Z and V Z be formed in O(n * cols) without ever
// materialising V.

#include "ogw/graph_io.hpp"
#include "ogw/types.hpp"

namespace ogw {

class ProjectionBasis {
 public:
  explicit ProjectionBasis(Index n);

  Index order() const noexcept { return n_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  /// V * Z for Z with n-1 rows.
  Matrix left_multiply(const Matrix& z) const;
  /// V^T * Z for Z with n rows.
  Matrix left_multiply_transpose(const Matrix& z) const;
  Vector transpose_times(const Vector& z) const;

  Matrix matrix() const;

 private:
  Index n_;
  double x_;
  double y_;
};

/// Throws InvalidArgument for n < 2.
ProjectionBasis make_projection_basis(Index n);

/// left^T X right, an (m-1) x (n-1) matrix.
Matrix hat(const Matrix& x, const ProjectionBasis& left, const ProjectionBasis& right);
/// Same basis on both sides; the result is symmetrised when X is symmetric.
Matrix hat(const Matrix& x);

double grand_sum(const Matrix& x);

struct SymEig {
  Vector values;   // nonincreasing
  Matrix vectors;  // column j pairs with values(j)
};

/// Symmetrises by averaging, then decomposes. Throws NumericalError on
/// non-finite input.
SymEig sym_eig_desc(const Matrix& s);
Vector sym_eigenvalues_desc(const Matrix& s);

/// Sorts `values` descending after appending `zeros` zero entries.
Vector merge_zeros_desc(const Vector& values, Index zeros);

double nuclear_norm(const Matrix& x);

/// U V^T from the thin SVD of a tall matrix. Throws NumericalError when the
/// smallest singular value is below 1e-12 (the projection is not unique).
Matrix project_to_stiefel(const Matrix& q);

/// U V^T from the SVD of a square matrix, no rank check.
Matrix polar_factor(const Matrix& x);

struct SpectralEmbedding {
  Index n = 0;
  Vector values;  // length n + 1
};

SpectralEmbedding spectral_embedding(const CostMatrix& c);
SpectralEmbedding spectral_embedding(const Matrix& c);

}  // namespace ogw
