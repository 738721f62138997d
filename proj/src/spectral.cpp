#include "ogw/spectral.hpp"

#include "ogw/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>

namespace ogw {

ProjectionBasis::ProjectionBasis(Index n) : n_(n) {
  if (n < 2) throw InvalidArgument("projection basis needs n >= 2, got " + std::to_string(n));
  const double r = std::sqrt(static_cast<double>(n));
  x_ = -1.0 / (static_cast<double>(n) + r);
  y_ = -1.0 / r;
}

Matrix ProjectionBasis::left_multiply(const Matrix& z) const {
  if (z.rows() != n_ - 1) throw DimensionMismatch("V * Z: Z must have n-1 rows");
  Eigen::RowVectorXd colsum = z.colwise().sum();
  Matrix out(n_, z.cols());
  out.row(0) = y_ * colsum;
  out.bottomRows(n_ - 1) = z;
  out.bottomRows(n_ - 1).rowwise() += x_ * colsum;
  return out;
}

Matrix ProjectionBasis::left_multiply_transpose(const Matrix& z) const {
  if (z.rows() != n_) throw DimensionMismatch("V^T * Z: Z must have n rows");
  Eigen::RowVectorXd shift = y_ * z.row(0) + x_ * z.bottomRows(n_ - 1).colwise().sum();
  Matrix out = z.bottomRows(n_ - 1);
  out.rowwise() += shift;
  return out;
}

Vector ProjectionBasis::transpose_times(const Vector& z) const {
  if (z.size() != n_) throw DimensionMismatch("V^T * z: z must have length n");
  const double shift = y_ * z(0) + x_ * z.tail(n_ - 1).sum();
  Vector out = z.tail(n_ - 1);
  out.array() += shift;
  return out;
}

Matrix ProjectionBasis::matrix() const {
  Matrix v(n_, n_ - 1);
  v.row(0).setConstant(y_);
  v.bottomRows(n_ - 1).setConstant(x_);
  v.bottomRows(n_ - 1).diagonal().array() += 1.0;
  return v;
}

ProjectionBasis make_projection_basis(Index n) { return ProjectionBasis(n); }

Matrix hat(const Matrix& x, const ProjectionBasis& left, const ProjectionBasis& right) {
  if (x.rows() != left.order() || x.cols() != right.order())
    throw DimensionMismatch("hat: matrix is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", bases are " +
                            std::to_string(left.order()) + " and " + std::to_string(right.order()));
  // R = left^T X, then R right = R[:, 1:] + t 1^T with t = y R[:, 0] + x R[:, 1:] 1.
  Matrix r = left.left_multiply_transpose(x);
  const Index c = x.cols();
  Vector t = right.y() * r.col(0) + right.x() * r.rightCols(c - 1).rowwise().sum();
  Matrix out = r.rightCols(c - 1);
  out.colwise() += t;
  return out;
}

Matrix hat(const Matrix& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("hat: square matrix expected");
  ProjectionBasis b(x.rows());
  Matrix h = hat(x, b, b);
  return 0.5 * (h + h.transpose());
}

double grand_sum(const Matrix& x) { return x.sum(); }

namespace {

void check_square_finite(const Matrix& s, const char* what) {
  if (s.rows() != s.cols()) throw DimensionMismatch(std::string(what) + ": square matrix expected");
  if (!s.allFinite()) throw NumericalError(std::string(what) + ": non-finite entries");
}

}  // namespace

SymEig sym_eig_desc(const Matrix& s) {
  check_square_finite(s, "sym_eig_desc");
  SymEig out;
  if (s.rows() == 0) return out;
  Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Vector sym_eigenvalues_desc(const Matrix& s) {
  check_square_finite(s, "sym_eigenvalues_desc");
  const Index n = s.rows();
  if (n == 0) return Vector();
  // LAPACK's divide-and-conquer driver is markedly faster than Eigen's
  // unblocked tridiagonalisation once n reaches the low hundreds.
  Matrix work = 0.5 * (s + s.transpose());
  Vector w(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n),
                                         work.data(), static_cast<lapack_int>(n), w.data());
  if (info != 0) throw NumericalError("eigenvalue computation failed (info " + std::to_string(info) + ")");
  return w.reverse();
}

Vector merge_zeros_desc(const Vector& values, Index zeros) {
  Vector out(values.size() + zeros);
  out.head(values.size()) = values;
  out.tail(zeros).setZero();
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

double nuclear_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  if (!x.allFinite()) throw NumericalError("nuclear_norm: non-finite entries");
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

Matrix project_to_stiefel(const Matrix& q) {
  if (q.rows() < q.cols()) throw DimensionMismatch("project_to_stiefel: expected rows >= cols");
  if (!q.allFinite()) throw NumericalError("project_to_stiefel: non-finite entries");
  if (q.cols() == 0) return q;
  Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() < 1e-12)
    throw NumericalError("project_to_stiefel: rank-deficient input, projection is not unique");
  return svd.matrixU() * svd.matrixV().transpose();
}

Matrix polar_factor(const Matrix& x) {
  if (x.size() == 0) return x;
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

SpectralEmbedding spectral_embedding(const Matrix& c) {
  const Index n = c.rows();
  if (c.cols() != n) throw DimensionMismatch("spectral_embedding: square matrix expected");
  ProjectionBasis v(n);
  const double nd = static_cast<double>(n);
  SpectralEmbedding e;
  e.n = n;
  e.values.resize(n + 1);
  Matrix h = hat(c, v, v);
  e.values.head(n - 1) = sym_eigenvalues_desc(h) / nd;
  Vector row_sums = c.rowwise().sum();
  e.values(n - 1) = std::sqrt(2.0) * v.transpose_times(row_sums).norm() / std::sqrt(nd) / nd;
  e.values(n) = grand_sum(c) / nd / nd;
  return e;
}

SpectralEmbedding spectral_embedding(const CostMatrix& c) { return spectral_embedding(c.matrix()); }

}  // namespace ogw
