#include "ogw/stiefel_ascent.hpp"

#include "ogw/error.hpp"
#include "ogw/spectral.hpp"

#include <cmath>
#include <random>

namespace ogw {

void PqnOptions::validate() const {
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw InvalidArgument("backtrack_factor must lie in (0, 1)");
  if (!(armijo_c >= 0.0)) throw InvalidArgument("armijo_c must be nonnegative");
  if (!(rel_tol >= 0.0)) throw InvalidArgument("rel_tol must be nonnegative");
}

QuadraticTraceObjective::QuadraticTraceObjective(Matrix a, Matrix b, Matrix l, double quad_weight)
    : a_(std::move(a)), b_(std::move(b)), l_(std::move(l)), w_(quad_weight) {
  const Index n = a_.rows();
  if (a_.cols() != n || b_.rows() != n || b_.cols() != n || l_.rows() != n || l_.cols() != n)
    throw DimensionMismatch("objective blocks must share one square shape");
}

double QuadraticTraceObjective::value(const Matrix& q) const {
  Matrix aqb = a_ * q * b_;
  return w_ * aqb.cwiseProduct(q).sum() + l_.cwiseProduct(q).sum();
}

Matrix QuadraticTraceObjective::gradient(const Matrix& q) const {
  Matrix aqb = a_ * q * b_;
  return (2.0 * w_) * aqb + l_;
}

double QuadraticTraceObjective::value_and_gradient(const Matrix& q, Matrix& grad) const {
  Matrix aqb = a_ * q * b_;
  grad = (2.0 * w_) * aqb + l_;
  return w_ * aqb.cwiseProduct(q).sum() + l_.cwiseProduct(q).sum();
}

Matrix QuadraticTraceObjective::closed_form_start() const {
  const Index n = dim();
  if (n == 0) return Matrix(0, 0);
  SymEig ea = sym_eig_desc(a_);
  SymEig eb = sym_eig_desc(b_);
  Matrix lin = ea.vectors.transpose() * l_ * eb.vectors;
  Matrix r = Matrix::Zero(n, n);
  const double tol = 1e-9 * std::max(1.0, eb.values.cwiseAbs().maxCoeff());
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && eb.values(end - 1) - eb.values(end) <= tol) ++end;
    const Index len = end - start;
    r.block(start, start, len, len) = polar_factor(lin.block(start, start, len, len));
    start = end;
  }
  return ea.vectors * r * eb.vectors.transpose();
}

Matrix random_orthogonal(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  return polar_factor(g);
}

AscentResult maximize_on_orthogonal_group(const QuadraticTraceObjective& obj,
                                          const PqnOptions& opts, const Matrix* warm_start) {
  opts.validate();
  const Index n = obj.dim();
  AscentResult res;
  if (warm_start) {
    if (warm_start->rows() != n || warm_start->cols() != n)
      throw DimensionMismatch("warm start has the wrong shape");
    res.q = polar_factor(*warm_start);
  } else {
    switch (opts.init) {
      case PqnInit::closed_form:
        res.q = obj.closed_form_start();
        break;
      case PqnInit::identity:
        res.q = Matrix::Identity(n, n);
        break;
      case PqnInit::random:
        res.q = random_orthogonal(n, opts.seed);
        break;
    }
  }
  if (n == 0) {
    res.converged = true;
    res.trace.push_back(0.0);
    return res;
  }

  Matrix grad;
  double f = obj.value_and_gradient(res.q, grad);
  res.trace.push_back(f);
  const double gnorm = grad.norm();
  if (gnorm == 0.0) {
    res.value = f;
    res.converged = true;
    return res;
  }
  double t = res.q.norm() / gnorm;
  constexpr int kMaxBacktracks = 60;

  Matrix q_new;
  Matrix grad_new;
  for (int it = 0; it < opts.max_iters; ++it) {
    bool accepted = false;
    double f_new = f;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      q_new = polar_factor(res.q + t * grad);
      const double step2 = (q_new - res.q).squaredNorm();
      if (step2 == 0.0) break;
      f_new = obj.value_and_gradient(q_new, grad_new);
      if (f_new >= f + opts.armijo_c * step2 / t) {
        accepted = true;
        break;
      }
      t *= opts.backtrack_factor;
    }
    if (!accepted) {
      // no ascent direction detectable at working precision
      res.converged = true;
      break;
    }
    Matrix s = q_new - res.q;
    const double sy = s.cwiseProduct(grad_new - grad).sum();
    const double gain = f_new - f;
    res.q.swap(q_new);
    grad.swap(grad_new);
    f = f_new;
    res.trace.push_back(f);
    ++res.iterations;
    if (gain <= opts.rel_tol * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
    // Barzilai-Borwein length for ascent; fall back to growing the step
    // where the restriction is locally convex.
    t = sy < 0.0 ? s.squaredNorm() / -sy : 2.0 * t;
  }
  res.value = f;
  return res;
}

}  // namespace ogw
