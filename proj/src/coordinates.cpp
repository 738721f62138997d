#include "ogw/barycenter.hpp"
#include "ogw/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>
#include <random>

namespace ogw {

namespace {

struct StressData {
  const Matrix* c;
  Index n;
};

// Points are packed row-major: (x_0, y_0, x_1, y_1, ...).
double stress_packed(const gsl_vector* v, const StressData& s, gsl_vector* grad) {
  if (grad) gsl_vector_set_zero(grad);
  double total = 0.0;
  for (Index i = 0; i < s.n; ++i) {
    for (Index j = i + 1; j < s.n; ++j) {
      const double dx = gsl_vector_get(v, 2 * i) - gsl_vector_get(v, 2 * j);
      const double dy = gsl_vector_get(v, 2 * i + 1) - gsl_vector_get(v, 2 * j + 1);
      const double r = std::hypot(dx, dy);
      const double res = r - (*s.c)(i, j);
      total += res * res;
      if (grad && r > 0.0) {
        const double k = 2.0 * res / r;
        *gsl_vector_ptr(grad, 2 * i) += k * dx;
        *gsl_vector_ptr(grad, 2 * i + 1) += k * dy;
        *gsl_vector_ptr(grad, 2 * j) -= k * dx;
        *gsl_vector_ptr(grad, 2 * j + 1) -= k * dy;
      }
    }
  }
  return total;
}

double f_cb(const gsl_vector* v, void* p) {
  return stress_packed(v, *static_cast<StressData*>(p), nullptr);
}
void df_cb(const gsl_vector* v, void* p, gsl_vector* g) {
  stress_packed(v, *static_cast<StressData*>(p), g);
}
void fdf_cb(const gsl_vector* v, void* p, double* f, gsl_vector* g) {
  *f = stress_packed(v, *static_cast<StressData*>(p), g);
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fdfminimizer* m) const { gsl_multimin_fdfminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

CoordinateResult run_once(const Matrix& c, std::mt19937_64& rng) {
  const Index n = c.rows();
  StressData data{&c, n};
  double spread = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) spread = std::max(spread, c(i, j));
  if (spread <= 0.0) spread = 1.0;
  std::uniform_real_distribution<double> unif(-spread, spread);
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(static_cast<std::size_t>(2 * n)));
  for (Index k = 0; k < 2 * n; ++k) gsl_vector_set(x.get(), static_cast<std::size_t>(k), unif(rng));

  gsl_multimin_function_fdf fdf;
  fdf.n = static_cast<std::size_t>(2 * n);
  fdf.f = f_cb;
  fdf.df = df_cb;
  fdf.fdf = fdf_cb;
  fdf.params = &data;
  std::unique_ptr<gsl_multimin_fdfminimizer, MinimizerDeleter> mz(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, fdf.n));
  gsl_multimin_fdfminimizer_set(mz.get(), &fdf, x.get(), 0.1 * spread, 0.1);

  CoordinateResult out;
  constexpr int kMaxIters = 5000;
  for (int it = 0; it < kMaxIters; ++it) {
    out.iterations = it + 1;
    const int status = gsl_multimin_fdfminimizer_iterate(mz.get());
    if (status == GSL_ENOPROG) {
      out.converged = true;  // no further progress possible from here
      break;
    }
    if (status != GSL_SUCCESS) break;
    if (gsl_multimin_test_gradient(mz->gradient, 1e-10) == GSL_SUCCESS) {
      out.converged = true;
      break;
    }
  }
  out.points.resize(n, 2);
  for (Index i = 0; i < n; ++i) {
    out.points(i, 0) = gsl_vector_get(mz->x, static_cast<std::size_t>(2 * i));
    out.points(i, 1) = gsl_vector_get(mz->x, static_cast<std::size_t>(2 * i + 1));
  }
  out.stress = mz->f;
  return out;
}

}  // namespace

double stress_2d(const Matrix& points, const Matrix& c) {
  double total = 0.0;
  for (Index i = 0; i < c.rows(); ++i)
    for (Index j = i + 1; j < c.rows(); ++j) {
      const double r = (points.row(i) - points.row(j)).norm() - c(i, j);
      total += r * r;
    }
  return total;
}

CoordinateResult recover_coordinates_2d(const Matrix& c, std::uint64_t seed, int restarts) {
  if (c.rows() != c.cols()) throw DimensionMismatch("recover_coordinates_2d: square input");
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  const Index n = c.rows();
  if (n == 0) return CoordinateResult{Matrix(0, 2), 0.0, 0, true};
  if (n == 1) return CoordinateResult{Matrix::Zero(1, 2), 0.0, 0, true};
  // GSL aborts on internal errors by default; statuses are checked instead
  static const bool handler_off = (gsl_set_error_handler_off(), true);
  (void)handler_off;
  std::mt19937_64 rng(seed);
  CoordinateResult best;
  for (int r = 0; r < restarts; ++r) {
    CoordinateResult cur = run_once(c, rng);
    if (r == 0 || cur.stress < best.stress) best = std::move(cur);
  }
  // centre the configuration; the rest of the rigid motion is left as found
  best.points.rowwise() -= best.points.colwise().mean();
  return best;
}

}  // namespace ogw
