#include "ogw/gw_baseline.hpp"

#include "ogw/error.hpp"
#include "ogw/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace ogw {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vector checked_marginal(const std::optional<Vector>& given, Index size, const char* name) {
  if (!given) return Vector::Constant(size, 1.0 / static_cast<double>(size));
  const Vector& w = *given;
  if (w.size() != size)
    throw DimensionMismatch(std::string(name) + " has length " + std::to_string(w.size()) +
                            ", expected " + std::to_string(size));
  if (!w.allFinite() || w.minCoeff() < 0.0)
    throw InvalidArgument(std::string(name) + " must be a nonnegative finite vector");
  if (std::abs(w.sum() - 1.0) > 1e-9) throw InvalidArgument(std::string(name) + " must sum to 1");
  return w;
}

bool is_uniform(const Vector& w) {
  return (w.array() == w(0)).all();
}

Vector sorted(Vector v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

}  // namespace

double gw_objective(const Matrix& c, const Matrix& d, const Matrix& t, const Vector& p,
                    const Vector& q) {
  const double cst = (c.cwiseAbs2() * p).dot(p) + (d.cwiseAbs2() * q).dot(q);
  return cst - 2.0 * (c * t * d).cwiseProduct(t).sum();
}

GwFwResult gw_fw(const CostMatrix& cm, const CostMatrix& dm, const GwFwOptions& opts) {
  auto start = Clock::now();
  const Matrix& c = cm.matrix();
  const Matrix& d = dm.matrix();
  const Index m = c.rows();
  const Index n = d.rows();
  if (m < 1 || n < 1) throw InvalidArgument("gw_fw: empty graph");
  if (opts.max_iters < 0) throw InvalidArgument("gw_fw: max_iters must be >= 0");

  GwFwResult out;
  out.plan.p = checked_marginal(opts.p, m, "p");
  out.plan.q = checked_marginal(opts.q, n, "q");
  const Vector& p = out.plan.p;
  const Vector& q = out.plan.q;
  Matrix& t = out.plan.t;
  if (opts.start) {
    t = *opts.start;
    if (t.rows() != m || t.cols() != n) throw DimensionMismatch("gw_fw: start plan shape");
    if ((t.rowwise().sum() - p).cwiseAbs().maxCoeff() > 1e-8 ||
        (t.colwise().sum().transpose() - q).cwiseAbs().maxCoeff() > 1e-8)
      throw InvalidArgument("gw_fw: start plan violates the marginals");
  } else {
    t = p * q.transpose();
  }
  const bool assignment = m == n && is_uniform(p) && is_uniform(q);
  const double cst = (c.cwiseAbs2() * p).dot(p) + (d.cwiseAbs2() * q).dot(q);

  Matrix g = c * t * d;
  double f = cst - 2.0 * g.cwiseProduct(t).sum();
  out.trace.push_back(f);
  int it = 0;
  bool converged = false;
  for (; it < opts.max_iters; ++it) {
    Matrix s;
    if (assignment) {
      Assignment a = hungarian(-g);
      s = Matrix::Zero(m, n);
      for (Index i = 0; i < m; ++i) s(i, a.row_to_col[static_cast<std::size_t>(i)]) = p(0);
    } else {
      s = solve_transport(-g, p, q);
    }
    Matrix delta = s - t;
    const double b = -4.0 * g.cwiseProduct(delta).sum();
    if (-b <= opts.tol * std::max(1.0, std::abs(f))) {
      converged = true;
      break;
    }
    const double a = -2.0 * (c * delta * d).cwiseProduct(delta).sum();
    double gamma;
    if (a > 0.0)
      gamma = std::clamp(-b / (2.0 * a), 0.0, 1.0);
    else
      gamma = a + b < 0.0 ? 1.0 : 0.0;
    if (gamma == 0.0) {
      converged = true;
      break;
    }
    Matrix t_new = t + gamma * delta;
    Matrix g_new = c * t_new * d;
    const double f_new = cst - 2.0 * g_new.cwiseProduct(t_new).sum();
    if (f_new > f) {
      // round-off on a flat direction; keep the better plan
      converged = true;
      break;
    }
    t.swap(t_new);
    g.swap(g_new);
    f = f_new;
    out.trace.push_back(f);
  }
  out.result.method = "gw-fw";
  out.result.bound = BoundKind::upper;
  out.result.value = f;
  out.result.iterations = it;
  out.result.converged = converged;
  out.result.coupling = t;
  out.result.seconds = seconds_since(start);
  return out;
}

DiscrepancyResult gw_flb(const CostMatrix& c, const CostMatrix& d) {
  auto start = Clock::now();
  if (c.order() < 1 || d.order() < 1) throw InvalidArgument("gw_flb: empty graph");
  Vector ec = c.matrix().rowwise().mean();
  Vector ed = d.matrix().rowwise().mean();
  DiscrepancyResult r;
  r.method = "gw-flb";
  r.bound = BoundKind::lower;
  r.value = ot1d_squared_uniform(std::move(ec), std::move(ed));
  r.seconds = seconds_since(start);
  return r;
}

DiscrepancyResult gw_tlb(const CostMatrix& cm, const CostMatrix& dm) {
  auto start = Clock::now();
  const Index n = cm.order();
  if (dm.order() != n)
    throw Unsupported("gw-tlb is unsupported for unequal orders (" + std::to_string(n) + " vs " +
                      std::to_string(dm.order()) + ")");
  if (n < 1) throw InvalidArgument("gw_tlb: empty graph");
  std::vector<Vector> rc(static_cast<std::size_t>(n)), rd(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    rc[static_cast<std::size_t>(i)] = sorted(cm.matrix().row(i).transpose());
    rd[static_cast<std::size_t>(i)] = sorted(dm.matrix().row(i).transpose());
  }
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      k(i, j) = ot1d_squared(rc[static_cast<std::size_t>(i)], rd[static_cast<std::size_t>(j)]);
  DiscrepancyResult r;
  r.method = "gw-tlb";
  r.bound = BoundKind::lower;
  r.value = hungarian(k).total / static_cast<double>(n);
  r.seconds = seconds_since(start);
  return r;
}

PermutationOracle brute_force_perm(const CostMatrix& cm, const CostMatrix& dm) {
  auto start = Clock::now();
  const Index n = cm.order();
  if (dm.order() != n) throw Unsupported("brute_force_perm needs equal orders");
  if (n > 8) throw Unsupported("brute_force_perm refuses n > 8 (factorial cost)");
  const Matrix& c = cm.matrix();
  const Matrix& d = dm.matrix();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  PermutationOracle out;
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        const double diff = c(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) - d(i, j);
        s += diff * diff;
      }
    if (s < best) {
      best = s;
      out.perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.result.method = "perm-oracle";
  out.result.bound = BoundKind::oracle;
  out.result.value = n == 0 ? 0.0 : best / static_cast<double>(n * n);
  Matrix pm = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) pm(out.perm[static_cast<std::size_t>(i)], i) = 1.0 / static_cast<double>(n);
  out.result.coupling = pm;
  out.result.seconds = seconds_since(start);
  return out;
}

}  // namespace ogw
