#include "ogw/transport.hpp"

#include "ogw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ogw {

Assignment hungarian(const Matrix& costs) {
  if (costs.rows() != costs.cols()) throw DimensionMismatch("hungarian: square matrix expected");
  if (!costs.allFinite()) throw InvalidArgument("hungarian: non-finite costs");
  const int n = static_cast<int>(costs.rows());
  Assignment out;
  if (n == 0) return out;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials and matching; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = costs(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.row_to_col.assign(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) out.row_to_col[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  for (int i = 0; i < n; ++i) out.total += costs(i, out.row_to_col[static_cast<std::size_t>(i)]);
  return out;
}

Matrix solve_transport(const Matrix& costs, const Vector& p, const Vector& q) {
  const Index m = costs.rows();
  const Index n = costs.cols();
  if (p.size() != m || q.size() != n) throw DimensionMismatch("solve_transport: marginal sizes");
  if (!costs.allFinite()) throw InvalidArgument("solve_transport: non-finite costs");
  if (p.size() > 0 && p.minCoeff() < 0.0) throw InvalidArgument("negative row marginal");
  if (q.size() > 0 && q.minCoeff() < 0.0) throw InvalidArgument("negative column marginal");
  const double mass = p.sum();
  if (std::abs(mass - q.sum()) > 1e-9 * std::max(1.0, mass))
    throw InvalidArgument("solve_transport: marginals carry different mass");

  constexpr double inf = std::numeric_limits<double>::infinity();
  Matrix flow = Matrix::Zero(m, n);
  Vector sup = p;
  Vector dem = q;
  // Node k < m is row k, node m + j is column j. Reduced arc cost
  // c_ij + phi_i - phi_{m+j} stays nonnegative on residual arcs.
  Vector phi = Vector::Zero(m + n);
  for (Index j = 0; j < n; ++j) phi(m + j) = m > 0 ? costs.col(j).minCoeff() : 0.0;

  const double eps = 1e-15 * std::max(1.0, mass);
  Vector dist(m + n);
  std::vector<Index> pred(static_cast<std::size_t>(m + n));
  std::vector<char> done(static_cast<std::size_t>(m + n));

  while (true) {
    Index open_rows = 0, open_cols = 0;
    for (Index i = 0; i < m; ++i) open_rows += sup(i) > eps;
    for (Index j = 0; j < n; ++j) open_cols += dem(j) > eps;
    if (open_rows == 0 || open_cols == 0) break;

    dist.setConstant(inf);
    std::fill(done.begin(), done.end(), 0);
    std::fill(pred.begin(), pred.end(), -1);
    for (Index i = 0; i < m; ++i)
      if (sup(i) > eps) dist(i) = 0.0;
    Index target = -1;
    while (true) {
      Index best = -1;
      for (Index k = 0; k < m + n; ++k)
        if (!done[static_cast<std::size_t>(k)] && dist(k) < inf && (best < 0 || dist(k) < dist(best)))
          best = k;
      if (best < 0) break;
      done[static_cast<std::size_t>(best)] = 1;
      if (best >= m && dem(best - m) > eps) {
        target = best;
        break;
      }
      if (best < m) {
        for (Index j = 0; j < n; ++j) {
          const Index k = m + j;
          if (done[static_cast<std::size_t>(k)]) continue;
          const double rc = std::max(0.0, costs(best, j) + phi(best) - phi(k));
          if (dist(best) + rc < dist(k)) {
            dist(k) = dist(best) + rc;
            pred[static_cast<std::size_t>(k)] = best;
          }
        }
      } else {
        const Index j = best - m;
        for (Index i = 0; i < m; ++i) {
          if (done[static_cast<std::size_t>(i)] || flow(i, j) <= 0.0) continue;
          const double rc = std::max(0.0, -costs(i, j) + phi(best) - phi(i));
          if (dist(best) + rc < dist(i)) {
            dist(i) = dist(best) + rc;
            pred[static_cast<std::size_t>(i)] = best;
          }
        }
      }
    }
    if (target < 0) throw NumericalError("solve_transport: no augmenting path");

    const double dt = dist(target);
    for (Index k = 0; k < m + n; ++k) phi(k) += std::min(dist(k), dt);

    // bottleneck along the path back to a source row
    double delta = dem(target - m);
    Index k = target;
    while (pred[static_cast<std::size_t>(k)] >= 0) {
      const Index prev = pred[static_cast<std::size_t>(k)];
      if (prev >= m) delta = std::min(delta, flow(k, prev - m));  // backward arc col -> row
      k = prev;
    }
    delta = std::min(delta, sup(k));

    const Index source = k;
    k = target;
    while (pred[static_cast<std::size_t>(k)] >= 0) {
      const Index prev = pred[static_cast<std::size_t>(k)];
      if (prev < m) {
        flow(prev, k - m) += delta;
      } else {
        double& f = flow(k, prev - m);
        f = f - delta <= eps ? 0.0 : f - delta;
      }
      k = prev;
    }
    sup(source) = sup(source) - delta <= eps ? 0.0 : sup(source) - delta;
    dem(target - m) = dem(target - m) - delta <= eps ? 0.0 : dem(target - m) - delta;
  }
  return flow;
}

double ot1d_squared(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("ot1d_squared: lengths differ");
  if (a.size() == 0) return 0.0;
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

double ot1d_squared_uniform(Vector a, Vector b) {
  if (a.size() == 0 || b.size() == 0) throw InvalidArgument("ot1d_squared_uniform: empty input");
  std::sort(a.data(), a.data() + a.size());
  std::sort(b.data(), b.data() + b.size());
  const Index m = a.size();
  const Index n = b.size();
  if (m == n) return ot1d_squared(a, b);
  // walk the merged quantile breakpoints i/m and j/n
  double total = 0.0;
  double pos = 0.0;
  Index i = 0, j = 0;
  while (i < m && j < n) {
    const double next_a = static_cast<double>(i + 1) / static_cast<double>(m);
    const double next_b = static_cast<double>(j + 1) / static_cast<double>(n);
    const double next = std::min(next_a, next_b);
    const double diff = a(i) - b(j);
    total += (next - pos) * diff * diff;
    pos = next;
    if (next_a <= next) ++i;
    if (next_b <= next) ++j;
  }
  return total;
}

}  // namespace ogw
