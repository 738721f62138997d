#include "ogw/barycenter.hpp"

#include "ogw/error.hpp"
#include "ogw/ogw.hpp"
#include "ogw/spectral.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ogw {

BarycenterVariant parse_barycenter_variant(const std::string& name) {
  if (name == "lb") return BarycenterVariant::lb;
  if (name == "ub") return BarycenterVariant::ub;
  throw InvalidArgument("unknown barycenter variant '" + name + "' (expected lb or ub)");
}

namespace {

// U X U^T for an (m-1) x (m-1) matrix X.
Matrix sandwich(const ProjectionBasis& u, const Matrix& x) {
  Matrix ux = u.left_multiply(x);
  return u.left_multiply(ux.transpose()).transpose();
}

// P D P^T for P = 1 1^T / sqrt(mn) + U Q V^T, with the quadratic part built
// from q1 and the cross part from q2 (the same matrix for the joint solve).
Matrix transported_cost(const Matrix& d, const Matrix& q1, const Matrix& q2, Index m) {
  const Index n = d.rows();
  ProjectionBasis u(m);
  ProjectionBasis v(n);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  Matrix dhat = hat(d, v, v);
  dhat = 0.5 * (dhat + dhat.transpose());
  Matrix g = sandwich(u, q1 * dhat * q1.transpose());
  Matrix r = u.left_multiply(q2 * v.transpose_times(d.rowwise().sum()));  // m x 1
  const double a = 1.0 / std::sqrt(mn);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < m; ++i) g(i, j) += a * (r(j, 0) + r(i, 0));
  g.array() += grand_sum(d) / mn;
  return g;
}

std::vector<double> normalized_weights(const std::vector<double>& w, std::size_t count) {
  if (w.empty()) return std::vector<double>(count, 1.0 / static_cast<double>(count));
  if (w.size() != count) throw InvalidArgument("one weight per sample is required");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("weights must be nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("weights must sum to 1");
  std::vector<double> out(w);
  for (double& x : out) x /= total;
  return out;
}

}  // namespace

BarycenterResult solve_barycenter(const BarycenterSpec& spec) {
  if (spec.samples.empty()) throw InvalidArgument("barycenter needs at least one sample");
  if (spec.m < 2) throw InvalidArgument("barycenter order m must be >= 2");
  if (spec.outer_iters < 0) throw InvalidArgument("outer_iters must be >= 0");
  for (const auto& s : spec.samples)
    if (s.order() < 2) throw InvalidArgument("every sample needs order >= 2");
  const auto w = normalized_weights(spec.weights, spec.samples.size());
  spec.pqn.validate();
  const Index m = spec.m;
  const std::size_t k = spec.samples.size();

  Matrix c(m, m);
  {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i) c(i, j) = unif(rng);
    c = 0.5 * (c + c.transpose()).eval();
    c.diagonal().setZero();
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double n = static_cast<double>(spec.samples[i].order());
    scale += w[i] * spec.samples[i].matrix().squaredNorm() / (n * n);
  }

  BarycenterResult res;
  std::vector<Matrix> q1(k), q2(k), warm(k);
  for (int it = 0;; ++it) {
    double objective = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const Matrix& d = spec.samples[i].matrix();
      if (spec.variant == BarycenterVariant::lb) {
        LowerBoundFactors f = lower_bound_factors(c, d);
        objective += w[i] * f.value;
        q1[i] = std::move(f.q1);
        q2[i] = std::move(f.q2);
      } else {
        OgwUbSolution sol = solve_ogw_ub(c, d, spec.pqn, warm[i].size() ? &warm[i] : nullptr);
        objective += w[i] * sol.value;
        q1[i] = orient_reduced(sol.reduced, sol.ascent.q);
        q2[i] = q1[i];
        warm[i] = std::move(sol.ascent.q);
      }
    }
    res.objective_trace.push_back(objective);
    const std::size_t t = res.objective_trace.size();
    if (t >= 2) {
      const double prev = res.objective_trace[t - 2];
      if (std::abs(prev - objective) <= spec.rel_tol * std::abs(prev)) res.converged = true;
    }
    if (std::abs(objective) <= 1e-13 * (1.0 + scale)) res.converged = true;
    if (res.converged || it >= spec.outer_iters) break;

    Matrix next = Matrix::Zero(m, m);
    for (std::size_t i = 0; i < k; ++i) {
      const double n = static_cast<double>(spec.samples[i].order());
      next += (w[i] / n) * transported_cost(spec.samples[i].matrix(), q1[i], q2[i], m);
    }
    next *= static_cast<double>(m);
    c = 0.5 * (next + next.transpose());
    ++res.iterations;
  }

  res.c_star = lift_to_full(hat(c));
  res.couplings.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    res.couplings.push_back(recover_coupling(q1[i], m, spec.samples[i].order()).p);
  return res;
}

Matrix spectral_reconstruct(const Matrix& c_star, const std::vector<CostMatrix>& samples,
                            const std::vector<double>& weights) {
  const Index m = c_star.rows();
  if (m < 2 || c_star.cols() != m) throw InvalidArgument("spectral_reconstruct: bad barycenter");
  const auto w = normalized_weights(weights, samples.size());
  const Vector sigma = sym_eigenvalues_desc(hat(c_star));
  Matrix out = Matrix::Zero(m - 1, m - 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (w[i] == 0.0) continue;
    const Index n = samples[i].order();
    if (n < 2) throw InvalidArgument("spectral_reconstruct: sample order must be >= 2");
    Matrix s;
    if (n <= m) {
      Matrix padded = Matrix::Zero(m - 1, m - 1);
      padded.topLeftCorner(n - 1, n - 1) = hat(samples[i].matrix());
      s = sym_eig_desc(padded).vectors;
    } else {
      // Larger sample: keep the m-1 eigenpairs of largest magnitude (still in
      // descending order), cut the vectors to m-1 rows and re-orthonormalise.
      SymEig e = sym_eig_desc(hat(samples[i].matrix()));
      std::vector<Index> idx(static_cast<std::size_t>(n - 1));
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        return std::abs(e.values(a)) > std::abs(e.values(b));
      });
      idx.resize(static_cast<std::size_t>(m - 1));
      std::sort(idx.begin(), idx.end());
      Matrix cut(m - 1, m - 1);
      for (Index j = 0; j < m - 1; ++j)
        cut.col(j) = e.vectors.col(idx[static_cast<std::size_t>(j)]).head(m - 1);
      s = polar_factor(cut);
    }
    out += w[i] * (s * sigma.asDiagonal() * s.transpose());
  }
  return 0.5 * (out + out.transpose());
}

Matrix lift_to_full(const Matrix& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("lift_to_full: square input expected");
  const Index m = x.rows() + 1;
  ProjectionBasis v(m);
  Matrix sym = 0.5 * (x + x.transpose());
  Matrix b = sandwich(v, sym);
  Vector d = b.diagonal();
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < m; ++i) b(i, j) -= 0.5 * (d(i) + d(j));
  b.diagonal().setZero();
  return 0.5 * (b + b.transpose());
}

ThresholdResult threshold_adjacency(const Matrix& c) {
  const Index n = c.rows();
  if (c.cols() != n) throw DimensionMismatch("threshold_adjacency: square input expected");
  ThresholdResult best;
  if (n < 2) {
    best.graph = Graph::from_edges(static_cast<int>(n), {});
    return best;
  }
  std::vector<double> vals;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) vals.push_back(c(i, j));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<double> candidates;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) candidates.push_back(0.5 * (vals[i] + vals[i + 1]));
  candidates.push_back(vals.back());

  bool first = true;
  for (double t : candidates) {
    std::vector<std::pair<int, int>> edges;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (c(i, j) <= t) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    Graph g = Graph::from_edges(static_cast<int>(n), std::move(edges));
    const double err = (c - shortest_path_cost(g).matrix()).norm();
    if (first || err < best.error) {
      best.graph = std::move(g);
      best.threshold = t;
      best.error = err;
      first = false;
    }
  }
  return best;
}

}  // namespace ogw
