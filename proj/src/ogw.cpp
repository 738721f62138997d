#include "ogw/ogw.hpp"

#include "ogw/error.hpp"
#include "ogw/spectral.hpp"

#include <chrono>
#include <cmath>

namespace ogw {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_order(const Matrix& c, const char* what) {
  if (c.rows() != c.cols()) throw DimensionMismatch(std::string(what) + ": square cost expected");
  if (c.rows() < 2)
    throw InvalidArgument(std::string(what) + ": graph order must be >= 2, got " +
                          std::to_string(c.rows()));
}

Matrix pad_square(const Matrix& x, Index size) {
  Matrix out = Matrix::Zero(size, size);
  out.topLeftCorner(x.rows(), x.cols()) = x;
  return out;
}

}  // namespace

ReducedProblem build_reduced(const Matrix& c_in, const Matrix& d_in) {
  require_order(c_in, "build_reduced");
  require_order(d_in, "build_reduced");
  ReducedProblem rp;
  rp.swapped = c_in.rows() < d_in.rows();
  const Matrix& c = rp.swapped ? d_in : c_in;
  const Matrix& d = rp.swapped ? c_in : d_in;
  rp.m = c.rows();
  rp.n = d.rows();
  ProjectionBasis u(rp.m);
  ProjectionBasis v(rp.n);
  const double m = static_cast<double>(rp.m);
  const double n = static_cast<double>(rp.n);
  const double mn = m * n;

  Matrix chat = hat(c, u, u);
  rp.chat = 0.5 * (chat + chat.transpose());
  Matrix dhat = hat(d, v, v);
  rp.dhat_padded = pad_square(0.5 * (dhat + dhat.transpose()), rp.m - 1);

  rp.c_row_proj = u.transpose_times(c.rowwise().sum());
  rp.d_row_proj = v.transpose_times(d.rowwise().sum());
  Matrix e = (2.0 / std::sqrt(mn)) * rp.c_row_proj * rp.d_row_proj.transpose();
  rp.ehat_padded = pad_square(e, rp.m - 1);

  rp.s_c = grand_sum(c);
  rp.s_d = grand_sum(d);
  rp.const_term = rp.s_c * rp.s_d / mn;
  rp.scale_quad = 2.0 / mn;
  rp.norm_c = c.squaredNorm() / (m * m);
  rp.norm_d = d.squaredNorm() / (n * n);
  return rp;
}

ReducedProblem build_reduced(const CostMatrix& c, const CostMatrix& d) {
  return build_reduced(c.matrix(), d.matrix());
}

Coupling recover_coupling(const Matrix& q, Index m, Index n) {
  if (m < 2 || n < 2) throw InvalidArgument("recover_coupling: orders must be >= 2");
  if (q.rows() != m - 1 || q.cols() != n - 1)
    throw DimensionMismatch("recover_coupling: q must be (m-1) x (n-1)");
  Matrix gram = m >= n ? Matrix(q.transpose() * q) : Matrix(q * q.transpose());
  const double defect = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-6)
    throw InvalidArgument("recover_coupling: q is not semi-orthogonal (defect " +
                          std::to_string(defect) + ")");
  ProjectionBasis u(m);
  ProjectionBasis v(n);
  Matrix uq = u.left_multiply(q);                       // m x (n-1)
  Matrix p = v.left_multiply(uq.transpose()).transpose();  // m x n
  p.array() += 1.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(n));
  return Coupling{std::move(p), q};
}

Matrix orient_reduced(const ReducedProblem& rp, const Matrix& q_padded) {
  Matrix q = q_padded.leftCols(rp.n - 1);
  if (rp.swapped) return q.transpose();
  return q;
}

DiscrepancyResult ogw_o(const CostMatrix& c, const CostMatrix& d) {
  auto start = Clock::now();
  const Index m = c.order();
  const Index n = d.order();
  if (m < 1 || n < 1) throw InvalidArgument("ogw_o: orders must be >= 1");
  const Index len = std::max(m, n);
  Vector lc = merge_zeros_desc(sym_eigenvalues_desc(c.matrix()), len - m);
  Vector ld = merge_zeros_desc(sym_eigenvalues_desc(d.matrix()), len - n);
  DiscrepancyResult r;
  r.method = "ogw-o";
  r.bound = BoundKind::lower;
  r.value = (lc / static_cast<double>(m) - ld / static_cast<double>(n)).squaredNorm();
  r.seconds = seconds_since(start);
  return r;
}

DiscrepancyResult ogw_lb(const CostMatrix& c_in, const CostMatrix& d_in, bool with_coupling) {
  auto start = Clock::now();
  require_order(c_in.matrix(), "ogw_lb");
  require_order(d_in.matrix(), "ogw_lb");
  const bool swapped = c_in.order() < d_in.order();
  const Matrix& c = swapped ? d_in.matrix() : c_in.matrix();
  const Matrix& d = swapped ? c_in.matrix() : d_in.matrix();
  const Index mi = c.rows();
  const Index ni = d.rows();
  const double m = static_cast<double>(mi);
  const double n = static_cast<double>(ni);
  ProjectionBasis u(mi);
  ProjectionBasis v(ni);

  DiscrepancyResult r;
  r.method = "ogw-lb";
  r.bound = BoundKind::lower;

  Matrix chat = hat(c, u, u);
  Matrix dhat = hat(d, v, v);
  Vector lc;
  Vector ld;
  if (with_coupling) {
    SymEig ec = sym_eig_desc(chat);
    SymEig ed = sym_eig_desc(pad_square(dhat, mi - 1));
    lc = ec.values;
    ld = ed.values;
    Matrix q1 = ec.vectors * ed.vectors.transpose();
    Matrix q = q1.leftCols(ni - 1);
    Coupling cp = recover_coupling(q, mi, ni);
    r.coupling = swapped ? Matrix(cp.p.transpose()) : cp.p;
  } else {
    lc = sym_eigenvalues_desc(chat);
    ld = merge_zeros_desc(sym_eigenvalues_desc(dhat), mi - ni);
  }
  // E^ has rank one, so its nuclear norm is the product of the factor norms.
  const double a = u.transpose_times(c.rowwise().sum()).norm();
  const double b = v.transpose_times(d.rowwise().sum()).norm();
  // ||C||^2 = ||C^||^2 + 2a^2/m + s_C^2/m^2 in the basis [1/sqrt(m), U], so the bound
  // regroups into a sum of squares. That form has no cancellation near zero.
  const double rank_one = a / (m * std::sqrt(m)) - b / (n * std::sqrt(n));
  const double cst = grand_sum(c) / (m * m) - grand_sum(d) / (n * n);
  r.value = (lc / m - ld / n).squaredNorm() + 2.0 * rank_one * rank_one + cst * cst;
  r.seconds = seconds_since(start);
  return r;
}

QuadraticTraceObjective ogw_objective(const ReducedProblem& rp) {
  return QuadraticTraceObjective(rp.chat, rp.dhat_padded, rp.ehat_padded, 1.0);
}

OgwUbSolution solve_ogw_ub(const Matrix& c, const Matrix& d, const PqnOptions& opts,
                           const Matrix* warm_start) {
  OgwUbSolution sol;
  sol.reduced = build_reduced(c, d);
  const auto& rp = sol.reduced;
  sol.ascent = maximize_on_orthogonal_group(ogw_objective(rp), opts, warm_start);
  sol.value = rp.norm_c + rp.norm_d - rp.scale_quad * (rp.const_term + sol.ascent.value);
  return sol;
}

DiscrepancyResult ogw_ub(const CostMatrix& c, const CostMatrix& d, const PqnOptions& opts) {
  auto start = Clock::now();
  OgwUbSolution sol = solve_ogw_ub(c.matrix(), d.matrix(), opts);
  DiscrepancyResult r;
  r.method = "ogw-ub";
  r.bound = BoundKind::upper;
  r.value = sol.value;
  r.iterations = sol.ascent.iterations;
  r.converged = sol.ascent.converged;
  Matrix q = orient_reduced(sol.reduced, sol.ascent.q);
  r.coupling = recover_coupling(q, c.order(), d.order()).p;
  r.seconds = seconds_since(start);
  return r;
}

LowerBoundFactors lower_bound_factors(const Matrix& c, const Matrix& d) {
  ReducedProblem rp = build_reduced(c, d);
  SymEig ec = sym_eig_desc(rp.chat);
  SymEig ed = sym_eig_desc(rp.dhat_padded);
  LowerBoundFactors f;
  f.q1 = orient_reduced(rp, ec.vectors * ed.vectors.transpose());
  f.q2 = orient_reduced(rp, polar_factor(rp.ehat_padded));
  const double nuclear = 2.0 / std::sqrt(static_cast<double>(rp.m) * static_cast<double>(rp.n)) *
                         rp.c_row_proj.norm() * rp.d_row_proj.norm();
  f.value = rp.norm_c + rp.norm_d -
            rp.scale_quad * (ec.values.dot(ed.values) + nuclear + rp.const_term);
  return f;
}

}  // namespace ogw
