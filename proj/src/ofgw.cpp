#include "ogw/ofgw.hpp"

#include "ogw/error.hpp"
#include "ogw/spectral.hpp"

#include <chrono>
#include <cmath>

namespace ogw {

namespace {

using Clock = std::chrono::steady_clock;

double value_from(const FusedProblem& fp, double maximand) {
  const auto& rp = fp.reduced;
  const double a = fp.alpha;
  const double mn = static_cast<double>(rp.m) * static_cast<double>(rp.n);
  // Written as alpha-scaled terms plus half the reduced maximum so that
  // alpha = 1, M = 0 reproduces the plain OGW expression term by term.
  return a * (rp.norm_c + rp.norm_d) -
         rp.scale_quad * (a * rp.const_term - (1.0 - a) * fp.s_m / (2.0 * std::sqrt(mn)) +
                          0.5 * maximand);
}

}  // namespace

FusedProblem build_fused(const Matrix& c, const Matrix& d, const Matrix& m, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidArgument("alpha must lie in (0, 1], got " + std::to_string(alpha));
  if (m.rows() != c.rows() || m.cols() != d.rows())
    throw DimensionMismatch("feature cost is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " + std::to_string(c.rows()) +
                            "x" + std::to_string(d.rows()));
  FusedProblem fp;
  fp.reduced = build_reduced(c, d);
  fp.alpha = alpha;
  const auto& rp = fp.reduced;
  const Matrix mo = rp.swapped ? Matrix(m.transpose()) : m;
  ProjectionBasis u(rp.m);
  ProjectionBasis v(rp.n);
  fp.mhat_padded = Matrix::Zero(rp.m - 1, rp.m - 1);
  fp.mhat_padded.leftCols(rp.n - 1) = hat(mo, u, v);
  fp.s_m = grand_sum(mo);
  fp.l = (2.0 * alpha) * rp.ehat_padded - (1.0 - alpha) * fp.mhat_padded;
  if (!fp.l.allFinite()) throw NumericalError("fused linear term is not finite");
  return fp;
}

QuadraticTraceObjective ofgw_objective(const FusedProblem& fp) {
  return QuadraticTraceObjective(fp.reduced.chat, fp.reduced.dhat_padded, fp.l, 2.0 * fp.alpha);
}

DiscrepancyResult ofgw_lb(const CostMatrix& c, const CostMatrix& d, const FeatureDistance& m,
                          double alpha) {
  auto start = Clock::now();
  FusedProblem fp = build_fused(c.matrix(), d.matrix(), m.matrix(), alpha);
  const auto& rp = fp.reduced;
  Vector lc = sym_eigenvalues_desc(rp.chat);
  Vector ld = sym_eigenvalues_desc(rp.dhat_padded);
  const double upper = 2.0 * alpha * lc.dot(ld) + nuclear_norm(fp.l);
  DiscrepancyResult r;
  r.method = "ofgw-lb";
  r.bound = BoundKind::lower;
  r.value = value_from(fp, upper);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

DiscrepancyResult ofgw_ub(const CostMatrix& c, const CostMatrix& d, const FeatureDistance& m,
                          double alpha, const PqnOptions& opts) {
  auto start = Clock::now();
  FusedProblem fp = build_fused(c.matrix(), d.matrix(), m.matrix(), alpha);
  AscentResult asc = maximize_on_orthogonal_group(ofgw_objective(fp), opts);
  DiscrepancyResult r;
  r.method = "ofgw-ub";
  r.bound = BoundKind::upper;
  r.value = value_from(fp, asc.value);
  r.iterations = asc.iterations;
  r.converged = asc.converged;
  r.coupling = recover_coupling(orient_reduced(fp.reduced, asc.q), c.order(), d.order()).p;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

NonnegativityCheck check_fused_nonnegativity_condition(const FeatureDistance& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("condition check needs a square M");
  NonnegativityCheck out;
  const Index n = m.rows();
  out.lhs = grand_sum(m.matrix());
  if (n >= 2) {
    ProjectionBasis v(n);
    out.rhs = static_cast<double>(n) * nuclear_norm(hat(m.matrix(), v, v));
  }
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

}  // namespace ogw
