#include "doctest.h"
#include "support.hpp"

#include "ogw/error.hpp"
#include "ogw/ogw.hpp"
#include "ogw/spectral.hpp"

#include <random>

using namespace ogw;
using namespace testsupport;

namespace {

// Objective of the unrelaxed problem evaluated at an explicit coupling P (m x n).
double coupling_objective(const Matrix& c, const Matrix& d, const Matrix& p) {
  const double m = static_cast<double>(c.rows());
  const double n = static_cast<double>(d.rows());
  return c.squaredNorm() / (m * m) + d.squaredNorm() / (n * n) -
         2.0 / (m * n) * (c * p * d * p.transpose()).trace();
}

// Spectrum-only bound from a second eigen route with explicit zero padding.
double dense_spectral_bound(const Matrix& c, const Matrix& d) {
  const Index len = std::max(c.rows(), d.rows());
  auto padded = [len](const Matrix& x) {
    Vector v = Vector::Zero(len);
    Vector e = eigenvalues_desc(x) / static_cast<double>(x.rows());
    v.head(e.size()) = e;
    std::sort(v.data(), v.data() + len, std::greater<double>());
    return v;
  };
  return (padded(c) - padded(d)).squaredNorm();
}

}  // namespace

TEST_CASE("P3 versus C3 closed-form values") {
  const CostMatrix p3(p3_sp());
  const CostMatrix c3(c3_sp());
  CHECK(ogw_o(p3, c3).value == doctest::Approx((12.0 - 6.0 * std::sqrt(3.0)) / 9.0).epsilon(1e-12));
  const double lb = ogw_lb(p3, c3).value;
  const double phi = (spectral_embedding(p3).values - spectral_embedding(c3).values).squaredNorm();
  CHECK(lb == doctest::Approx(phi).epsilon(1e-12));
  CHECK(lb >= -1e-12);
  CHECK(lb <= 2.0 / 9.0 + 1e-12);
  CHECK(min_permutation_objective(p3_sp(), c3_sp()) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  const double ub = ogw_ub(p3, c3).value;
  CHECK(ub >= lb - 1e-12);
  CHECK(ub <= 2.0 / 9.0 + 1e-8);
}

TEST_CASE("reduced problem pieces") {
  ReducedProblem rp = build_reduced(p3_sp(), c3_sp());
  // P3 distances 0,1,2 / 1,0,1 / 2,1,0 sum to 8; C3 has six unit entries
  CHECK(rp.s_c == 8.0);
  CHECK(rp.s_d == 6.0);
  CHECK(rp.const_term == doctest::Approx(48.0 / 9.0).epsilon(1e-14));
  CHECK(rp.scale_quad == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  // normalised contribution of the constant to the objective: s_C s_D / (mn)^2
  CHECK(0.5 * rp.scale_quad * rp.const_term == doctest::Approx(48.0 / 81.0).epsilon(1e-14));

  std::mt19937_64 rng(31);
  Matrix c = random_sp_cost(6, rng).matrix();
  ReducedProblem same = build_reduced(c, c);
  const Matrix& e = same.ehat_padded;
  CHECK((e - e.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Vector ev = eigenvalues_desc(e);
  CHECK(ev.tail(ev.size() - 1).cwiseAbs().maxCoeff() < 1e-10);  // rank one
  CHECK(ev(0) >= 0.0);

  ReducedProblem uneq = build_reduced(random_sp_cost(3, rng).matrix(), random_sp_cost(2, rng).matrix());
  CHECK(uneq.dhat_padded.rows() == 2);
  CHECK(uneq.dhat_padded.row(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(uneq.dhat_padded.col(1).cwiseAbs().maxCoeff() == 0.0);

  ReducedProblem sw = build_reduced(random_sp_cost(2, rng).matrix(), random_sp_cost(4, rng).matrix());
  CHECK(sw.swapped);
  CHECK(sw.m == 4);
  CHECK(sw.n == 2);
}

TEST_CASE("coupling recovery") {
  for (Index n : {2, 3, 6}) {
    Coupling cp = recover_coupling(Matrix::Identity(n - 1, n - 1), n, n);
    CHECK((cp.p - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-14);
  }
  Matrix q(2, 1);
  q << 1, 0;
  Coupling cp = recover_coupling(q, 3, 2);
  CHECK((cp.p.transpose() * cp.p - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((cp.p.rowwise().sum().array() - 2.0 / std::sqrt(6.0)).abs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(recover_coupling(2.0 * q, 3, 2), InvalidArgument);
  CHECK_THROWS_AS(recover_coupling(q, 4, 2), DimensionMismatch);
}

TEST_CASE("lower-bound rotation maps the reduced matrices of isomorphic graphs onto each other") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(rng, 3, 10);
    Graph g = random_graph(n, rng);
    Graph h = permute_graph(g, random_permutation(n, rng));
    Matrix c = shortest_path_cost(g).matrix();
    Matrix d = shortest_path_cost(h).matrix();
    LowerBoundFactors f = lower_bound_factors(c, d);
    CHECK(std::abs(f.value) < 1e-9);
    CHECK((f.q1 * hat(d) * f.q1.transpose() - hat(c)).norm() < 1e-8 * (1.0 + c.norm()));
    Coupling cp = recover_coupling(f.q1, n, n);
    CHECK((cp.p * Vector::Ones(n) - Vector::Ones(n)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("ogw_o special cases") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(rng, 2, 10);
    Matrix c = random_sp_cost(n, rng).matrix();
    Matrix p = permutation_matrix(random_permutation(n, rng));
    CHECK(ogw_o(CostMatrix(c), CostMatrix(Matrix(p * c * p.transpose()))).value < 1e-12);
    const double vs_zero = ogw_o(CostMatrix(c), CostMatrix(Matrix::Zero(n, n))).value;
    CHECK(vs_zero == doctest::Approx(eigenvalues_desc(c).squaredNorm() / (n * n)).epsilon(1e-12));
  }
}

TEST_CASE("property: closed forms agree with dense oracles, equal and unequal orders") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = uniform_int(rng, 2, 14);
    const int n = uniform_int(rng, 2, 14);
    Matrix c = trial % 2 ? random_sp_cost(m, rng).matrix() : random_cost_matrix(m, rng);
    Matrix d = trial % 2 ? random_sp_cost(n, rng).matrix() : random_cost_matrix(n, rng);
    const CostMatrix cc(c), cd(d);
    const double lb = ogw_lb(cc, cd).value;
    CHECK(rel_err(lb, dense_lower_bound(c, d)) < 1e-10);
    CHECK(rel_err(ogw_lb(cc, cd, true).value, lb) < 1e-12);
    CHECK(rel_err(lower_bound_factors(c, d).value, lb) < 1e-10);
    CHECK(rel_err(ogw_o(cc, cd).value, dense_spectral_bound(c, d)) < 1e-10);
  }
}

TEST_CASE("property: symmetry and nonnegativity") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = uniform_int(rng, 2, 12);
    const int n = uniform_int(rng, 2, 12);
    const CostMatrix c = random_sp_cost(m, rng);
    const CostMatrix d = random_sp_cost(n, rng);
    const double lb = ogw_lb(c, d).value;
    CHECK(rel_err(lb, ogw_lb(d, c).value) < 1e-12);
    CHECK(rel_err(ogw_o(c, d).value, ogw_o(d, c).value) < 1e-12);
    CHECK(lb >= -1e-10);
    CHECK(ogw_o(c, d).value >= -1e-10);
    if (trial < 30) {
      const double ub = ogw_ub(c, d).value;
      CHECK(ub >= -1e-10);
      CHECK(rel_err(ub, ogw_ub(d, c).value) < 1e-6);
    }
  }
}

TEST_CASE("property: upper bound equals the objective at its own orthogonal coupling") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = uniform_int(rng, 2, 12);
    const int n = uniform_int(rng, 2, 12);
    Matrix c = random_sp_cost(m, rng).matrix();
    Matrix d = random_sp_cost(n, rng).matrix();
    DiscrepancyResult r = ogw_ub(CostMatrix(c), CostMatrix(d));
    REQUIRE(r.coupling.has_value());
    const Matrix& p = *r.coupling;
    CHECK(p.rows() == m);
    CHECK(p.cols() == n);
    CHECK(rel_err(r.value, coupling_objective(c, d, p)) < 1e-9);
    const double s = std::sqrt(static_cast<double>(std::max(m, n)) / std::min(m, n));
    Matrix gram = m >= n ? Matrix(p.transpose() * p) : Matrix(p * p.transpose());
    CHECK((gram - Matrix::Identity(gram.rows(), gram.rows())).cwiseAbs().maxCoeff() < 1e-8);
    if (m >= n)
      CHECK((p.transpose() * Vector::Ones(m) - s * Vector::Ones(n)).cwiseAbs().maxCoeff() < 1e-9);
    else
      CHECK((p * Vector::Ones(n) - s * Vector::Ones(m)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("upper bound of a graph against itself is zero from the closed-form start") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const CostMatrix c = random_sp_cost(uniform_int(rng, 2, 12), rng);
    ReducedProblem rp = build_reduced(c, c);
    QuadraticTraceObjective obj = ogw_objective(rp);
    const double at_start =
        rp.norm_c + rp.norm_d - rp.scale_quad * (rp.const_term + obj.value(obj.closed_form_start()));
    CHECK(std::abs(at_start) < 1e-10);
    CHECK(std::abs(ogw_ub(c, c).value) < 1e-10);
  }
}

TEST_CASE("property: lower bound never exceeds the best permutation") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = uniform_int(rng, 2, 7);
    Matrix c = random_sp_cost(n, rng).matrix();
    Matrix d = random_sp_cost(n, rng).matrix();
    const double best = min_permutation_objective(c, d);
    CHECK(ogw_lb(CostMatrix(c), CostMatrix(d)).value <= best + 1e-8);
    CHECK(ogw_o(CostMatrix(c), CostMatrix(d)).value <= best + 1e-8);
  }
}

TEST_CASE("property: every PQN start gives a valid upper bound") {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    const CostMatrix c = random_sp_cost(uniform_int(rng, 3, 10), rng);
    const CostMatrix d = random_sp_cost(uniform_int(rng, 3, 10), rng);
    const double lb = ogw_lb(c, d).value;
    for (PqnInit init : {PqnInit::closed_form, PqnInit::identity, PqnInit::random}) {
      PqnOptions opts;
      opts.init = init;
      opts.seed = static_cast<std::uint64_t>(trial);
      CHECK(ogw_ub(c, d, opts).value >= lb - 1e-8);
    }
  }
}

TEST_CASE("order-one and malformed inputs") {
  CHECK_THROWS_AS(ogw_lb(CostMatrix(Matrix::Zero(1, 1)), CostMatrix(c3_sp())), InvalidArgument);
  CHECK_THROWS_AS(build_reduced(Matrix::Zero(1, 1), c3_sp()), InvalidArgument);
}
