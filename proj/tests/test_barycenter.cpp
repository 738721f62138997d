#include "doctest.h"
#include "support.hpp"

#include "ogw/barycenter.hpp"
#include "ogw/error.hpp"
#include "ogw/spectral.hpp"

#include <random>

using namespace ogw;
using namespace testsupport;

namespace {

Matrix reconstruct(const BarycenterResult& r, const std::vector<CostMatrix>& samples,
                   const std::vector<double>& weights = {}) {
  return lift_to_full(spectral_reconstruct(r.c_star, samples, weights));
}

std::vector<double> sorted_pairwise(const Matrix& pts) {
  std::vector<double> out;
  for (Index i = 0; i < pts.rows(); ++i)
    for (Index j = i + 1; j < pts.rows(); ++j) out.push_back((pts.row(i) - pts.row(j)).norm());
  std::sort(out.begin(), out.end());
  return out;
}

// Shortest-path costs of a cycle with symmetric uniform jitter on the off-diagonal.
CostMatrix noisy_cycle(int n, double amplitude, std::mt19937_64& rng) {
  Matrix c = shortest_path_cost(cycle_graph(n)).matrix();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      c(i, j) += uniform_real(rng, -amplitude, amplitude);
      c(j, i) = c(i, j);
    }
  return CostMatrix(c);
}

}  // namespace

TEST_CASE("property: a single sample is reproduced exactly") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(rng, 5, 15);
    BarycenterSpec spec;
    spec.samples = {random_sp_cost(n, rng)};
    spec.m = n;
    spec.seed = static_cast<std::uint64_t>(trial);
    BarycenterResult r = solve_barycenter(spec);
    Matrix rec = reconstruct(r, spec.samples);
    CHECK((rec - spec.samples[0].matrix()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("identical samples drive the objective to zero") {
  std::mt19937_64 rng(72);
  for (BarycenterVariant variant : {BarycenterVariant::lb, BarycenterVariant::ub}) {
    const int n = 8;
    const CostMatrix d = random_sp_cost(n, rng);
    BarycenterSpec spec;
    spec.samples = {d, d, d};
    spec.m = n;
    spec.variant = variant;
    BarycenterResult r = solve_barycenter(spec);
    CHECK(std::abs(r.objective_trace.back()) < 1e-8);
    CHECK((eigenvalues_desc(hat(r.c_star)) - eigenvalues_desc(hat(d.matrix()))).cwiseAbs().maxCoeff() <
          1e-6);
    CHECK(r.couplings.size() == 3);
    CHECK(r.c_star.diagonal().cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("property: the objective trace does not increase") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 8; ++trial) {
    BarycenterSpec spec;
    const int k = uniform_int(rng, 2, 4);
    for (int i = 0; i < k; ++i) spec.samples.push_back(random_sp_cost(uniform_int(rng, 4, 10), rng));
    spec.m = uniform_int(rng, 4, 10);
    spec.variant = trial % 2 ? BarycenterVariant::ub : BarycenterVariant::lb;
    spec.outer_iters = 15;
    spec.seed = static_cast<std::uint64_t>(trial);
    BarycenterResult r = solve_barycenter(spec);
    for (std::size_t t = 1; t < r.objective_trace.size(); ++t)
      CHECK(r.objective_trace[t] <= r.objective_trace[t - 1] + 1e-10);
    for (std::size_t i = 0; i < spec.samples.size(); ++i) {
      CHECK(r.couplings[i].rows() == spec.m);
      CHECK(r.couplings[i].cols() == spec.samples[i].order());
    }
  }
}

TEST_CASE("barycenter spectrum ignores relabelling of a sample") {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = uniform_int(rng, 5, 9);
    Graph g = random_graph(n, rng);
    BarycenterSpec a;
    a.samples = {shortest_path_cost(g), random_sp_cost(n, rng)};
    a.m = n;
    a.outer_iters = 20;
    BarycenterSpec b = a;
    b.samples[0] = shortest_path_cost(permute_graph(g, random_permutation(n, rng)));
    Vector la = eigenvalues_desc(hat(solve_barycenter(a).c_star));
    Vector lb = eigenvalues_desc(hat(solve_barycenter(b).c_star));
    CHECK((la - lb).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("spectral reconstruction") {
  std::mt19937_64 rng(75);
  const int n = 7;
  const CostMatrix d = random_sp_cost(n, rng);
  const CostMatrix e = random_sp_cost(n, rng);
  Matrix own = spectral_reconstruct(d.matrix(), {d}, {});
  CHECK((own - hat(d.matrix())).cwiseAbs().maxCoeff() < 1e-10);

  Matrix c = random_cost_matrix(n, rng);
  Matrix only_first = spectral_reconstruct(c, {d, e}, {1.0, 0.0});
  Matrix first = spectral_reconstruct(c, {d}, {});
  CHECK((only_first - first).cwiseAbs().maxCoeff() < 1e-12);

  Matrix mixed = spectral_reconstruct(c, {d, e}, {0.3, 0.7});
  CHECK((mixed - mixed.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // smaller and larger samples are padded or truncated to the barycenter order
  Matrix other = spectral_reconstruct(c, {random_sp_cost(4, rng), random_sp_cost(10, rng)}, {});
  CHECK(other.rows() == n - 1);
  CHECK(other.allFinite());

  CHECK_THROWS_AS(spectral_reconstruct(c, {d, e}, {0.5, 0.6}), InvalidArgument);
}

TEST_CASE("lift to a zero-diagonal matrix") {
  CHECK(lift_to_full(Matrix::Zero(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  std::mt19937_64 rng(76);
  for (int trial = 0; trial < 30; ++trial) {
    const Index k = uniform_int(rng, 1, 15);
    Matrix x = random_symmetric(k, rng);
    Matrix l = lift_to_full(x);
    CHECK(l.diagonal().cwiseAbs().maxCoeff() < 1e-15);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((hat(l) - x).cwiseAbs().maxCoeff() < 1e-9);
    // and any symmetric zero-diagonal matrix is recovered from its reduced part
    Matrix d = random_cost_matrix(k + 1, rng);
    CHECK((lift_to_full(hat(d)) - d).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("thresholding recovers graphs from their distances") {
  for (Graph g : {cycle_graph(6), path_graph(4), path_graph(7)}) {
    ThresholdResult t = threshold_adjacency(shortest_path_cost(g).matrix());
    CHECK(t.graph.edges == g.edges);
    CHECK(t.error == doctest::Approx(0.0));
  }
  Matrix flat = Matrix::Constant(5, 5, 2.5);
  flat.diagonal().setZero();
  ThresholdResult t = threshold_adjacency(flat);
  CHECK(t.graph.edges.size() == 10);
}

TEST_CASE("noisy cycles average to a cycle-like graph") {
  std::mt19937_64 rng(77);
  const int n = 20;
  BarycenterSpec spec;
  for (int i = 0; i < 5; ++i) spec.samples.push_back(noisy_cycle(n, 0.25, rng));
  spec.m = n;
  spec.seed = 5;
  BarycenterResult r = solve_barycenter(spec);
  ThresholdResult t = threshold_adjacency(reconstruct(r, spec.samples));
  CHECK(is_connected(t.graph));
  const double mean_degree = 2.0 * static_cast<double>(t.graph.edges.size()) / n;
  CHECK(mean_degree >= 1.8);
  CHECK(mean_degree <= 2.4);
}

TEST_CASE("planar coordinates from distances") {
  Matrix tri(3, 3);
  tri << 0, 3, 4, 3, 0, 5, 4, 5, 0;
  CoordinateResult r = recover_coordinates_2d(tri, 1);
  CHECK(r.stress < 1e-8);
  CHECK(stress_2d(r.points, tri) == doctest::Approx(r.stress).epsilon(1e-9));
  for (Index i = 0; i < 3; ++i)
    for (Index j = i + 1; j < 3; ++j)
      CHECK((r.points.row(i) - r.points.row(j)).norm() == doctest::Approx(tri(i, j)).epsilon(1e-6));

  CoordinateResult c4 = recover_coordinates_2d(shortest_path_cost(cycle_graph(4)).matrix(), 2);
  CHECK(c4.stress > 1e-6);
  CHECK(std::isfinite(c4.stress));

  std::mt19937_64 rng(78);
  Matrix pts(6, 2);
  for (Index i = 0; i < pts.size(); ++i) pts.data()[i] = uniform_real(rng, -2, 2);
  const Matrix dist = euclidean_cost(pts).matrix();
  auto a = sorted_pairwise(recover_coordinates_2d(dist, 3, 8).points);
  auto b = sorted_pairwise(recover_coordinates_2d(dist, 4, 8).points);
  auto truth = sorted_pairwise(pts);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-5));
    CHECK(a[i] == doctest::Approx(truth[i]).epsilon(1e-5));
  }
}

TEST_CASE("barycenter input validation") {
  CHECK_THROWS_AS(parse_barycenter_variant("median"), InvalidArgument);
  CHECK(parse_barycenter_variant("ub") == BarycenterVariant::ub);
  BarycenterSpec spec;
  CHECK_THROWS_AS(solve_barycenter(spec), InvalidArgument);
  spec.samples = {CostMatrix(c3_sp())};
  spec.m = 1;
  CHECK_THROWS_AS(solve_barycenter(spec), InvalidArgument);
  spec.m = 3;
  spec.weights = {0.5};
  CHECK_THROWS_AS(solve_barycenter(spec), InvalidArgument);
}
