#pragma once

// Shared helpers for the test binaries: seeded random inputs and dense,
// deliberately naive reference computations used as independent oracles.

#include "ogw/generators.hpp"
#include "ogw/graph_io.hpp"
#include "ogw/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using ogw::Index;
using ogw::Matrix;
using ogw::Vector;

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_matrix(Index r, Index c, std::mt19937_64& rng) {
  Matrix a(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) a(i, j) = uniform_real(rng, -1.0, 1.0);
  return a;
}

inline Matrix random_symmetric(Index n, std::mt19937_64& rng) {
  Matrix a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = uniform_real(rng, -1.0, 1.0);
  return 0.5 * (a + a.transpose());
}

// Symmetric, nonnegative, zero diagonal: a generic "distance-like" cost.
inline Matrix random_cost_matrix(Index n, std::mt19937_64& rng) {
  Matrix a(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = uniform_real(rng, 0.0, 3.0);
  Matrix s = 0.5 * (a + a.transpose());
  s.diagonal().setZero();
  return s;
}

inline ogw::Graph random_graph(int n, std::mt19937_64& rng) {
  return ogw::random_connected_graph(n, uniform_real(rng, 0.0, 0.5), rng);
}

inline ogw::CostMatrix random_sp_cost(int n, std::mt19937_64& rng) {
  return ogw::shortest_path_cost(random_graph(n, rng));
}

inline Matrix random_orthogonal(Index n, std::mt19937_64& rng) {
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = std::normal_distribution<double>(0.0, 1.0)(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline Matrix permutation_matrix(const std::vector<int>& perm) {
  const Index n = static_cast<Index>(perm.size());
  Matrix p = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return p;
}

// The centering basis written out entry by entry.
inline Matrix dense_basis(Index n) {
  const double r = std::sqrt(static_cast<double>(n));
  const double x = -1.0 / (static_cast<double>(n) + r);
  const double y = -1.0 / r;
  Matrix v(n, n - 1);
  for (Index j = 0; j < n - 1; ++j) {
    v(0, j) = y;
    for (Index i = 1; i < n; ++i) v(i, j) = (i - 1 == j ? 1.0 : 0.0) + x;
  }
  return v;
}

inline Vector eigenvalues_desc(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

inline double nuclear(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

// Lower bound straight from its definition with dense products, a full SVD of
// the cross term and zero padding of the smaller reduced matrix.
inline double dense_lower_bound(const Matrix& c0, const Matrix& d0) {
  const bool swap = c0.rows() < d0.rows();
  const Matrix& c = swap ? d0 : c0;
  const Matrix& d = swap ? c0 : d0;
  const Index m = c.rows();
  const Index n = d.rows();
  const double mn = static_cast<double>(m * n);
  const Matrix u = dense_basis(m);
  const Matrix v = dense_basis(n);
  Matrix chat = u.transpose() * c * u;
  Matrix dpad = Matrix::Zero(m - 1, m - 1);
  dpad.topLeftCorner(n - 1, n - 1) = v.transpose() * d * v;
  Matrix e = Matrix::Zero(m - 1, m - 1);
  e.leftCols(n - 1) = (2.0 / std::sqrt(mn)) * (u.transpose() * c * Vector::Ones(m)) *
                      (v.transpose() * d * Vector::Ones(n)).transpose();
  const double quad = eigenvalues_desc(chat).dot(eigenvalues_desc(dpad));
  const double cst = c.sum() * d.sum() / mn;
  return c.squaredNorm() / static_cast<double>(m * m) + d.squaredNorm() / static_cast<double>(n * n) -
         (2.0 / mn) * (quad + nuclear(e) + cst);
}

// min over permutations of (1/n^2) ||P^T C P - D||_F^2, by enumeration.
inline double min_permutation_objective(const Matrix& c, const Matrix& d) {
  const Index n = c.rows();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        const double r = c(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]) - d(i, j);
        s += r * r;
      }
    best = std::min(best, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best / static_cast<double>(n * n);
}

inline Matrix p3_sp() {
  Matrix c(3, 3);
  c << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  return c;
}

inline Matrix c3_sp() {
  Matrix c(3, 3);
  c << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  return c;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ogw-test-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

inline std::string edge_list_text(const ogw::Graph& g) {
  std::string s = "n " + std::to_string(g.n) + "\n";
  for (auto [a, b] : g.edges) s += std::to_string(a) + " " + std::to_string(b) + "\n";
  return s;
}

}  // namespace testsupport
