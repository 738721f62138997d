#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

namespace ogw {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class BoundKind { lower, upper, oracle };

inline const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower:
      return "lower";
    case BoundKind::upper:
      return "upper";
    case BoundKind::oracle:
      return "exact-oracle";
  }
  return "unknown";
}

/// Outcome of one discrepancy evaluation between two graphs.
struct DiscrepancyResult {
  double value = 0.0;
  std::string method;
  BoundKind bound = BoundKind::lower;
  /// Node alignment in the caller's argument order (rows index the first graph).
  std::optional<Matrix> coupling;
  int iterations = 0;
  bool converged = true;
  double seconds = 0.0;
};

}  // namespace ogw
