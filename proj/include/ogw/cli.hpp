#pragma once

// Command implementations behind the `ogw` executable. Each command writes
// its primary output to `out`, diagnostics to `err`, and returns an exit
// code: 0 success, 1 usage, 2 input parse, 3 solver failure.

#include "ogw/barycenter.hpp"
#include "ogw/error.hpp"
#include "ogw/graph_io.hpp"
#include "ogw/stiefel_ascent.hpp"
#include "ogw/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ogw::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kSolver = 3 };

class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct RunConfig {
  std::string method = "ogw-lb";
  std::string cost = "sp";  // sp | adj
  double alpha = 0.5;
  std::optional<double> gamma;  // kernel bandwidth; raw distances when absent
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "csv";  // csv | json
  PqnOptions pqn;
};

const std::vector<std::string>& known_methods();

/// Throws UsageError on unknown method, cost or format, jobs < 1, gamma <= 0.
void validate(const RunConfig& cfg);

/// Worker count from OGW_JOBS, or `fallback` when unset. Throws UsageError on
/// a malformed value.
int jobs_from_env(int fallback);

CostMatrix graph_cost(const Graph& g, const std::string& cost);

/// Evaluates cfg.method between two graphs. Fused methods use the graphs'
/// features, falling back to node degrees when either graph has none.
DiscrepancyResult evaluate(const RunConfig& cfg, const Graph& a, const Graph& b);

/// One JSON object per line: method, value, seconds, iters, bound_kind.
std::string dist_record(const DiscrepancyResult& r);

struct DistInputs {
  std::string graph_a;
  std::string graph_b;
  std::string features_a;  // optional CSV
  std::string features_b;
};

int cmd_dist(const RunConfig& cfg, const DistInputs& in, std::ostream& out, std::ostream& err);

/// Pairwise discrepancies (or kernel values exp(-gamma d)) for all graphs of
/// a dataset. Deterministic regardless of cfg.jobs.
Matrix gram_matrix(const RunConfig& cfg, const std::vector<Graph>& graphs);

/// Writes the matrix to cfg.output (stdout when empty) and the graph labels
/// to "<output>.labels.csv" when an output path is given.
int cmd_gram(const RunConfig& cfg, const std::string& dataset_dir, std::ostream& out,
             std::ostream& err);

struct BarycenterCliOptions {
  std::vector<std::string> inputs;
  bool inputs_are_points = false;
  Index m = 0;  // 0: order of the first input
  std::string variant = "lb";
  int iters = 50;
  std::string adjacency_out;
  std::string points_out;
};

int cmd_barycenter(const RunConfig& cfg, const BarycenterCliOptions& opts, std::ostream& out,
                   std::ostream& err);

struct TightnessConfig {
  int n = 20;
  std::vector<int> deltas{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int trials = 50;
  std::uint64_t seed = 0;
  bool control_row = true;  // prepend delta = 0
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct TightnessRow {
  int delta = 0;
  int trials = 0;
  Summary ogw_lb, ogw_ub, gw_fw, gw_flb, gw_tlb;
  Summary ogw_gap;  // ogw_ub - ogw_lb
  Summary gw_gap;   // gw_fw - gw_tlb
};

std::vector<TightnessRow> bench_tightness(const TightnessConfig& cfg);
void write_tightness_csv(const std::vector<TightnessRow>& rows, std::ostream& out);
int cmd_bench_tightness(const TightnessConfig& cfg, const std::string& output, std::ostream& out,
                        std::ostream& err);

struct RuntimeConfig {
  std::vector<int> sizes{40, 80, 160};
  int trials = 20;
  int repeats = 3;  // calls per pair; the fastest one counts
  std::uint64_t seed = 0;
  bool with_tlb = true;
};

struct RuntimeRow {
  int n = 0;
  int trials = 0;
  double ogw_lb_seconds = 0.0;
  double gw_tlb_seconds = 0.0;  // NaN when not measured
};

std::vector<RuntimeRow> bench_runtime(const RuntimeConfig& cfg);
void write_runtime_csv(const std::vector<RuntimeRow>& rows, std::ostream& out);
int cmd_bench_runtime(const RuntimeConfig& cfg, const std::string& output, std::ostream& out,
                      std::ostream& err);

/// Entry point of the executable (argument parsing included).
int run(int argc, char** argv);

}  // namespace ogw::cli
