#include "ogw/cli.hpp"

#include "ogw/generators.hpp"
#include "ogw/gw_baseline.hpp"
#include "ogw/ofgw.hpp"
#include "ogw/ogw.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace ogw::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

// Runs `body`, mapping library exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }
}

struct WriteTarget {
  std::ofstream file;
  std::ostream* stream;

  WriteTarget(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw Error("cannot write " + path);
      stream = &file;
    }
  }
};

Matrix fused_cost(const Matrix& fa, const Matrix& fb) {
  if (fa.cols() != fb.cols())
    throw DimensionMismatch("feature dimensions differ: " + std::to_string(fa.cols()) + " vs " +
                            std::to_string(fb.cols()));
  Matrix m(fa.rows(), fb.rows());
  for (Index i = 0; i < fa.rows(); ++i)
    for (Index k = 0; k < fb.rows(); ++k) m(i, k) = (fa.row(i) - fb.row(k)).squaredNorm();
  return m;
}

DiscrepancyResult evaluate_costs(const RunConfig& cfg, const CostMatrix& a, const CostMatrix& b,
                                 const Matrix& fa, const Matrix& fb) {
  const std::string& m = cfg.method;
  if (m == "ogw-lb") return ogw_lb(a, b);
  if (m == "ogw-ub") return ogw_ub(a, b, cfg.pqn);
  if (m == "ogw-o") return ogw_o(a, b);
  if (m == "ofgw-lb") return ofgw_lb(a, b, FeatureDistance(fused_cost(fa, fb)), cfg.alpha);
  if (m == "ofgw-ub")
    return ofgw_ub(a, b, FeatureDistance(fused_cost(fa, fb)), cfg.alpha, cfg.pqn);
  if (m == "gw-fw") return gw_fw(a, b).result;
  if (m == "gw-flb") return gw_flb(a, b);
  if (m == "gw-tlb") return gw_tlb(a, b);
  if (m == "perm-oracle") return brute_force_perm(a, b).result;
  throw UsageError("unknown method '" + m + "'");
}

bool is_fused(const std::string& method) { return method.rfind("ofgw", 0) == 0; }

}  // namespace

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods{"ogw-lb", "ogw-ub", "ogw-o",  "ofgw-lb",    "ofgw-ub",
                                                "gw-fw",  "gw-flb", "gw-tlb", "perm-oracle"};
  return methods;
}

void validate(const RunConfig& cfg) {
  const auto& ms = known_methods();
  if (std::find(ms.begin(), ms.end(), cfg.method) == ms.end())
    throw UsageError("unknown method '" + cfg.method + "'");
  if (cfg.cost != "sp" && cfg.cost != "adj")
    throw UsageError("cost must be 'sp' or 'adj', got '" + cfg.cost + "'");
  if (cfg.format != "csv" && cfg.format != "json")
    throw UsageError("format must be 'csv' or 'json', got '" + cfg.format + "'");
  if (cfg.jobs < 1) throw UsageError("jobs must be >= 1");
  if (cfg.gamma && !(*cfg.gamma > 0.0)) throw UsageError("gamma must be > 0");
  if (is_fused(cfg.method) && !(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw UsageError("alpha must lie in (0, 1]");
}

int jobs_from_env(int fallback) {
  const char* raw = std::getenv("OGW_JOBS");
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) throw UsageError("OGW_JOBS must be a positive integer");
  return static_cast<int>(v);
}

CostMatrix graph_cost(const Graph& g, const std::string& cost) {
  if (cost == "sp") return shortest_path_cost(g);
  if (cost == "adj") return adjacency_complement_cost(g);
  throw UsageError("cost must be 'sp' or 'adj', got '" + cost + "'");
}

DiscrepancyResult evaluate(const RunConfig& cfg, const Graph& a, const Graph& b) {
  validate(cfg);
  Matrix fa, fb;
  if (is_fused(cfg.method)) {
    const bool both = a.features && b.features;
    fa = both ? *a.features : *degree_features(a).features;
    fb = both ? *b.features : *degree_features(b).features;
  }
  return evaluate_costs(cfg, graph_cost(a, cfg.cost), graph_cost(b, cfg.cost), fa, fb);
}

std::string dist_record(const DiscrepancyResult& r) {
  std::ostringstream os;
  os << "{\"method\":\"" << json_escape(r.method) << "\",\"value\":" << fmt(r.value)
     << ",\"seconds\":" << fmt(r.seconds) << ",\"iters\":" << r.iterations
     << ",\"bound_kind\":\"" << to_string(r.bound) << "\"}";
  return os.str();
}

int cmd_dist(const RunConfig& cfg, const DistInputs& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    Graph a = read_edge_list(in.graph_a);
    Graph b = read_edge_list(in.graph_b);
    if (!in.features_a.empty()) a.features = read_feature_csv(in.features_a);
    if (!in.features_b.empty()) b.features = read_feature_csv(in.features_b);
    for (const Graph* g : {&a, &b})
      if (g->features && g->features->rows() != g->n)
        throw ParseError("feature rows do not match the graph order");
    DiscrepancyResult r = evaluate(cfg, a, b);
    out << dist_record(r) << "\n";
    return static_cast<int>(kOk);
  });
}

Matrix gram_matrix(const RunConfig& cfg, const std::vector<Graph>& graphs) {
  validate(cfg);
  const Index n = static_cast<Index>(graphs.size());
  std::vector<CostMatrix> costs;
  std::vector<Matrix> feats(graphs.size());
  costs.reserve(graphs.size());
  const bool fused = is_fused(cfg.method);
  bool all_featured = true;
  for (const auto& g : graphs) all_featured = all_featured && g.features.has_value();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    costs.push_back(graph_cost(graphs[i], cfg.cost));
    if (fused) feats[i] = all_featured ? *graphs[i].features : *degree_features(graphs[i]).features;
  }

  std::vector<std::pair<Index, Index>> tasks;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) tasks.emplace_back(i, j);

  Matrix out(n, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      const auto [i, j] = tasks[k];
      try {
        const double d = evaluate_costs(cfg, costs[static_cast<std::size_t>(i)],
                                        costs[static_cast<std::size_t>(j)],
                                        feats[static_cast<std::size_t>(i)],
                                        feats[static_cast<std::size_t>(j)])
                             .value;
        const double v = cfg.gamma ? std::exp(-*cfg.gamma * d) : d;
        out(i, j) = v;
        out(j, i) = v;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), std::max<std::size_t>(1, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

int cmd_gram(const RunConfig& cfg, const std::string& dataset_dir, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    std::vector<Graph> graphs = parse_tu_dataset(dataset_dir);
    Matrix k = gram_matrix(cfg, graphs);
    const Index n = k.rows();
    WriteTarget target(cfg.output, out);
    std::ostream& os = *target.stream;
    if (cfg.format == "csv") {
      os << "id";
      for (Index j = 0; j < n; ++j) os << "," << j;
      os << "\n";
      for (Index i = 0; i < n; ++i) {
        os << i;
        for (Index j = 0; j < n; ++j) os << "," << fmt(k(i, j));
        os << "\n";
      }
    } else {
      os << "{\"method\":\"" << cfg.method << "\",\"kind\":\"" << (cfg.gamma ? "kernel" : "distance")
         << "\",\"ids\":[";
      for (Index j = 0; j < n; ++j) os << (j ? "," : "") << j;
      os << "],\"matrix\":[";
      for (Index i = 0; i < n; ++i) {
        os << (i ? "," : "") << "[";
        for (Index j = 0; j < n; ++j) os << (j ? "," : "") << fmt(k(i, j));
        os << "]";
      }
      os << "]}\n";
    }
    if (!os) throw Error("failed writing the gram matrix");
    if (!cfg.output.empty()) {
      std::ofstream labels(cfg.output + ".labels.csv", std::ios::binary);
      if (!labels) throw Error("cannot write " + cfg.output + ".labels.csv");
      labels << "id,label\n";
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        labels << i << ",";
        if (graphs[i].label) labels << *graphs[i].label;
        labels << "\n";
      }
    }
    err << "wrote " << n << "x" << n << (cfg.gamma ? " kernel" : " distance") << " matrix\n";
    return static_cast<int>(kOk);
  });
}

namespace {

void write_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << fmt(m(i, j));
    os << "\n";
  }
}

}  // namespace

int cmd_barycenter(const RunConfig& cfg, const BarycenterCliOptions& opts, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    if (opts.inputs.empty()) throw UsageError("barycenter needs at least one input");
    if (opts.iters < 0) throw UsageError("iters must be >= 0");
    if (opts.variant != "lb" && opts.variant != "ub")
      throw UsageError("variant must be 'lb' or 'ub', got '" + opts.variant + "'");
    if (cfg.cost != "sp" && cfg.cost != "adj") throw UsageError("cost must be 'sp' or 'adj'");
    BarycenterSpec spec;
    for (const auto& path : opts.inputs) {
      if (opts.inputs_are_points)
        spec.samples.push_back(euclidean_cost(read_feature_csv(path)));
      else
        spec.samples.push_back(graph_cost(read_edge_list(path), cfg.cost));
    }
    spec.m = opts.m > 0 ? opts.m : spec.samples.front().order();
    spec.variant = parse_barycenter_variant(opts.variant);
    spec.outer_iters = opts.iters;
    spec.seed = cfg.seed;
    spec.pqn = cfg.pqn;
    BarycenterResult res = solve_barycenter(spec);
    Matrix recon = lift_to_full(spectral_reconstruct(res.c_star, spec.samples, spec.weights));

    if (!cfg.output.empty()) write_matrix_csv(recon, cfg.output);
    if (!opts.adjacency_out.empty()) {
      ThresholdResult th = threshold_adjacency(recon);
      std::ofstream os(opts.adjacency_out, std::ios::binary);
      if (!os) throw Error("cannot write " + opts.adjacency_out);
      os << "# threshold " << fmt(th.threshold) << "\n";
      os << "n " << th.graph.n << "\n";
      for (auto [u, v] : th.graph.edges) os << u << " " << v << "\n";
    }
    if (!opts.points_out.empty()) {
      CoordinateResult pts = recover_coordinates_2d(recon, cfg.seed);
      write_matrix_csv(pts.points, opts.points_out);
    }
    out << "{\"variant\":\"" << opts.variant << "\",\"m\":" << spec.m
        << ",\"iterations\":" << res.iterations
        << ",\"converged\":" << (res.converged ? "true" : "false") << ",\"objective_trace\":[";
    for (std::size_t i = 0; i < res.objective_trace.size(); ++i)
      out << (i ? "," : "") << fmt(res.objective_trace[i]);
    out << "]}\n";
    return static_cast<int>(kOk);
  });
}

namespace {

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) {
    s.mean = s.stddev = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double total = 0.0;
  for (double x : xs) total += x;
  s.mean = total / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - s.mean) * (x - s.mean);
  s.stddev = xs.size() > 1 ? std::sqrt(sq / static_cast<double>(xs.size() - 1)) : 0.0;
  return s;
}

}  // namespace

std::vector<TightnessRow> bench_tightness(const TightnessConfig& cfg) {
  if (cfg.n < 2) throw UsageError("bench-tightness needs n >= 2");
  if (cfg.trials < 1) throw UsageError("trials must be >= 1");
  std::mt19937_64 rng(cfg.seed);
  const Graph base = path_graph(cfg.n);
  const CostMatrix c = shortest_path_cost(base);
  std::vector<int> deltas;
  if (cfg.control_row) deltas.push_back(0);
  deltas.insert(deltas.end(), cfg.deltas.begin(), cfg.deltas.end());

  std::vector<TightnessRow> rows;
  for (int delta : deltas) {
    std::vector<double> lb, ub, fw, flb, tlb, gap_o, gap_g;
    for (int t = 0; t < cfg.trials; ++t) {
      const CostMatrix d = shortest_path_cost(perturb_edges(base, delta, rng));
      lb.push_back(ogw_lb(c, d).value);
      ub.push_back(ogw_ub(c, d).value);
      fw.push_back(gw_fw(c, d).result.value);
      flb.push_back(gw_flb(c, d).value);
      tlb.push_back(gw_tlb(c, d).value);
      gap_o.push_back(ub.back() - lb.back());
      gap_g.push_back(fw.back() - tlb.back());
    }
    TightnessRow row;
    row.delta = delta;
    row.trials = cfg.trials;
    row.ogw_lb = summarize(lb);
    row.ogw_ub = summarize(ub);
    row.gw_fw = summarize(fw);
    row.gw_flb = summarize(flb);
    row.gw_tlb = summarize(tlb);
    row.ogw_gap = summarize(gap_o);
    row.gw_gap = summarize(gap_g);
    rows.push_back(row);
  }
  return rows;
}

void write_tightness_csv(const std::vector<TightnessRow>& rows, std::ostream& out) {
  out << "delta,trials,ogw_lb_mean,ogw_lb_std,ogw_ub_mean,ogw_ub_std,gw_fw_mean,gw_fw_std,"
         "gw_flb_mean,gw_flb_std,gw_tlb_mean,gw_tlb_std,ogw_gap_mean,ogw_gap_std,gw_gap_mean,"
         "gw_gap_std\n";
  for (const auto& r : rows) {
    out << r.delta << "," << r.trials;
    for (const Summary* s :
         {&r.ogw_lb, &r.ogw_ub, &r.gw_fw, &r.gw_flb, &r.gw_tlb, &r.ogw_gap, &r.gw_gap})
      out << "," << fmt(s->mean) << "," << fmt(s->stddev);
    out << "\n";
  }
}

int cmd_bench_tightness(const TightnessConfig& cfg, const std::string& output, std::ostream& out,
                        std::ostream& err) {
  return guarded(err, [&] {
    auto rows = bench_tightness(cfg);
    WriteTarget target(output, out);
    write_tightness_csv(rows, *target.stream);
    return static_cast<int>(kOk);
  });
}

std::vector<RuntimeRow> bench_runtime(const RuntimeConfig& cfg) {
  if (cfg.trials < 1) throw UsageError("trials must be >= 1");
  if (cfg.repeats < 1) throw UsageError("repeats must be >= 1");
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i)
    if (cfg.sizes[i] <= cfg.sizes[i - 1]) throw UsageError("sizes must be ascending");
  for (int n : cfg.sizes)
    if (n < 2) throw UsageError("sizes must be >= 2");
  using Clock = std::chrono::steady_clock;
  // Each pair is timed as the fastest of `repeats` calls, which filters out
  // scheduler noise; the row reports the mean of those over the pairs.
  auto best_of = [&](auto&& call) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.repeats; ++k) {
      auto s0 = Clock::now();
      volatile double sink = call();
      auto s1 = Clock::now();
      (void)sink;
      best = std::min(best, std::chrono::duration<double>(s1 - s0).count());
    }
    return best;
  };
  std::mt19937_64 rng(cfg.seed);
  std::vector<RuntimeRow> rows;
  for (int n : cfg.sizes) {
    double t_lb = 0.0, t_tlb = 0.0;
    {
      // untimed warm-up so first-touch and library start-up costs stay out of the means
      const CostMatrix a = shortest_path_cost(erdos_renyi_connected(n, rng));
      volatile double sink = ogw_lb(a, a).value;
      if (cfg.with_tlb) sink = gw_tlb(a, a).value;
      (void)sink;
    }
    for (int t = 0; t < cfg.trials; ++t) {
      const CostMatrix a = shortest_path_cost(erdos_renyi_connected(n, rng));
      const CostMatrix b = shortest_path_cost(erdos_renyi_connected(n, rng));
      t_lb += best_of([&] { return ogw_lb(a, b).value; });
      if (cfg.with_tlb) t_tlb += best_of([&] { return gw_tlb(a, b).value; });
    }
    RuntimeRow row;
    row.n = n;
    row.trials = cfg.trials;
    row.ogw_lb_seconds = t_lb / cfg.trials;
    row.gw_tlb_seconds =
        cfg.with_tlb ? t_tlb / cfg.trials : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

void write_runtime_csv(const std::vector<RuntimeRow>& rows, std::ostream& out) {
  out << "n,trials,ogw_lb_seconds,gw_tlb_seconds\n";
  for (const auto& r : rows)
    out << r.n << "," << r.trials << "," << fmt(r.ogw_lb_seconds) << ","
        << (std::isnan(r.gw_tlb_seconds) ? std::string() : fmt(r.gw_tlb_seconds)) << "\n";
}

int cmd_bench_runtime(const RuntimeConfig& cfg, const std::string& output, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    auto rows = bench_runtime(cfg);
    WriteTarget target(output, out);
    write_runtime_csv(rows, *target.stream);
    return static_cast<int>(kOk);
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Orthogonal Gromov-Wasserstein discrepancies between graphs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string init = "closed-form";
  int jobs = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--method", cfg.method, "Discrepancy method")->capture_default_str();
    sub->add_option("--cost", cfg.cost, "Intra-graph cost: sp | adj")->capture_default_str();
    sub->add_option("--alpha", cfg.alpha, "Structure/feature trade-off for ofgw")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--max-iters", cfg.pqn.max_iters, "Upper-bound solver iteration cap")
        ->capture_default_str();
    sub->add_option("--rel-tol", cfg.pqn.rel_tol, "Upper-bound solver tolerance")->capture_default_str();
    sub->add_option("--init", init, "Upper-bound start: closed-form | identity | random")
        ->capture_default_str();
  };

  DistInputs dist_in;
  auto* dist = app.add_subcommand("dist", "Discrepancy between two edge-list graphs");
  add_common(dist);
  dist->add_option("graph_a", dist_in.graph_a)->required();
  dist->add_option("graph_b", dist_in.graph_b)->required();
  dist->add_option("--features-a", dist_in.features_a, "Node features of the first graph (CSV)");
  dist->add_option("--features-b", dist_in.features_b, "Node features of the second graph (CSV)");

  std::string dataset;
  double gamma = 0.0;
  auto* gram = app.add_subcommand("gram", "Pairwise matrix over a TU dataset directory");
  add_common(gram);
  gram->add_option("dataset", dataset)->required();
  gram->add_option("--gamma", gamma, "Kernel bandwidth; omit for raw distances");
  gram->add_option("--jobs", jobs, "Worker threads (default: OGW_JOBS or 1)");
  gram->add_option("--output,-o", cfg.output, "Output file (default stdout)");
  gram->add_option("--format", cfg.format, "csv | json")->capture_default_str();

  BarycenterCliOptions bary_opts;
  auto* bary = app.add_subcommand("barycenter", "Barycenter of several graphs or point clouds");
  add_common(bary);
  bary->add_option("inputs", bary_opts.inputs)->required();
  bary->add_flag("--points", bary_opts.inputs_are_points, "Inputs are point CSVs");
  bary->add_option("--m", bary_opts.m, "Barycenter order (default: first input's order)");
  bary->add_option("--variant", bary_opts.variant, "lb | ub")->capture_default_str();
  bary->add_option("--iters", bary_opts.iters, "Outer iterations")->capture_default_str();
  bary->add_option("--output,-o", cfg.output, "CSV for the reconstructed cost matrix");
  bary->add_option("--adjacency-out", bary_opts.adjacency_out, "Edge list of the thresholded graph");
  bary->add_option("--points-out", bary_opts.points_out, "CSV of recovered 2-D coordinates");

  TightnessConfig tight;
  std::string tight_out;
  auto* bt = app.add_subcommand("bench-tightness", "Bound gaps on perturbed path graphs");
  bt->add_option("--n", tight.n)->capture_default_str();
  bt->add_option("--deltas", tight.deltas)->capture_default_str();
  bt->add_option("--trials", tight.trials)->capture_default_str();
  bt->add_option("--seed", tight.seed)->capture_default_str();
  bt->add_option("--output,-o", tight_out);

  RuntimeConfig rt;
  std::string rt_out;
  bool no_tlb = false;
  auto* br = app.add_subcommand("bench-runtime", "Lower-bound wall time on Erdos-Renyi pairs");
  br->add_option("--sizes", rt.sizes)->capture_default_str();
  br->add_option("--trials", rt.trials)->capture_default_str();
  br->add_option("--repeats", rt.repeats, "Timed calls per pair (fastest counts)")->capture_default_str();
  br->add_option("--seed", rt.seed)->capture_default_str();
  br->add_flag("--no-tlb", no_tlb, "Skip the TLB timing");
  br->add_option("--output,-o", rt_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (init == "closed-form")
    cfg.pqn.init = PqnInit::closed_form;
  else if (init == "identity")
    cfg.pqn.init = PqnInit::identity;
  else if (init == "random")
    cfg.pqn.init = PqnInit::random;
  else {
    std::cerr << "usage error: --init must be closed-form, identity or random\n";
    return kUsage;
  }
  cfg.pqn.seed = cfg.seed;

  if (*dist) return cmd_dist(cfg, dist_in, std::cout, std::cerr);
  if (*gram) {
    if (gram->count("--gamma")) cfg.gamma = gamma;
    try {
      cfg.jobs = gram->count("--jobs") ? jobs : jobs_from_env(1);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kUsage;
    }
    return cmd_gram(cfg, dataset, std::cout, std::cerr);
  }
  if (*bary) return cmd_barycenter(cfg, bary_opts, std::cout, std::cerr);
  if (*bt) return cmd_bench_tightness(tight, tight_out, std::cout, std::cerr);
  if (*br) {
    rt.with_tlb = !no_tlb;
    return cmd_bench_runtime(rt, rt_out, std::cout, std::cerr);
  }
  return kUsage;
}

}  // namespace ogw::cli
