#include "ogw/graph_io.hpp"

#include "ogw/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace ogw {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits on commas and/or whitespace, skipping empty fields.
std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ',' || std::isspace(static_cast<unsigned char>(line[i])))) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line);
  return v;
}

double parse_real(std::string_view tok, std::size_t line) {
  // from_chars for double is unavailable on some libstdc++ builds
  std::string s(tok);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw ParseError("expected a number, got '" + s + "'", line);
  return v;
}

std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split_lines(text)) {
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw InvalidArgument("graph order must be nonnegative");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") has an endpoint outside [0, " + std::to_string(n) + ")");
    if (u == v) throw InvalidArgument("self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

Matrix Graph::adjacency() const {
  Matrix a = Matrix::Zero(n, n);
  for (auto [u, v] : edges) a(u, v) = a(v, u) = 1.0;
  return a;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::neighbors() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

CostMatrix::CostMatrix(Matrix entries, CostMode mode) : entries_(std::move(entries)), mode_(mode) {
  if (entries_.rows() != entries_.cols())
    throw DimensionMismatch("cost matrix must be square");
  if (!entries_.allFinite()) throw InvalidArgument("cost matrix has non-finite entries");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("cost matrix is not symmetric");
  if (mode_ == CostMode::distance) {
    if (entries_.diagonal().cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw InvalidArgument("distance-mode cost matrix must have a zero diagonal");
    if (entries_.minCoeff() < 0.0)
      throw InvalidArgument("distance-mode cost matrix must be nonnegative");
  }
}

FeatureDistance::FeatureDistance(Matrix entries) : entries_(std::move(entries)) {
  if (!entries_.allFinite()) throw InvalidArgument("feature distance has non-finite entries");
  if (entries_.size() > 0 && entries_.minCoeff() < 0.0)
    throw InvalidArgument("feature distance entries must be nonnegative");
}

Graph parse_edge_list(std::string_view text) {
  std::vector<std::pair<int, int>> edges;
  std::optional<long long> header_n;
  long long max_index = -1;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto hash = raw.find('#');
    auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto tok = fields(line);
    if (tok.size() == 2 && tok[0] == "n") {
      if (header_n) throw ParseError("duplicate 'n' header", lineno);
      header_n = parse_int(tok[1], lineno);
      if (*header_n < 0) throw ParseError("negative node count", lineno);
      continue;
    }
    if (tok.size() != 2) throw ParseError("expected 'u v'", lineno);
    long long u = parse_int(tok[0], lineno);
    long long v = parse_int(tok[1], lineno);
    if (u < 0 || v < 0) throw ParseError("node indices must be nonnegative", lineno);
    if (u == v) throw ParseError("self-loop at node " + std::to_string(u), lineno);
    if (u > 1'000'000'000 || v > 1'000'000'000) throw ParseError("node index too large", lineno);
    max_index = std::max({max_index, u, v});
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  long long n = max_index + 1;
  if (header_n) {
    if (*header_n < n)
      throw ParseError("header declares n=" + std::to_string(*header_n) + " but index " +
                       std::to_string(max_index) + " appears");
    n = *header_n;
  }
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path) { return parse_edge_list(slurp(path)); }

Matrix parse_feature_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    for (auto tok : fields(line)) row.push_back(parse_real(tok, lineno));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("inconsistent number of columns", lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return out;
}

Matrix read_feature_csv(const std::filesystem::path& path) { return parse_feature_csv(slurp(path)); }

std::vector<Graph> parse_tu_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir.string());
  std::string prefix;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto name = entry.path().filename().string();
    if (name.size() > 6 && name.compare(name.size() - 6, 6, "_A.txt") == 0) {
      if (!prefix.empty()) throw ParseError("multiple *_A.txt files in " + dir.string());
      prefix = name.substr(0, name.size() - 6);
    }
  }
  if (prefix.empty()) throw ParseError("no <DS>_A.txt file in " + dir.string());
  auto file = [&](const char* suffix) { return dir / (prefix + suffix); };

  if (!fs::exists(file("_graph_indicator.txt")))
    throw ParseError("missing " + file("_graph_indicator.txt").string());

  // graph id per node (1-based ids in the file)
  std::vector<long long> indicator;
  {
    std::size_t lineno = 0;
    const std::string text = slurp(file("_graph_indicator.txt"));
    for (auto line : content_lines(text)) {
      ++lineno;
      long long gid = parse_int(line, lineno);
      if (gid < 1) throw ParseError("graph ids are 1-based", lineno);
      if (!indicator.empty() && gid < indicator.back())
        throw ParseError("graph indicator must be nondecreasing", lineno);
      indicator.push_back(gid);
    }
  }
  const auto total_nodes = static_cast<long long>(indicator.size());
  const long long num_graphs = indicator.empty() ? 0 : indicator.back();

  // first global node (0-based) of every graph and its order
  std::vector<long long> offset(static_cast<std::size_t>(num_graphs), -1);
  std::vector<int> order(static_cast<std::size_t>(num_graphs), 0);
  for (long long i = 0; i < total_nodes; ++i) {
    auto g = static_cast<std::size_t>(indicator[static_cast<std::size_t>(i)] - 1);
    if (offset[g] < 0) offset[g] = i;
    ++order[g];
  }
  for (long long g = 0; g < num_graphs; ++g)
    if (order[static_cast<std::size_t>(g)] == 0)
      throw ParseError("graph " + std::to_string(g + 1) + " has no nodes");

  std::vector<std::vector<std::pair<int, int>>> edges(static_cast<std::size_t>(num_graphs));
  {
    std::size_t lineno = 0;
    const std::string text = slurp(file("_A.txt"));
    for (auto line : content_lines(text)) {
      ++lineno;
      auto tok = fields(line);
      if (tok.size() != 2) throw ParseError("expected 'a, b'", lineno);
      long long a = parse_int(tok[0], lineno) - 1;
      long long b = parse_int(tok[1], lineno) - 1;
      if (a < 0 || b < 0 || a >= total_nodes || b >= total_nodes)
        throw ParseError("node index outside the graph indicator range", lineno);
      auto ga = indicator[static_cast<std::size_t>(a)];
      auto gb = indicator[static_cast<std::size_t>(b)];
      if (ga != gb) throw ParseError("edge crosses graph boundary", lineno);
      if (a == b) continue;  // TU files occasionally carry self-loops
      auto g = static_cast<std::size_t>(ga - 1);
      edges[g].emplace_back(static_cast<int>(a - offset[g]), static_cast<int>(b - offset[g]));
    }
  }

  std::optional<Matrix> node_features;
  if (fs::exists(file("_node_attributes.txt"))) {
    node_features = read_feature_csv(file("_node_attributes.txt"));
    if (node_features->rows() != total_nodes)
      throw ParseError("node attribute count does not match graph indicator length");
  } else if (fs::exists(file("_node_labels.txt"))) {
    std::vector<long long> labels;
    std::size_t lineno = 0;
    const std::string text = slurp(file("_node_labels.txt"));
    for (auto line : content_lines(text)) {
      ++lineno;
      labels.push_back(parse_int(fields(line).at(0), lineno));
    }
    if (static_cast<long long>(labels.size()) != total_nodes)
      throw ParseError("node label count does not match graph indicator length");
    std::map<long long, Index> column;
    for (auto l : labels) column.emplace(l, 0);
    Index next = 0;
    for (auto& [l, c] : column) c = next++;
    node_features = Matrix::Zero(total_nodes, next);
    for (long long i = 0; i < total_nodes; ++i)
      (*node_features)(i, column[labels[static_cast<std::size_t>(i)]]) = 1.0;
  }

  std::vector<long long> graph_labels;
  if (fs::exists(file("_graph_labels.txt"))) {
    std::size_t lineno = 0;
    const std::string text = slurp(file("_graph_labels.txt"));
    for (auto line : content_lines(text)) {
      ++lineno;
      graph_labels.push_back(parse_int(line, lineno));
    }
    if (static_cast<long long>(graph_labels.size()) != num_graphs)
      throw ParseError("graph label count does not match number of graphs");
  }

  std::vector<Graph> graphs;
  graphs.reserve(static_cast<std::size_t>(num_graphs));
  for (long long gi = 0; gi < num_graphs; ++gi) {
    auto g = static_cast<std::size_t>(gi);
    Graph graph = Graph::from_edges(order[g], std::move(edges[g]));
    if (node_features) graph.features = node_features->middleRows(offset[g], order[g]);
    if (!graph_labels.empty()) graph.label = static_cast<int>(graph_labels[g]);
    graphs.push_back(std::move(graph));
  }
  return graphs;
}

CostMatrix shortest_path_cost(const Graph& g, std::optional<double> disconnected_value) {
  if (g.n < 1) throw InvalidArgument("shortest_path_cost needs at least one node");
  const double unreachable = disconnected_value.value_or(static_cast<double>(g.n));
  const auto adj = g.neighbors();
  Matrix d = Matrix::Constant(g.n, g.n, unreachable);
  std::vector<int> dist(static_cast<std::size_t>(g.n));
  std::queue<int> frontier;
  for (int s = 0; s < g.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      int u = frontier.front();
      frontier.pop();
      d(s, u) = dist[static_cast<std::size_t>(u)];
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          frontier.push(v);
        }
      }
    }
  }
  return CostMatrix(std::move(d));
}

CostMatrix adjacency_complement_cost(const Graph& g) {
  if (g.n < 1) throw InvalidArgument("adjacency_complement_cost needs at least one node");
  Matrix c = Matrix::Ones(g.n, g.n) - g.adjacency();
  c.diagonal().setZero();
  return CostMatrix(std::move(c));
}

CostMatrix euclidean_cost(const Matrix& points) {
  const Index n = points.rows();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (points.row(i) - points.row(j)).norm();
  return CostMatrix(std::move(d));
}

FeatureDistance feature_distance(const Graph& gx, const Graph& gy) {
  if (!gx.features || !gy.features) throw InvalidArgument("both graphs need node features");
  const Matrix& x = *gx.features;
  const Matrix& y = *gy.features;
  if (x.rows() != gx.n || y.rows() != gy.n)
    throw DimensionMismatch("feature rows do not match graph order");
  if (x.cols() != y.cols())
    throw DimensionMismatch("feature dimensions differ: " + std::to_string(x.cols()) + " vs " +
                            std::to_string(y.cols()));
  Matrix m(x.rows(), y.rows());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index k = 0; k < y.rows(); ++k) m(i, k) = (x.row(i) - y.row(k)).squaredNorm();
  return FeatureDistance(std::move(m));
}

Graph degree_features(Graph g) {
  auto deg = g.degrees();
  Matrix f(g.n, 1);
  for (int i = 0; i < g.n; ++i) f(i, 0) = deg[static_cast<std::size_t>(i)];
  g.features = std::move(f);
  return g;
}

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  const auto adj = g.neighbors();
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == g.n;
}

}  // namespace ogw
