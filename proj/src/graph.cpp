#include "lapctrl/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lapctrl {

Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 1) {
    throw std::invalid_argument("graph needs at least one vertex");
  }
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (u < 1 || v > num_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("duplicate edge rejected");
  }
  return Graph{num_vertices, std::move(edges)};
}

void validate(const BlockLayout& layout) {
  if (layout.k < 2) throw std::invalid_argument("block size k must be >= 2");
  if (layout.n < 1) throw std::invalid_argument("block count n must be >= 1");
}

static std::vector<int> degrees(const Graph& g) {
  std::vector<int> deg(g.num_vertices, 0);
  for (const auto& [u, v] : g.edges) {
    ++deg[u - 1];
    ++deg[v - 1];
  }
  return deg;
}

DegreeSequence degree_sequence(const Graph& g) {
  auto deg = degrees(g);
  std::sort(deg.begin(), deg.end(), std::greater<>());
  return DegreeSequence{std::move(deg)};
}

DegreeSequence conjugate(const DegreeSequence& d) {
  const int k = static_cast<int>(d.values.size());
  std::vector<int> conj(k, 0);
  for (int i = 1; i <= k; ++i) {
    conj[i - 1] = static_cast<int>(std::count_if(
        d.values.begin(), d.values.end(), [i](int dj) { return dj >= i; }));
  }
  return DegreeSequence{std::move(conj)};
}

int trace_of(const DegreeSequence& d) {
  int tau = 0;
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    if (d.values[j] >= static_cast<int>(j) + 1) ++tau;
  }
  return tau;
}

GraphicalReport is_graphical(const DegreeSequence& d) {
  GraphicalReport report;
  const long long total = std::accumulate(d.values.begin(), d.values.end(), 0LL);
  report.even_sum = (total % 2 == 0);
  const auto conj = conjugate(d);
  const int tau = trace_of(d);
  long long lhs = 0, rhs = 0;
  bool ok = report.even_sum;
  for (int j = 1; j <= tau; ++j) {
    lhs += d.values[j - 1] + 1;
    rhs += conj.values[j - 1];
    report.slacks.push_back(rhs - lhs);
    if (lhs > rhs) ok = false;
  }
  report.graphical = ok;
  return report;
}

bool is_threshold(const DegreeSequence& d) {
  const auto report = is_graphical(d);
  if (!report.graphical) {
    throw std::invalid_argument("is_threshold requires a graphical sequence");
  }
  return std::all_of(report.slacks.begin(), report.slacks.end(),
                     [](long long s) { return s == 0; });
}

Graph build_path(int num_vertices) {
  if (num_vertices < 1) throw std::invalid_argument("path needs >= 1 vertex");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < num_vertices; ++i) edges.emplace_back(i, i + 1);
  return make_graph(num_vertices, std::move(edges));
}

Graph build_antiregular(int k) {
  if (k < 2) throw std::invalid_argument("antiregular graph needs k >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      if (i + j <= k + 1) edges.emplace_back(i, j);
    }
  }
  return make_graph(k, std::move(edges));
}

Graph interconnect_antiregular(const BlockLayout& layout) {
  validate(layout);
  const int k = layout.k;
  const int n = layout.n;
  const Graph block = build_antiregular(k);
  std::vector<std::pair<int, int>> edges;
  for (int p = 0; p < n; ++p) {
    for (const auto& [u, v] : block.edges) {
      edges.emplace_back(p * k + u, p * k + v);
    }
  }
  for (int i = 1; i <= n - 1; ++i) {
    edges.emplace_back(i * k, i * k + layout.kappa_upper());
  }
  return make_graph(k * n, std::move(edges));
}

Graph append_vertex(const Graph& g, int n_c) {
  if (n_c < 1 || n_c > g.num_vertices) {
    throw std::invalid_argument("attachment vertex out of range");
  }
  auto edges = g.edges;
  edges.emplace_back(n_c, g.num_vertices + 1);
  return make_graph(g.num_vertices + 1, std::move(edges));
}

ControlSetup build_generalized_path(const BlockLayout& layout) {
  validate(layout);
  Graph g = interconnect_antiregular(layout);
  if (!layout.extra_vertex) {
    return ControlSetup{std::move(g), layout.kappa_upper()};
  }
  Graph appended = append_vertex(g, layout.kappa_upper());
  const int input = appended.num_vertices;
  return ControlSetup{std::move(appended), input};
}

static std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (const auto& [u, v] : g.edges) {
    adj[u - 1].push_back(v - 1);
    adj[v - 1].push_back(u - 1);
  }
  return adj;
}

static std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj,
                                      int source) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  const auto dist = bfs_distances(adjacency_lists(g), 0);
  return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

int diameter(const Graph& g) {
  const auto adj = adjacency_lists(g);
  int diam = 0;
  for (int s = 0; s < g.num_vertices; ++s) {
    const auto dist = bfs_distances(adj, s);
    for (int d : dist) {
      if (d < 0) throw std::invalid_argument("diameter of disconnected graph");
      diam = std::max(diam, d);
    }
  }
  return diam;
}

int max_degree(const Graph& g) {
  const auto deg = degrees(g);
  return *std::max_element(deg.begin(), deg.end());
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.num_vertices, g.num_vertices);
  for (const auto& [u, v] : g.edges) {
    lap(u - 1, v - 1) = -1.0;
    lap(v - 1, u - 1) = -1.0;
    lap(u - 1, u - 1) += 1.0;
    lap(v - 1, v - 1) += 1.0;
  }
  return lap;
}

std::string to_json(const Graph& g) {
  nlohmann::json j;
  j["num_vertices"] = g.num_vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  return j.dump(2);
}

Graph graph_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  return make_graph(j.at("num_vertices").get<int>(), std::move(edges));
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# vertices " << g.num_vertices << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

Graph graph_from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int num_vertices = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string word;
      header >> word >> num_vertices;
      if (word != "vertices" || !header) {
        throw std::invalid_argument("bad edge-list header: " + line);
      }
      continue;
    }
    std::istringstream row(line);
    int u = 0, v = 0;
    if (!(row >> u >> v)) {
      throw std::invalid_argument("bad edge-list row: " + line);
    }
    edges.emplace_back(u, v);
  }
  if (num_vertices < 1) {
    throw std::invalid_argument("edge list missing '# vertices N' header");
  }
  return make_graph(num_vertices, std::move(edges));
}

}  // namespace lapctrl
