#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "lapctrl/graph.hpp"

using namespace lapctrl;

namespace {

// Erdős–Gallai oracle, independent of the conjugate-based condition under test.
bool erdos_gallai(const std::vector<int>& d) {
  long long sum = 0;
  for (int x : d) sum += x;
  if (sum % 2 != 0) return false;
  const int k = static_cast<int>(d.size());
  for (int r = 1; r <= k; ++r) {
    long long lhs = 0;
    for (int i = 0; i < r; ++i) lhs += d[i];
    long long rhs = static_cast<long long>(r) * (r - 1);
    for (int i = r; i < k; ++i) rhs += std::min(d[i], r);
    if (lhs > rhs) return false;
  }
  return true;
}

// Floyd–Warshall oracle for the BFS diameter.
int diameter_oracle(const Graph& g) {
  const int n = g.num_vertices;
  const int inf = 1 << 20;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) dist[i][i] = 0;
  for (const auto& [u, v] : g.edges) dist[u - 1][v - 1] = dist[v - 1][u - 1] = 1;
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        dist[i][j] = std::min(dist[i][j], dist[i][m] + dist[m][j]);
      }
    }
  }
  int diam = 0;
  for (const auto& row : dist) {
    for (int d : row) diam = std::max(diam, d);
  }
  return diam;
}

}  // namespace

TEST_CASE("degree sequences of the basic builders") {
  CHECK(degree_sequence(build_antiregular(4)).values == std::vector<int>{3, 2, 2, 1});
  CHECK(degree_sequence(build_path(3)).values == std::vector<int>{2, 1, 1});
  CHECK(degree_sequence(make_graph(2, {{1, 2}})).values == std::vector<int>{1, 1});

  // sum of degrees = 2|E|
  for (int k = 2; k <= 9; ++k) {
    const Graph g = build_antiregular(k);
    const auto d = degree_sequence(g);
    int sum = 0;
    for (int x : d.values) sum += x;
    CHECK(sum == 2 * static_cast<int>(g.edges.size()));
  }
}

TEST_CASE("conjugate sequence") {
  CHECK(conjugate(DegreeSequence{{3, 2, 2, 1}}).values == std::vector<int>{4, 3, 1, 0});
  CHECK(conjugate(DegreeSequence{{1, 1}}).values == std::vector<int>{2, 0});
  CHECK(conjugate(DegreeSequence{{0}}).values == std::vector<int>{0});
}

TEST_CASE("double conjugation restores the nonzero prefix") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 8);
    Graph g = build_path(k);  // any graphical sequence works; vary with edges
    for (int extra = 0; extra < 3; ++extra) {
      const int u = 1 + static_cast<int>(rng() % k);
      const int v = 1 + static_cast<int>(rng() % k);
      if (u == v) continue;
      auto edges = g.edges;
      auto e = std::minmax(u, v);
      if (std::find(edges.begin(), edges.end(), std::make_pair(e.first, e.second)) ==
          edges.end()) {
        edges.emplace_back(e.first, e.second);
        g = make_graph(k, edges);
      }
    }
    const auto d = degree_sequence(g);
    const auto dd = conjugate(conjugate(d));
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      if (d.values[i] > 0) CHECK(dd.values[i] == d.values[i]);
    }
  }
}

TEST_CASE("trace") {
  CHECK(trace_of(DegreeSequence{{3, 2, 2, 1}}) == 2);
  CHECK(trace_of(DegreeSequence{{1, 1}}) == 1);
  CHECK(trace_of(DegreeSequence{{0, 0}}) == 0);
}

TEST_CASE("graphical condition with slack report") {
  const auto r1 = is_graphical(DegreeSequence{{3, 2, 2, 1}});
  CHECK(r1.graphical);
  CHECK(r1.slacks == std::vector<long long>{0, 0});

  CHECK_FALSE(is_graphical(DegreeSequence{{3, 3, 1, 1}}).graphical);
  CHECK(is_graphical(DegreeSequence{{1, 1}}).graphical);
  CHECK_FALSE(is_graphical(DegreeSequence{{1, 1, 1}}).graphical);  // odd sum
}

TEST_CASE("graphical condition agrees with the Erdős–Gallai oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 7);
    std::vector<int> d(k);
    for (int& x : d) x = static_cast<int>(rng() % k);
    std::sort(d.begin(), d.end(), std::greater<>());
    CHECK(is_graphical(DegreeSequence{d}).graphical == erdos_gallai(d));
  }
}

TEST_CASE("threshold detection") {
  CHECK(is_threshold(DegreeSequence{{3, 2, 2, 1}}));
  CHECK_FALSE(is_threshold(DegreeSequence{{2, 2, 1, 1}}));  // P4
  CHECK(is_threshold(DegreeSequence{{1, 1}}));
  CHECK_THROWS_AS((void)is_threshold(DegreeSequence{{3, 3, 1, 1}}),
                  std::invalid_argument);
  // antiregular graphs are threshold graphs
  for (int k = 2; k <= 10; ++k) {
    CHECK(is_threshold(degree_sequence(build_antiregular(k))));
  }
}

TEST_CASE("path builder") {
  CHECK(build_path(1).edges.empty());
  CHECK(build_path(3).edges == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
  const Graph p8 = build_path(8);
  CHECK(p8.edges.size() == 7);
  CHECK(degree_sequence(p8).values == std::vector<int>{2, 2, 2, 2, 2, 2, 1, 1});
  CHECK_THROWS_AS(build_path(0), std::invalid_argument);
}

TEST_CASE("antiregular builder") {
  CHECK(build_antiregular(2).edges == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(build_antiregular(4).edges ==
        std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}});
  CHECK(degree_sequence(build_antiregular(5)).values ==
        std::vector<int>{4, 3, 2, 2, 1});
  CHECK_THROWS_AS(build_antiregular(1), std::invalid_argument);
}

TEST_CASE("antiregular graphs have one repeated degree at the middle pair") {
  for (int k = 2; k <= 12; ++k) {
    const Graph g = build_antiregular(k);
    CHECK(is_connected(g));
    std::vector<int> deg(k, 0);
    for (const auto& [u, v] : g.edges) {
      ++deg[u - 1];
      ++deg[v - 1];
    }
    const BlockLayout layout{k, 1, false};
    const int kb = layout.kappa_upper();
    CHECK(deg[kb - 1] == layout.kappa_lower());
    CHECK(deg[kb] == layout.kappa_lower());
    // exactly one repeated value
    auto sorted = deg;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::unique(sorted.begin(), sorted.end()) == sorted.end() - 1);
    // degree-sorted labeling
    for (int i = 0; i + 1 < k; ++i) CHECK(deg[i] >= deg[i + 1]);
    // the repeated pair is adjacent iff k is even
    const bool adjacent =
        std::find(g.edges.begin(), g.edges.end(), std::make_pair(kb, kb + 1)) !=
        g.edges.end();
    CHECK(adjacent == (layout.beta() == 1));
  }
}

TEST_CASE("interconnection builder") {
  // k=2 reproduces the path with identical labeling
  for (int n = 1; n <= 6; ++n) {
    CHECK(interconnect_antiregular({2, n, false}).edges == build_path(2 * n).edges);
  }

  const Graph g = interconnect_antiregular({4, 2, false});
  CHECK(g.num_vertices == 8);
  CHECK(std::find(g.edges.begin(), g.edges.end(), std::make_pair(4, 6)) !=
        g.edges.end());
  CHECK(degree_sequence(g).values == std::vector<int>{3, 3, 3, 2, 2, 2, 2, 1});

  CHECK(interconnect_antiregular({3, 1, false}).edges == build_antiregular(3).edges);
  CHECK_THROWS_AS(interconnect_antiregular({1, 2, false}), std::invalid_argument);
  CHECK_THROWS_AS(interconnect_antiregular({3, 0, false}), std::invalid_argument);

  for (int k = 2; k <= 7; ++k) {
    for (int n = 1; n <= 5; ++n) {
      const Graph gg = interconnect_antiregular({k, n, false});
      CHECK(is_connected(gg));
      CHECK(static_cast<int>(gg.edges.size()) ==
            n * static_cast<int>(build_antiregular(k).edges.size()) + (n - 1));
    }
  }
}

TEST_CASE("append vertex") {
  CHECK(append_vertex(build_path(2), 2).edges == build_path(3).edges);
  CHECK(degree_sequence(append_vertex(build_antiregular(4), 2)).values ==
        std::vector<int>{3, 3, 2, 1, 1});
  CHECK(append_vertex(interconnect_antiregular({4, 2, false}), 2).num_vertices == 9);
  CHECK_THROWS_AS(append_vertex(build_path(2), 3), std::invalid_argument);
  CHECK_THROWS_AS(append_vertex(build_path(2), 0), std::invalid_argument);
}

TEST_CASE("generalized path builder places the input vertex") {
  const auto p8 = build_generalized_path({2, 4, false});
  CHECK(p8.graph.edges == build_path(8).edges);
  CHECK(p8.input_vertex == 1);

  const auto mid = build_generalized_path({4, 2, false});
  CHECK(mid.graph.num_vertices == 8);
  CHECK(mid.input_vertex == 2);

  const auto extra = build_generalized_path({4, 2, true});
  CHECK(extra.graph.num_vertices == 9);
  CHECK(extra.input_vertex == 9);
}

TEST_CASE("diameter and max degree") {
  CHECK(diameter(interconnect_antiregular({4, 2, false})) == 5);
  CHECK(max_degree(interconnect_antiregular({4, 2, false})) == 3);
  CHECK(diameter(build_path(8)) == 7);
  CHECK(max_degree(build_path(8)) == 2);
  CHECK(diameter(build_antiregular(8)) == 2);
  CHECK(max_degree(build_antiregular(8)) == 7);

  const Graph disconnected = make_graph(3, {{1, 2}});
  CHECK_THROWS_AS(diameter(disconnected), std::invalid_argument);

  std::mt19937 rng(3);
  for (int k = 3; k <= 6; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const Graph g = interconnect_antiregular({k, n, false});
      CHECK(diameter(g) == diameter_oracle(g));
      CHECK(diameter(g) == 3 * n - 1);
      CHECK(max_degree(g) == k - 1);
      const Graph ge = build_generalized_path({k, n, true}).graph;
      CHECK(diameter(ge) == 3 * n);
    }
  }
}

TEST_CASE("laplacian") {
  Eigen::MatrixXd p2(2, 2);
  p2 << 1, -1, -1, 1;
  CHECK((laplacian(build_path(2)) - p2).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd a4(4, 4);
  a4 << 3, -1, -1, -1, -1, 2, -1, 0, -1, -1, 2, 0, -1, 0, 0, 1;
  CHECK((laplacian(build_antiregular(4)) - a4).cwiseAbs().maxCoeff() == 0.0);

  for (int k = 2; k <= 7; ++k) {
    const Eigen::MatrixXd lap = laplacian(build_antiregular(k));
    CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK((lap - lap.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(make_graph(2, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(2, {{1, 2}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(2, {{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(0, {}), std::invalid_argument);
}

TEST_CASE("JSON and edge-list round trips") {
  const Graph g = interconnect_antiregular({5, 2, false});
  const Graph via_json = graph_from_json(to_json(g));
  CHECK(via_json.num_vertices == g.num_vertices);
  CHECK(via_json.edges == g.edges);

  const Graph via_text = graph_from_edge_list(to_edge_list(g));
  CHECK(via_text.num_vertices == g.num_vertices);
  CHECK(via_text.edges == g.edges);

  CHECK_THROWS_AS(graph_from_edge_list("1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_edge_list("# vertices 2\n1 two\n"),
                  std::invalid_argument);
}
