#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace lapctrl {

// Labeled simple undirected graph. Vertices are 1-based throughout,
// matching the index arithmetic of the block constructions below.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // sorted pairs u < v, lexicographic
};

// Validates labels, rejects self-loops and duplicates, sorts the edge list.
Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges);

// Non-increasing integer sequence.
struct DegreeSequence {
  std::vector<int> values;
};

// Layout of an interconnection of n antiregular blocks with k vertices each,
// optionally with one extra vertex appended.
struct BlockLayout {
  int k = 2;
  int n = 1;
  bool extra_vertex = false;

  int kappa_upper() const { return (k + 1) / 2; }  // ⌈k/2⌉
  int kappa_lower() const { return k / 2; }        // ⌊k/2⌋
  int beta() const { return k % 2 == 0 ? 1 : 0; }
  int total_vertices() const { return k * n + (extra_vertex ? 1 : 0); }
};

void validate(const BlockLayout& layout);

// Graph plus the vertex carrying the single control input.
struct ControlSetup {
  Graph graph;
  int input_vertex = 1;
};

DegreeSequence degree_sequence(const Graph& g);
DegreeSequence conjugate(const DegreeSequence& d);
int trace_of(const DegreeSequence& d);

struct GraphicalReport {
  bool graphical = false;
  bool even_sum = false;
  // slack at each j in {1..trace}: sum d*_i - sum (d_i + 1); all zero for a
  // graphical sequence means the sequence determines a threshold graph
  std::vector<long long> slacks;
};
GraphicalReport is_graphical(const DegreeSequence& d);
bool is_threshold(const DegreeSequence& d);

Graph build_path(int num_vertices);

// Canonical antiregular graph on k vertices: {i,j} is an edge iff i + j <= k+1.
// Vertices come out in non-increasing degree order with degree values
// (k-1, ..., kappa_lower, kappa_lower, ..., 1).
Graph build_antiregular(int k);

// n copies of the k-vertex antiregular graph chained by edges
// {ik, ik + kappa_upper}, i = 1..n-1 (terminal vertex of block i to the
// degree-repeating vertex of block i+1).
Graph interconnect_antiregular(const BlockLayout& layout);

// New vertex num_vertices+1 attached to n_c by a single edge.
Graph append_vertex(const Graph& g, int n_c);

// The controllable family: interconnection with input at the degree-repeating
// vertex kappa_upper of the first block, or, with the extra vertex, input at
// the appended vertex kn+1.
ControlSetup build_generalized_path(const BlockLayout& layout);

bool is_connected(const Graph& g);
int diameter(const Graph& g);   // throws on disconnected input
int max_degree(const Graph& g);

Eigen::MatrixXd laplacian(const Graph& g);

// JSON {"num_vertices": N, "edges": [[u,v],...]} and plain edge-list text
// with a "# vertices N" header line.
std::string to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
std::string to_edge_list(const Graph& g);
Graph graph_from_edge_list(const std::string& text);

}  // namespace lapctrl
