#pragma once

#include <string>
#include <vector>

#include "projopt/sym_matrix.hpp"

namespace projopt {

/// Weighted undirected graph without self-loops or duplicate edges.
struct Graph {
  struct Edge {
    int i = 0;  // 0 <= i < j < n
    int j = 0;
    double w = 0.0;
  };

  int n = 0;
  std::vector<Edge> edges;

  /// Validates and normalizes (endpoints stored with i < j).
  static Graph from_edges(int n, std::vector<Edge> edges);

  /// Dense adjacency matrix W with zero diagonal.
  SymMatrix adjacency() const;
  double total_edge_weight() const;
};

/// Parses the plain edge-list benchmark format: header "n m", then m lines
/// "i j w" with 1-based endpoints.
Graph parse_gset(const std::string& text);

/// Reads and parses a graph file in the edge-list format.
Graph load_graph_file(const std::string& path);

/// Total weight of edges crossing the +1/-1 partition.
double cut_value(const Graph& g, const std::vector<int>& side);

struct BruteForceCut {
  double value = 0.0;
  std::vector<int> side;  // entries +1/-1 with side[0] = +1
};

/// Exact maximum cut by enumerating all 2^(n-1) assignments; n <= 24.
/// Among optimal assignments returns the lexicographically smallest side
/// sequence (with -1 ordered before +1) subject to side[0] = +1.
BruteForceCut brute_force_maxcut(const Graph& g);

}  // namespace projopt
