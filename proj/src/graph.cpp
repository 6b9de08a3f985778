#include "projopt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "projopt/errors.hpp"

namespace projopt {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 1) throw ValidationError("graph needs at least one vertex");
  std::unordered_set<std::int64_t> seen;
  seen.reserve(edges.size());
  for (Edge& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw ValidationError("edge endpoint out of range");
    if (e.i == e.j) throw ValidationError("self-loops are not allowed");
    if (!std::isfinite(e.w)) throw ValidationError("edge weight must be finite");
    if (e.i > e.j) std::swap(e.i, e.j);
    const std::int64_t key =
        static_cast<std::int64_t>(e.i) * n + e.j;
    if (!seen.insert(key).second)
      throw ValidationError("duplicate edge (" + std::to_string(e.i + 1) +
                            ", " + std::to_string(e.j + 1) + ")");
  }
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

SymMatrix Graph::adjacency() const {
  SymMatrix w(n);
  for (const Edge& e : edges) w.set(e.i, e.j, e.w);
  return w;
}

double Graph::total_edge_weight() const {
  double s = 0.0;
  for (const Edge& e : edges) s += e.w;
  return s;
}

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Graph parse_gset(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  int n = 0;
  long m = 0;
  bool header_found = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream hdr(line);
    std::string tail;
    if (!(hdr >> n >> m) || (hdr >> tail))
      throw ParseError("expected header \"n m\"", line_no);
    header_found = true;
    break;
  }
  if (!header_found)
    throw ParseError("missing header \"n m\"", line_no == 0 ? 1 : line_no);
  if (n < 1) throw ParseError("vertex count must be positive", line_no);
  if (m < 0) throw ParseError("edge count must be nonnegative", line_no);

  std::vector<Graph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::unordered_set<std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(m));

  long read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (read == m)
      throw ParseError("unexpected content after " + std::to_string(m) +
                           " edges",
                       line_no);
    std::istringstream es(line);
    long i = 0, j = 0;
    double w = 0.0;
    std::string tail;
    if (!(es >> i >> j >> w) || (es >> tail))
      throw ParseError("expected edge line \"i j w\"", line_no);
    if (i < 1 || i > n || j < 1 || j > n)
      throw ParseError("vertex index out of range [1, " + std::to_string(n) +
                           "]",
                       line_no);
    if (i == j) throw ParseError("self-loop", line_no);
    if (!std::isfinite(w)) throw ParseError("non-finite edge weight", line_no);
    int a = static_cast<int>(i) - 1;
    int b = static_cast<int>(j) - 1;
    if (a > b) std::swap(a, b);
    if (!seen.insert(static_cast<std::int64_t>(a) * n + b).second)
      throw ParseError("duplicate edge (" + std::to_string(a + 1) + ", " +
                           std::to_string(b + 1) + ")",
                       line_no);
    edges.push_back({a, b, w});
    ++read;
  }
  if (read != m)
    throw ParseError("expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(read),
                     line_no + 1);

  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gset(buf.str());
}

double cut_value(const Graph& g, const std::vector<int>& side) {
  if (static_cast<int>(side.size()) != g.n)
    throw DimensionError("cut assignment length " +
                         std::to_string(side.size()) + " does not match n = " +
                         std::to_string(g.n));
  for (int s : side)
    if (s != 1 && s != -1)
      throw ValidationError("cut assignment entries must be +1 or -1");
  double v = 0.0;
  for (const Graph::Edge& e : g.edges)
    if (side[e.i] != side[e.j]) v += e.w;
  return v;
}

BruteForceCut brute_force_maxcut(const Graph& g) {
  if (g.n > 24)
    throw ValidationError("brute force supports at most 24 vertices");

  // side[0] is pinned to +1; bit b of the mask flips vertex b+1 to -1.
  const std::uint32_t count = 1u << (g.n - 1);
  std::vector<int> side(g.n, 1), best_side(g.n, 1);
  double best = cut_value(g, best_side);

  auto lex_smaller = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int i = 0; i < g.n; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  };

  for (std::uint32_t mask = 1; mask < count; ++mask) {
    for (int v = 1; v < g.n; ++v)
      side[v] = (mask >> (v - 1)) & 1u ? -1 : 1;
    // Edge weights are summed in edge order for every mask, so equal cuts
    // compare exactly equal and the lexicographic tie-break is meaningful.
    const double val = cut_value(g, side);
    if (val > best || (val == best && lex_smaller(side, best_side))) {
      best = val;
      best_side = side;
    }
  }
  return {best, std::move(best_side)};
}

}  // namespace projopt
