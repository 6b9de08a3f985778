#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#ifdef PROJOPT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include "projopt/eig.hpp"
#include "projopt/errors.hpp"
#include "projopt/maxcut.hpp"
#include "test_util.hpp"

using namespace projopt;

namespace {

const char* kTriangleText = "3 3\n1 2 1\n2 3 1\n1 3 1\n";

Graph triangle() { return parse_gset(kTriangleText); }

Graph four_cycle() {
  return Graph::from_edges(
      4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
}

Graph random_graph(SubstreamRng& rng, int n, double edge_prob) {
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < edge_prob) edges.push_back({i, j, 1.0});
  return Graph::from_edges(n, std::move(edges));
}

/// Independent exact-optimum oracle: full sign enumeration with fresh cut
/// sums, no shared code with the library routine beyond the Graph type.
double enumerate_max_cut(const Graph& g) {
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    double v = 0.0;
    for (const auto& e : g.edges) {
      const bool si = (mask >> e.i) & 1u;
      const bool sj = (mask >> e.j) & 1u;
      if (si != sj) v += e.w;
    }
    if (v > best) best = v;
  }
  return best;
}

std::string temp_dir(const char* tag) {
  auto p = std::filesystem::temp_directory_path() /
           (std::string("projopt_test_") + tag + "_" +
            std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("edge-list parsing") {
  const Graph tri = triangle();
  CHECK(tri.n == 3);
  REQUIRE(tri.edges.size() == 3);
  CHECK(tri.edges[0].i == 0);
  CHECK(tri.edges[0].j == 1);
  CHECK(tri.edges[0].w == 1.0);
  CHECK(tri.edges[2].i == 0);  // "1 3 1" normalized to (0, 2)
  CHECK(tri.edges[2].j == 2);
  CHECK(tri.total_edge_weight() == 3.0);

  const Graph neg = parse_gset("2 1\n1 2 -1\n");
  CHECK(neg.n == 2);
  REQUIRE(neg.edges.size() == 1);
  CHECK(neg.edges[0].w == -1.0);

  // Blank lines are tolerated anywhere.
  const Graph pad = parse_gset("\n 3 1 \n\n2 3 0.5\n\n");
  CHECK(pad.n == 3);
  CHECK(pad.edges[0].w == 0.5);

  const SymMatrix w = tri.adjacency();
  CHECK(w.n() == 3);
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 0) == 1.0);
  CHECK(w(2, 2) == 0.0);
}

TEST_CASE("parse errors carry line numbers") {
  auto message_of = [](const std::string& text) {
    try {
      parse_gset(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(message_of("2 2\n1 2 1\n1 2 1\n").find("line 3") != std::string::npos);
  CHECK(message_of("2 2\n1 2 1\n2 1 1\n").find("duplicate") !=
        std::string::npos);
  CHECK(message_of("2 1\n1 1 1\n").find("self-loop") != std::string::npos);
  CHECK(message_of("2 1\n1 3 1\n").find("out of range") != std::string::npos);
  CHECK(message_of("2 1\n1 2\n").find("line 2") != std::string::npos);
  CHECK(message_of("2 1\n1 2 1 9\n").find("line 2") != std::string::npos);
  CHECK(message_of("not a header\n").find("line 1") != std::string::npos);
  CHECK(message_of("").find("missing header") != std::string::npos);
  CHECK(message_of("2 3\n1 2 1\n").find("expected 3 edge lines") !=
        std::string::npos);
  CHECK(message_of("2 1\n1 2 1\n2 1 4\n").find("unexpected content") !=
        std::string::npos);
  CHECK(message_of("0 0\n").find("vertex count") != std::string::npos);

  CHECK_THROWS_AS(parse_gset("2 2\n1 2 1\n1 2 1\n"), ParseError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, 1.0}, {1, 0, 2.0}}),
                  ValidationError);
  CHECK_THROWS_AS(Graph::from_edges(0, {}), ValidationError);
}

TEST_CASE("cut values") {
  const Graph tri = triangle();
  CHECK(cut_value(tri, {1, 1, -1}) == 2.0);
  CHECK(cut_value(tri, {1, 1, 1}) == 0.0);
  CHECK(cut_value(tri, {-1, -1, -1}) == 0.0);

  const Graph neg = parse_gset("2 1\n1 2 -1\n");
  CHECK(cut_value(neg, {1, -1}) == -1.0);
  CHECK(cut_value(neg, {1, 1}) == 0.0);

  CHECK_THROWS_AS(cut_value(tri, {1, 1}), DimensionError);
  CHECK_THROWS_AS(cut_value(tri, {1, 1, 0}), ValidationError);
}

TEST_CASE("brute force enumerates the exact optimum") {
  const auto tri = brute_force_maxcut(triangle());
  CHECK(tri.value == 2.0);
  // All three nontrivial cuts tie at 2; the lexicographically smallest
  // optimal assignment is (+1, -1, -1).
  CHECK(tri.side == std::vector<int>{1, -1, -1});

  const auto cyc = brute_force_maxcut(four_cycle());
  CHECK(cyc.value == 4.0);
  CHECK(cyc.side == std::vector<int>{1, -1, 1, -1});

  const auto single = brute_force_maxcut(Graph::from_edges(1, {}));
  CHECK(single.value == 0.0);
  CHECK(single.side == std::vector<int>{1});

  // Every cut of the empty graph ties at zero.
  const auto empty = brute_force_maxcut(Graph::from_edges(3, {}));
  CHECK(empty.value == 0.0);
  CHECK(empty.side == std::vector<int>{1, -1, -1});

  CHECK_THROWS_AS(brute_force_maxcut(Graph::from_edges(25, {})),
                  ValidationError);

  SubstreamRng rng(301, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, 2 + rng.uniform_int(1, 8), 0.5);
    const auto bf = brute_force_maxcut(g);
    CHECK(bf.value == enumerate_max_cut(g));
    CHECK(cut_value(g, bf.side) == bf.value);
    CHECK(bf.side[0] == 1);
  }
}

TEST_CASE("relaxation closed forms") {
  for (SdpSolver solver : {SdpSolver::Newton, SdpSolver::Dykstra}) {
    // Empty graph: the projection of 0 is the identity.
    const Graph empty = Graph::from_edges(3, {});
    const auto none = sdp_relax(empty, 1e4, solver);
    CHECK(testutil::frob_diff(none.x, SymMatrix::identity(3)) <= 1e-7);
    CHECK(none.sdp_objective == 0.0);
    CHECK(none.converged);

    // Single edge: antipodal unit vectors, objective 2.
    const Graph edge = parse_gset("2 1\n1 2 1\n");
    const auto two = sdp_relax(edge, 1e4, solver);
    CHECK(std::abs(two.x(0, 1) + 1.0) <= 1e-6);
    CHECK(std::abs(two.x(0, 0) - 1.0) <= 1e-6);
    CHECK(std::abs(two.sdp_objective - 2.0) <= 1e-5);
    CHECK(two.gap_bound == doctest::Approx(4.0 / 2e4));

    // Triangle: three unit vectors at 120 degrees, objective 3.
    const auto tri = sdp_relax(triangle(), 1e4, solver);
    CHECK(std::abs(tri.sdp_objective - 3.0) <= 2e-3);
    CHECK(std::abs(tri.x(0, 1) + 0.5) <= 0.05);
    CHECK(std::abs(tri.x(0, 2) + 0.5) <= 0.05);
    CHECK(std::abs(tri.x(1, 2) + 0.5) <= 0.05);
    CHECK(tri.gap_bound == doctest::Approx(9.0 / 2e4));
  }

  CHECK_THROWS_AS(sdp_relax(triangle(), 0.0), ValidationError);
  CHECK_THROWS_AS(sdp_relax(triangle(), -1.0), ValidationError);
  CHECK_THROWS_AS(sdp_relax(triangle(), 1.0, SdpSolver::Newton, 0.0),
                  ValidationError);
}

TEST_CASE("relaxation output is feasible after repair") {
  SubstreamRng rng(302, 0);
  const Graph g = random_graph(rng, 10, 0.5);
  const auto rel = sdp_relax(g, 100.0, SdpSolver::Newton);

  const Matrix v = gram_normalize(rel.x);
  SymMatrix vvt(g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j) {
      double s = 0.0;
      for (int l = 0; l < v.cols; ++l) s += v(i, l) * v(j, l);
      vvt.set(i, j, s);
    }
  for (int i = 0; i < g.n; ++i) CHECK(std::abs(vvt(i, i) - 1.0) <= 1e-12);
  CHECK(min_eigenvalue(vvt) >= -1e-6);

  const SymMatrix shr = shrink_repair(rel.x);
  for (int i = 0; i < g.n; ++i) CHECK(shr(i, i) == 1.0);
  CHECK(min_eigenvalue(shr) >= -1e-10);
}

TEST_CASE("hyperplane rounding") {
  // Antipodal factor: every hyperplane separates the two vertices.
  const Graph edge = parse_gset("2 1\n1 2 1\n");
  Matrix antipodal(2, 1);
  antipodal.a = {1.0, -1.0};
  const auto sure = gw_round(antipodal, edge, 50, 11);
  CHECK(sure.best_cut == 1.0);
  CHECK(sure.mean_cut == 1.0);
  REQUIRE(sure.trial_values.size() == 50);
  for (double v : sure.trial_values) CHECK(v == 1.0);
  CHECK(sure.best_side[0] != sure.best_side[1]);

  // Determinism: identical seeds give identical outputs.
  const auto again = gw_round(antipodal, edge, 50, 11);
  CHECK(again.trial_values == sure.trial_values);
  CHECK(again.best_side == sure.best_side);

  // The analytic 120-degree optimum cuts each edge with probability 2/3, so
  // the mean cut concentrates at 2.
  Matrix star(3, 2);
  for (int i = 0; i < 3; ++i) {
    const double ang = 2.0 * M_PI * i / 3.0;
    star(i, 0) = std::cos(ang);
    star(i, 1) = std::sin(ang);
  }
  const int trials = 10000;
  const auto rounded = gw_round(star, triangle(), trials, 4);
  double var = 0.0;
  for (double v : rounded.trial_values) {
    const double d = v - rounded.mean_cut;
    var += d * d;
  }
  const double sigma_hat = std::sqrt(var / (trials - 1));
  CHECK(std::abs(rounded.mean_cut - 2.0) <=
        3.0 * sigma_hat / std::sqrt(static_cast<double>(trials)) + 1e-9);
  CHECK(rounded.best_cut == 2.0);  // integral cuts; the best trial hits 2

  CHECK_THROWS_AS(gw_round(antipodal, triangle(), 10, 0), DimensionError);
  CHECK_THROWS_AS(gw_round(antipodal, edge, 0, 0), ValidationError);
}

TEST_CASE("serial and parallel rounding agree bitwise") {
  SubstreamRng rng(303, 0);
  const Graph g = random_graph(rng, 12, 0.5);
  const auto rel = sdp_relax(g, 500.0, SdpSolver::Newton);
  const Matrix v = gram_normalize(rel.x);
  const auto serial = gw_round(v, g, 64, 9, Exec::Serial);
  const auto parallel = gw_round(v, g, 64, 9, Exec::Parallel);
  CHECK(serial.trial_values == parallel.trial_values);
  CHECK(serial.best_side == parallel.best_side);
  CHECK(serial.mean_cut == parallel.mean_cut);
}

TEST_CASE("upper-bound chain and eta monotonicity on small graphs") {
  SubstreamRng rng(304, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = random_graph(rng, 4 + trial, 0.6);
    const double opt = brute_force_maxcut(g).value;

    const double eta = 1e3;
    const auto rel = sdp_relax(g, eta, SdpSolver::Newton);
    const double sdp_cut_bound =
        0.5 * g.total_edge_weight() - 0.25 * frob_dot(g.adjacency(), rel.x);
    const double n2 = static_cast<double>(g.n) * g.n;
    CHECK(opt <= sdp_cut_bound + n2 / (2.0 * eta) + 1e-6);

    const Matrix v = gram_normalize(rel.x);
    const auto rounded = gw_round(v, g, 200, 17);
    CHECK(rounded.best_cut <= opt + 1e-12);

    // <M, X^eta> grows with eta, and the certified bound controls the gap to
    // the large-eta surrogate.
    double prev = -1e300;
    for (double e : {10.0, 1e2, 1e3, 1e4}) {
      const auto r = sdp_relax(g, e, SdpSolver::Newton);
      CHECK(r.sdp_objective >= prev - 1e-5 * (1.0 + std::abs(r.sdp_objective)));
      prev = r.sdp_objective;
    }
    const auto lo = sdp_relax(g, 100.0, SdpSolver::Newton);
    const auto hi = sdp_relax(g, 1e4, SdpSolver::Newton);
    CHECK(hi.sdp_objective - lo.sdp_objective <=
          n2 / (2.0 * 100.0) + 1e-5 * (1.0 + std::abs(hi.sdp_objective)));
  }
}

TEST_CASE("pipeline report on the triangle") {
  const auto rep = run_pipeline(triangle(), 1e4, SdpSolver::Newton, 100, 7);
  CHECK(rep.n == 3);
  CHECK(rep.best_cut == 2.0);
  REQUIRE(rep.brute_force_value.has_value());
  CHECK(*rep.brute_force_value == 2.0);
  REQUIRE(rep.ratio_vs_optimum.has_value());
  CHECK(*rep.ratio_vs_optimum == 1.0);
  CHECK(rep.best_cut >= rep.mean_cut);
  CHECK(rep.gap_bound == doctest::Approx(9.0 / 2e4));
  CHECK(rep.trials == 100);
  CHECK(rep.solver_converged);
  CHECK(rep.wall_time_s > 0.0);
  CHECK(static_cast<int>(rep.trial_values.size()) == rep.trials);
  CHECK(cut_value(triangle(), rep.best_side) == rep.best_cut);

  const auto shrunk =
      run_pipeline(triangle(), 1e4, SdpSolver::Dykstra, 100, 7,
                   RepairKind::Shrink);
  CHECK(shrunk.best_cut == 2.0);

  const auto empty = run_pipeline(Graph::from_edges(4, {}), 100.0);
  CHECK(empty.best_cut == 0.0);
  CHECK(empty.sdp_objective == 0.0);
}

TEST_CASE("enum names round-trip") {
  CHECK(std::string(to_string(SdpSolver::Dykstra)) == "dykstra");
  CHECK(std::string(to_string(SdpSolver::Newton)) == "newton");
  CHECK(sdp_solver_from_string("dykstra") == SdpSolver::Dykstra);
  CHECK(sdp_solver_from_string("newton") == SdpSolver::Newton);
  CHECK_THROWS_AS(sdp_solver_from_string("scs"), ValidationError);

  CHECK(std::string(to_string(RepairKind::GramNormalize)) == "gram_normalize");
  CHECK(std::string(to_string(RepairKind::Shrink)) == "shrink");
  CHECK(repair_from_string("gram_normalize") == RepairKind::GramNormalize);
  CHECK(repair_from_string("shrink") == RepairKind::Shrink);
  CHECK_THROWS_AS(repair_from_string("none"), ValidationError);
}

TEST_CASE("benchmark fetching validates names and uses the cache") {
  CHECK_THROWS_AS(fetch_gset("Gx", "/tmp"), ValidationError);
  CHECK_THROWS_AS(fetch_gset("11", "/tmp"), ValidationError);
  CHECK_THROWS_AS(fetch_gset("G", "/tmp"), ValidationError);
  CHECK_THROWS_AS(fetch_gset("G11x", "/tmp"), ValidationError);

  // A cache hit never touches the network: the unroutable base URL would
  // fail loudly otherwise.
  const std::string dir = temp_dir("cache");
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(std::filesystem::path(dir) / "G99");
    out << kTriangleText;
  }
  const std::string hit = fetch_gset("G99", dir, "http://127.0.0.1:1/");
  CHECK(load_graph_file(hit).n == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("benchmark fetching downloads, validates, and caches") {
  std::atomic<int> hits{0};
  httplib::Server server;
  server.Get("/Gset/G7", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.set_content("4 4\n1 2 1\n2 3 1\n3 4 1\n1 4 1\n", "text/plain");
  });
  server.Get("/Gset/G8", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("this is not a graph\n", "text/plain");
  });

  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread runner([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string base =
      "http://127.0.0.1:" + std::to_string(port) + "/Gset/";

  const std::string dir = temp_dir("fetch");
  const std::string path = fetch_gset("G7", dir, base);
  CHECK(load_graph_file(path).n == 4);
  CHECK(hits == 1);

  // Second call is served from the cache.
  CHECK(fetch_gset("G7", dir, base) == path);
  CHECK(hits == 1);

  // Invalid payloads are rejected and never cached.
  CHECK_THROWS_AS(fetch_gset("G8", dir, base), IoError);
  CHECK(!std::filesystem::exists(std::filesystem::path(dir) / "G8"));

  // Missing instances surface the HTTP status.
  CHECK_THROWS_AS(fetch_gset("G404", dir, base), IoError);

  server.stop();
  runner.join();
  std::filesystem::remove_all(dir);
}
