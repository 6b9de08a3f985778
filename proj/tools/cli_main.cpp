// Subcommand wiring and dispatch.  Exit codes: 0 success, 2 usage or
// validation, 3 file or network, 4 numeric non-convergence.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <regex>

#include "cli_support.hpp"
#include "projopt/errors.hpp"
#include "projopt/graph.hpp"
#include "projopt/matrix_io.hpp"

namespace projopt::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ProjectArgs {
  std::string set, point, exec = "auto", out = "-";
};

int cmd_project(const ProjectArgs& a) {
  const auto t0 = Clock::now();
  const auto set = load_set_arg(a.set);
  const auto point = load_point_arg(a.point);
  const auto exec = parse_exec(a.exec);
  const Vector x = project(set, point, exec);
  const double residual = membership_residual(set, x, exec);
  json j = project_json(set, point, x, residual);
  add_timing(j, seconds_since(t0));
  write_text(a.out, j.dump(2) + "\n");
  return 0;
}

struct LinoptArgs {
  std::string set, c, x0, sweep, exec = "auto", out = "-";
  std::optional<double> eta, epsilon;
};

int cmd_linopt(const LinoptArgs& a) {
  const auto t0 = Clock::now();
  const auto set = load_set_arg(a.set);
  const auto c = load_point_arg(a.c);
  const Vector x0 = a.x0.empty()
                        ? Vector(static_cast<std::size_t>(set.ambient_dim()))
                        : load_point_arg(a.x0);
  const auto exec = parse_exec(a.exec);

  // The tight gap bound needs a true maximizer; available in closed form
  // everywhere except the elliptope.
  std::optional<Vector> reference;
  if (set.kind != ConvexSetSpec::Kind::Elliptope) {
    auto ref = lmo(set, c, x0, exec);
    if (!ref.approximate) reference = std::move(ref.x);
  }

  if (!a.sweep.empty()) {
    if (a.eta || a.epsilon)
      throw ValidationError("--sweep carries its own eta schedule; drop "
                            "--eta/--epsilon");
    const auto sweep =
        eta_sweep(set, c, x0, parse_vector_arg(a.sweep), reference, exec);
    write_text(a.out, sweep_csv(sweep));
    return 0;
  }

  if (a.eta.has_value() == a.epsilon.has_value())
    throw ValidationError("give exactly one of --eta and --epsilon");
  const double eta =
      a.eta ? *a.eta : eta_for_epsilon(set, *a.epsilon, x0);
  const auto r = solve_single_projection(set, c, x0, eta, reference, exec);
  json j = linopt_json(set, c, x0, r);
  add_timing(j, seconds_since(t0));
  write_text(a.out, j.dump(2) + "\n");
  return 0;
}

struct AscentArgs {
  std::string engine, set, x0, oracle, eta, trace, exec = "auto", out = "-";
  std::int64_t max_iter = 100000;
  double step_tol = 1e-9;
  double gap_tol = 1e-8;
  bool no_anchor = false;
};

int cmd_ascent(const AscentArgs& a) {
  const auto t0 = Clock::now();
  const auto set = load_set_arg(a.set);
  const auto x0 = load_point_arg(a.x0);
  AscentOptions opts;
  opts.max_iter = a.max_iter;
  opts.step_norm_tol = a.step_tol;
  opts.exec = parse_exec(a.exec);

  IterateTrace trace;
  SubgradientOracle oracle = SubgradientOracle::half_squared_norm();
  if (a.engine == "ilo") {
    if (!a.oracle.empty())
      throw ValidationError("ilo fixes its objective; drop --oracle");
    if (!a.eta.empty())
      throw ValidationError("--eta applies only to pga");
    trace = ilo_run(set, x0, !a.no_anchor, opts);
  } else if (a.engine == "pga" || a.engine == "cgu") {
    if (a.oracle.empty())
      throw ValidationError(a.engine + " needs --oracle");
    oracle = parse_oracle_arg(a.oracle);
    if (a.engine == "pga") {
      const auto steps = a.eta.empty()
                             ? StepSchedule::constant(diameter(set))
                             : StepSchedule::sequence(parse_vector_arg(a.eta));
      trace = pga_run(oracle, set, x0, steps, opts);
    } else {
      if (!a.eta.empty())
        throw ValidationError("--eta applies only to pga");
      trace = cgu_run(oracle, set, x0, !a.no_anchor, opts);
    }
  } else {
    throw ValidationError("unknown engine \"" + a.engine +
                          "\" (expected pga, cgu, or ilo)");
  }

  const auto rep =
      stationarity_report(oracle, set, trace, a.gap_tol, opts.exec);
  if (!a.trace.empty()) write_trace_csv_file(a.trace, trace);
  json j = ascent_json(set, oracle.name, trace, rep, a.gap_tol);
  add_timing(j, seconds_since(t0));
  write_text(a.out, j.dump(2) + "\n");
  return 0;
}

struct NcmArgs {
  std::string in, solver = "newton", matrix_out, exec = "auto", out = "-";
  double tol = 1e-7;
  double cg_tol = 1e-2;
  std::optional<int> max_iter;
};

int cmd_ncm(const NcmArgs& a) {
  const auto set_exec = parse_exec(a.exec);
  const SymMatrix g = read_matrix_file(a.in);
  NcmResult r;
  if (a.solver == "dykstra")
    r = project_elliptope_dykstra(g, a.tol, a.max_iter.value_or(100000),
                                  set_exec);
  else if (a.solver == "newton")
    r = project_elliptope_newton(g, a.tol, a.max_iter.value_or(200), a.cg_tol,
                                 set_exec);
  else
    throw ValidationError("unknown solver \"" + a.solver +
                          "\" (expected dykstra or newton)");
  if (!a.matrix_out.empty()) write_dense_matrix_file(a.matrix_out, r.x);
  json j = ncm_json(a.in, a.solver, a.tol, r);
  add_timing(j, r.wall_time_s);
  write_text(a.out, j.dump(2) + "\n");
  return r.converged ? 0 : 4;
}

struct MaxcutArgs {
  std::string graph, fetch, bench, solver = "newton",
              repair = "gram_normalize", cache_dir = default_cache_dir(),
              base_url = default_gset_base_url(), trials_out, exec = "auto",
              out = "-";
  double eta = 4000.0;
  int trials = 100;
  std::uint64_t seed = 0;
};

Graph resolve_instance(const std::string& entry, const MaxcutArgs& a) {
  static const std::regex gset_name("G[0-9]+");
  if (std::regex_match(entry, gset_name))
    return load_graph_file(fetch_gset(entry, a.cache_dir, a.base_url));
  return load_graph_file(entry);
}

int cmd_maxcut(const MaxcutArgs& a) {
  const auto exec = parse_exec(a.exec);
  const auto solver = sdp_solver_from_string(a.solver);
  const auto repair = repair_from_string(a.repair);
  const int modes = int(!a.graph.empty()) + int(!a.fetch.empty()) +
                    int(!a.bench.empty());
  if (modes != 1)
    throw ValidationError("give exactly one of --graph, --fetch, --bench");

  if (!a.bench.empty()) {
    if (!a.trials_out.empty())
      throw ValidationError("--trials-out applies to single runs");
    std::string csv = bench_csv_header();
    bool all_converged = true;
    for (const auto& entry : [&] {
           std::vector<std::string> es;
           std::size_t start = 0;
           while (true) {
             const auto pos = a.bench.find(',', start);
             es.push_back(a.bench.substr(start, pos - start));
             if (pos == std::string::npos) return es;
             start = pos + 1;
           }
         }()) {
      const Graph g = resolve_instance(entry, a);
      const auto r =
          run_pipeline(g, a.eta, solver, a.trials, a.seed, repair, exec);
      csv += bench_csv_row(entry, r);
      all_converged = all_converged && r.solver_converged;
    }
    write_text(a.out, csv);
    return all_converged ? 0 : 4;
  }

  const std::string entry = a.graph.empty() ? a.fetch : a.graph;
  const Graph g = resolve_instance(entry, a);
  const auto r = run_pipeline(g, a.eta, solver, a.trials, a.seed, repair, exec);
  if (!a.trials_out.empty()) write_text(a.trials_out, trials_csv(r.trial_values));
  json j = maxcut_json(entry, r);
  add_timing(j, r.wall_time_s);
  write_text(a.out, j.dump(2) + "\n");
  return r.solver_converged ? 0 : 4;
}

void add_common(CLI::App* sub, std::string& exec, std::string& out) {
  sub->add_option("--exec", exec, "Execution mode: serial, parallel, auto")
      ->capture_default_str();
  sub->add_option("--out", out, "Output path, - for stdout")
      ->capture_default_str();
}

}  // namespace

int run_main(int argc, const char* const* argv) {
  CLI::App app{"Convex projection and optimization toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  ProjectArgs pa;
  auto* project = app.add_subcommand(
      "project", "Orthogonal projection onto a convex set");
  project->add_option("--set", pa.set,
                      "Set spec (e.g. ball:0,0:1) or @file.json")
      ->required();
  project->add_option("--point", pa.point, "Point: x1,x2,... or @file")
      ->required();
  add_common(project, pa.exec, pa.out);
  project->callback([&] { rc = cmd_project(pa); });

  LinoptArgs la;
  auto* linopt = app.add_subcommand(
      "linopt", "Maximize <c,x> over a set by a single projection");
  linopt->add_option("--set", la.set, "Set spec or @file.json")->required();
  linopt->add_option("--c", la.c, "Objective direction: c1,c2,... or @file")
      ->required();
  linopt->add_option("--x0", la.x0, "Base point (default: origin)");
  linopt->add_option("--eta", la.eta, "Projection scale eta > 0");
  linopt->add_option("--epsilon", la.epsilon,
                     "Target objective gap; picks eta automatically");
  linopt->add_option("--sweep", la.sweep,
                     "Comma-separated eta schedule; emits CSV instead of JSON");
  add_common(linopt, la.exec, la.out);
  linopt->callback([&] { rc = cmd_linopt(la); });

  AscentArgs aa;
  auto* ascent = app.add_subcommand(
      "ascent", "Iterative maximization: pga, cgu, or ilo");
  ascent->add_option("--engine", aa.engine, "pga | cgu | ilo")->required();
  ascent->add_option("--set", aa.set, "Set spec or @file.json")->required();
  ascent->add_option("--x0", aa.x0, "Feasible start: x1,x2,... or @file")
      ->required();
  ascent->add_option("--oracle", aa.oracle,
                     "linear:c1,... | half_squared_norm | maxlin:...");
  ascent->add_option("--eta", aa.eta,
                     "Step schedule for pga (default: set diameter)");
  ascent->add_option("--max-iter", aa.max_iter, "Iteration cap")
      ->capture_default_str();
  ascent->add_option("--step-tol", aa.step_tol, "Stop when ||step|| <= tol")
      ->capture_default_str();
  ascent->add_option("--gap-tol", aa.gap_tol,
                     "Stationarity certification threshold")
      ->capture_default_str();
  ascent->add_flag("--no-anchor", aa.no_anchor,
                   "Disable anchor tie-breaking in cgu/ilo");
  ascent->add_option("--trace", aa.trace, "Write per-iteration CSV here");
  add_common(ascent, aa.exec, aa.out);
  ascent->callback([&] { rc = cmd_ascent(aa); });

  NcmArgs na;
  auto* ncm = app.add_subcommand(
      "ncm", "Nearest correlation matrix (projection onto the elliptope)");
  ncm->add_option("--in", na.in, "Matrix file: dense text or MatrixMarket")
      ->required();
  ncm->add_option("--solver", na.solver, "dykstra | newton")
      ->capture_default_str();
  ncm->add_option("--tol", na.tol, "Convergence tolerance")
      ->capture_default_str();
  ncm->add_option("--max-iter", na.max_iter,
                  "Iteration cap (default: solver-specific)");
  ncm->add_option("--cg-tol", na.cg_tol,
                  "Inner CG relative tolerance (newton)")
      ->capture_default_str();
  ncm->add_option("--matrix-out", na.matrix_out,
                  "Also write the solution as dense text here");
  add_common(ncm, na.exec, na.out);
  ncm->callback([&] { rc = cmd_ncm(na); });

  MaxcutArgs ma;
  auto* maxcut = app.add_subcommand(
      "maxcut", "SDP relaxation and hyperplane rounding for max cut");
  maxcut->add_option("--graph", ma.graph, "Edge-list file (n m / i j w)");
  maxcut->add_option("--fetch", ma.fetch,
                     "Benchmark instance name (G1, G11, ...)");
  maxcut->add_option("--bench", ma.bench,
                     "Comma-separated instances; emits CSV instead of JSON");
  maxcut->add_option("--eta", ma.eta, "Projection scale")
      ->capture_default_str();
  maxcut->add_option("--solver", ma.solver, "dykstra | newton")
      ->capture_default_str();
  maxcut->add_option("--repair", ma.repair, "gram_normalize | shrink")
      ->capture_default_str();
  maxcut->add_option("--trials", ma.trials, "Rounding trials")
      ->capture_default_str();
  maxcut->add_option("--seed", ma.seed, "Rounding seed")
      ->capture_default_str();
  maxcut->add_option("--cache-dir", ma.cache_dir, "Instance cache directory")
      ->capture_default_str();
  maxcut->add_option("--base-url", ma.base_url, "Instance download base URL");
  maxcut->add_option("--trials-out", ma.trials_out,
                     "Write per-trial cut CSV here");
  add_common(maxcut, ma.exec, ma.out);
  maxcut->callback([&] { rc = cmd_maxcut(ma); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace projopt::cli
