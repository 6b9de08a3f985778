#include "cli_support.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "projopt/errors.hpp"
#include "projopt/matrix_io.hpp"

namespace projopt::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_num(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": cannot parse number \"" + s +
                          "\"");
  }
  if (used != s.size())
    throw ValidationError(std::string(what) + ": trailing characters in \"" +
                          s + "\"");
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Vector json_to_vector(const json& j, const char* what) {
  if (!j.is_array())
    throw ValidationError(std::string(what) + " must be an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number())
      throw ValidationError(std::string(what) +
                            " must be an array of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

}  // namespace

Exec parse_exec(const std::string& s) {
  if (s == "serial") return Exec::Serial;
  if (s == "parallel") return Exec::Parallel;
  if (s == "auto") return Exec::Auto;
  throw ValidationError("unknown execution mode \"" + s +
                        "\" (expected serial, parallel, or auto)");
}

Vector parse_vector_arg(const std::string& s) {
  Vector v;
  for (const auto& part : split(s, ',')) v.push_back(parse_num(part, "vector"));
  return v;
}

Vector load_point_arg(const std::string& s) {
  if (s.empty()) throw ValidationError("empty point argument");
  if (s[0] != '@') return parse_vector_arg(s);
  std::istringstream in(slurp(s.substr(1)));
  Vector v;
  std::string tok;
  while (in >> tok) {
    // Commas are token separators too, so inline and file syntax agree.
    for (const auto& part : split(tok, ','))
      if (!part.empty()) v.push_back(parse_num(part, "point file"));
  }
  if (v.empty()) throw ValidationError("point file holds no numbers");
  return v;
}

ConvexSetSpec load_set_arg(const std::string& s) {
  if (s.empty()) throw ValidationError("empty set argument");
  if (s[0] != '@') return parse_set_spec(s);
  const std::string path = s.substr(1);
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ParseError("set file " + path + ": " + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "box")
      return ConvexSetSpec::box(json_to_vector(j.at("lower"), "lower"),
                                json_to_vector(j.at("upper"), "upper"));
    if (kind == "ball")
      return ConvexSetSpec::ball(json_to_vector(j.at("center"), "center"),
                                 j.at("radius").get<double>());
    if (kind == "simplex") return ConvexSetSpec::simplex(j.at("n").get<int>());
    if (kind == "l1ball")
      return ConvexSetSpec::l1ball(j.at("n").get<int>(),
                                   j.at("radius").get<double>());
    if (kind == "elliptope")
      return ConvexSetSpec::elliptope(j.at("n").get<int>());
    throw ValidationError("unknown set kind \"" + kind + "\" in " + path);
  } catch (const json::exception& e) {
    throw ValidationError("set file " + path + ": " + e.what());
  }
}

SubgradientOracle parse_oracle_arg(const std::string& s) {
  if (s == "half_squared_norm") return SubgradientOracle::half_squared_norm();
  if (s.rfind("linear:", 0) == 0)
    return SubgradientOracle::linear(parse_vector_arg(s.substr(7)));
  if (s.rfind("maxlin:", 0) == 0) {
    const auto parts = split(s.substr(7), ':');
    if (parts.size() > 2)
      throw ValidationError(
          "maxlin spec needs maxlin:c1;c2;...[:b1,b2,...]");
    std::vector<Vector> cs;
    for (const auto& piece : split(parts[0], ';'))
      cs.push_back(parse_vector_arg(piece));
    Vector bs = parts.size() == 2 ? parse_vector_arg(parts[1])
                                  : Vector(cs.size(), 0.0);
    return SubgradientOracle::max_of_linear(std::move(cs), std::move(bs));
  }
  throw ValidationError(
      "unknown oracle \"" + s +
      "\" (expected linear:c1,..., half_squared_norm, or "
      "maxlin:c1;c2;...[:b1,b2,...])");
}

json vector_json(const Vector& v) { return json(v); }

json matrix_json(const SymMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json project_json(const ConvexSetSpec& set, const Vector& point,
                  const Vector& x, double residual) {
  json j;
  j["command"] = "project";
  j["set"] = set.describe();
  j["point"] = vector_json(point);
  j["x"] = vector_json(x);
  j["residual"] = residual;
  return j;
}

json linopt_json(const ConvexSetSpec& set, const Vector& c, const Vector& x0,
                 const LinOptResult& r) {
  json j;
  j["command"] = "linopt";
  j["set"] = set.describe();
  j["c"] = vector_json(c);
  j["x0"] = vector_json(x0);
  j["eta"] = r.eta;
  j["x"] = vector_json(r.x_eta);
  j["objective"] = r.objective;
  j["gap_bound"] = r.gap_bound;
  j["used_reference_bound"] = r.used_reference_bound;
  if (r.diam_bound) j["diam_bound"] = *r.diam_bound;
  if (r.exact_gap) j["exact_gap"] = *r.exact_gap;
  return j;
}

json ascent_json(const ConvexSetSpec& set, const std::string& oracle_name,
                 const IterateTrace& trace, const StationarityReport& rep,
                 double gap_tol) {
  json j;
  j["command"] = "ascent";
  j["engine"] = trace.engine;
  j["set"] = set.describe();
  j["oracle"] = oracle_name;
  j["iterations"] = trace.records.size();
  j["terminated_reason"] = to_string(trace.terminated_reason);
  j["stationary_at_zero"] = trace.stationary_at_zero;
  j["f_final"] = trace.f_final;
  j["x_final"] = vector_json(trace.x_final);
  json records = json::array();
  for (const auto& r : trace.records) {
    json rec;
    rec["k"] = r.k;
    rec["f"] = r.f;
    rec["step_norm"] = r.step_norm;
    rec["eta"] = r.eta;
    rec["fw_gap"] = r.fw_gap;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  json st;
  st["gap_tol"] = gap_tol;
  st["fw_gap"] = rep.fw_gap;
  st["feasibility_residual"] = rep.feasibility_residual;
  st["recent_step_norm"] = rep.recent_step_norm;
  st["certified"] = rep.certified;
  j["stationarity"] = std::move(st);
  return j;
}

json ncm_json(const std::string& input, const std::string& solver, double tol,
              const NcmResult& r) {
  json j;
  j["command"] = "ncm";
  j["input"] = input;
  j["solver"] = solver;
  j["tol"] = tol;
  j["n"] = r.x.n();
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["prescale"] = r.prescale;
  if (r.dual_y) j["dual_y"] = vector_json(*r.dual_y);
  j["matrix"] = matrix_json(r.x);
  return j;
}

json maxcut_json(const std::string& instance, const MaxCutReport& r) {
  json j;
  j["command"] = "maxcut";
  j["instance"] = instance;
  j["n"] = r.n;
  j["eta"] = r.eta;
  j["solver"] = to_string(r.solver);
  j["repair"] = to_string(r.repair);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["sdp_objective"] = r.sdp_objective;
  j["gap_bound"] = r.gap_bound;
  j["solver_converged"] = r.solver_converged;
  j["solver_iterations"] = r.solver_iterations;
  j["best_cut"] = r.best_cut;
  j["mean_cut"] = r.mean_cut;
  j["best_side"] = json(r.best_side);
  if (r.brute_force_value) j["brute_force_value"] = *r.brute_force_value;
  if (r.ratio_vs_optimum) j["ratio_vs_optimum"] = *r.ratio_vs_optimum;
  return j;
}

void add_timing(json& j, double wall_time_s) {
  json t;
  t["wall_time_s"] = wall_time_s;
  j["timing"] = std::move(t);
}

std::string sweep_csv(const EtaSweep& sweep) {
  const bool with_dist = sweep.distances_to_ref.has_value();
  std::string out = with_dist ? "eta,objective,distance\n" : "eta,objective\n";
  for (std::size_t i = 0; i < sweep.etas.size(); ++i) {
    out += fmt(sweep.etas[i]);
    out += ',';
    out += fmt(sweep.objectives[i]);
    if (with_dist) {
      out += ',';
      out += fmt((*sweep.distances_to_ref)[i]);
    }
    out += '\n';
  }
  return out;
}

std::string trials_csv(const Vector& trial_values) {
  std::string out = "trial,cut\n";
  for (std::size_t i = 0; i < trial_values.size(); ++i)
    out += std::to_string(i) + "," + fmt(trial_values[i]) + "\n";
  return out;
}

std::string bench_csv_header() {
  return "instance,runtime_s,sdp_objective,best_cut,mean_cut\n";
}

std::string bench_csv_row(const std::string& instance, const MaxCutReport& r) {
  char runtime[32];
  std::snprintf(runtime, sizeof(runtime), "%.3f", r.wall_time_s);
  return instance + "," + runtime + "," + fmt(r.sdp_objective) + "," +
         fmt(r.best_cut) + "," + fmt(r.mean_cut) + "\n";
}

void write_text(const std::string& path, const std::string& payload) {
  if (path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << payload;
  if (!out) throw IoError("short write to " + path);
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("PROJOPT_GSET_CACHE")) return env;
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.cache/projopt/gset";
  return "gset_cache";
}

}  // namespace projopt::cli
