// Shared plumbing for the command-line tool: argument parsing helpers, JSON
// report builders, and the CSV emitters.  Kept in a library so the pieces are
// unit-testable without spawning processes.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "projopt/ascent.hpp"
#include "projopt/linopt.hpp"
#include "projopt/maxcut.hpp"
#include "projopt/ncm.hpp"
#include "projopt/parallel.hpp"
#include "projopt/sets.hpp"
#include "projopt/vec.hpp"

namespace projopt::cli {

using json = nlohmann::ordered_json;

/// "serial" | "parallel" | "auto".
Exec parse_exec(const std::string& s);

/// Comma-separated reals: "1,2.5,-3e-2".
Vector parse_vector_arg(const std::string& s);

/// Inline comma vector, or "@path" naming a file of whitespace- or
/// comma-separated reals.
Vector load_point_arg(const std::string& s);

/// Colon set grammar, or "@path" naming a JSON file with a "kind" field and
/// the matching parameters (lower/upper, center/radius, n, radius).
ConvexSetSpec load_set_arg(const std::string& s);

/// "linear:c1,..." | "half_squared_norm" | "maxlin:c11,..;c21,..:b1,b2".
SubgradientOracle parse_oracle_arg(const std::string& s);

json vector_json(const Vector& v);
json matrix_json(const SymMatrix& m);

/// Report builders.  Every report isolates wall time in a trailing "timing"
/// object so that identical configurations produce byte-identical output
/// everywhere else.
json project_json(const ConvexSetSpec& set, const Vector& point,
                  const Vector& x, double residual);
json linopt_json(const ConvexSetSpec& set, const Vector& c, const Vector& x0,
                 const LinOptResult& r);
json ascent_json(const ConvexSetSpec& set, const std::string& oracle_name,
                 const IterateTrace& trace, const StationarityReport& rep,
                 double gap_tol);
json ncm_json(const std::string& input, const std::string& solver, double tol,
              const NcmResult& r);
json maxcut_json(const std::string& instance, const MaxCutReport& r);
void add_timing(json& j, double wall_time_s);

/// CSV with header eta,objective[,distance]; the distance column appears when
/// the sweep has reference distances.
std::string sweep_csv(const EtaSweep& sweep);

/// CSV with header trial,cut.
std::string trials_csv(const Vector& trial_values);

std::string bench_csv_header();
std::string bench_csv_row(const std::string& instance, const MaxCutReport& r);

/// Writes payload to the path, or to stdout when path is "-".
void write_text(const std::string& path, const std::string& payload);

/// PROJOPT_GSET_CACHE, else ~/.cache/projopt/gset, else ./gset_cache.
std::string default_cache_dir();

/// Full command dispatch; returns the process exit code (0 success, 2 usage
/// or validation, 3 file or network, 4 numeric non-convergence).
int run_main(int argc, const char* const* argv);

}  // namespace projopt::cli
