#pragma once
// Named-problem registry, run configuration, and the drivers behind the
// command-line tool: single solves, convergence studies against continuum
// references, and wall-clock benchmarks, all emitting CSV plus JSON summaries.

#include "sdutm/oracles.hpp"
#include "sdutm/problem.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sdutm {

// ---------------------------------------------------------------------------
// Problem registry

struct RegistryEntry {
  std::string name;
  std::string description;
  EquationKind equation = EquationKind::Heat;
  StencilKind stencil = StencilKind::CenteredO2;
  double c = 1.0;          // advection speed where relevant
  double L = 1.0;
  double default_T = 0.0;  // horizon used by the reference experiments
  double default_dt = 0.0; // reference finite-difference time step
};

// The five named IBVPs: advec-sech, heat-dirichlet, heat-neumann,
// ls-dirichlet, ls-neumann.
const std::vector<RegistryEntry>& registry();
bool is_registry_problem(const std::string& name);
const RegistryEntry& registry_entry(const std::string& name);

// Builds the named problem on a grid with N interior nodes.
ProblemSpec make_registry_problem(const std::string& name, int N);

// Continuum solution used as the convergence and benchmark reference.
// Expensive eigenfunction expansions are built once per process and cached.
const ExactSolution& registry_oracle(const std::string& name);

// ---------------------------------------------------------------------------
// Run configuration

struct RunConfig {
  std::string command;  // solve | converge | bench | validate
  std::string problem;  // registry name ("" when the config embeds a spec)
  bool has_inline_spec = false;
  ProblemSpec inline_spec;
  std::vector<std::string> solvers{"sdutm-series"};
  std::vector<int> Ns;        // interior-node counts; filled from hs if given
  std::vector<double> times;  // T sweep
  double dt = 0.0;            // finite-difference step; 0 -> registry default
  double tol = 1e-8;          // integral-solver quadrature tolerance
  int smalltime_order = 3;
  double target_error = 1e-2; // bench accuracy target E
  double band = 1e-4;         // bench |error - E| stopping band
  double nt_band = 0.0;       // bench N_t bisection relative early stop
  double cutoff_seconds = 1e3;
  int repeats = 10;           // bench timing repeats
  std::string out_csv;        // "" -> stdout
  std::string out_json;       // "" -> no summary file
};

// Parses a JSON config document / file.  Malformed input or an unknown
// problem name throws SolverError(InvalidArgument) whose message starts with
// a machine-readable token (e.g. "unknown-problem").
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Resolves the problem a config refers to on a given grid.
ProblemSpec make_config_problem(const RunConfig& cfg, int N);

// Runs one named solver: sdutm-series | sdutm-integral | fe | rk4 | be | tr |
// oracle (continuum reference sampled on the nodes).
SolutionField run_named_solver(const RunConfig& cfg, const std::string& solver,
                               const ProblemSpec& spec, double T);

// ---------------------------------------------------------------------------
// Results

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0; // rms deviation of log10(err) from the fitted line
};
SlopeFit fit_log_slope(const std::vector<double>& h, const std::vector<double>& err);

struct SolveRun {
  double T = 0.0;
  SolutionField field;
  double seconds = 0.0;
};
struct SolveResult {
  ProblemSpec spec;
  std::vector<SolveRun> runs;
};
SolveResult run_solve(const RunConfig& cfg);

struct ConvergePoint {
  std::string solver;
  double h = 0.0;
  int N = 0;
  double error = 0.0;
  double seconds = 0.0;
};
struct ConvergeResult {
  double T = 0.0;
  std::vector<ConvergePoint> points;
  std::vector<std::pair<std::string, SlopeFit>> slopes; // per solver, config order
};
ConvergeResult run_converge(const RunConfig& cfg);

struct BenchRow {
  double T = 0.0;
  std::string method;
  int Nx = 0;          // interior nodes of the grid used at this T
  long long Nt = 0;    // time steps (0 for methods that do not step); for
                       // status=timeout, the largest step count actually run,
                       // whose measured error still missed the target (so the
                       // required N_t certifiably exceeds it)
  double error = 0.0;  // achieved sup-norm error vs. the continuum reference
  double seconds = 0.0;
  std::string status;  // "ok" | "timeout"
};
struct BenchResult {
  std::vector<BenchRow> rows;
};
BenchResult run_bench(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Output

void write_solve_csv(const SolveResult& r, std::ostream& os);
void write_converge_csv(const ConvergeResult& r, std::ostream& os);
void write_bench_csv(const BenchResult& r, std::ostream& os);

std::string solve_summary_json(const RunConfig& cfg, const SolveResult& r);
std::string converge_summary_json(const RunConfig& cfg, const ConvergeResult& r);
std::string bench_summary_json(const RunConfig& cfg, const BenchResult& r);

// Runs the configured command end to end, writing CSV to out_csv (or `out`)
// and the summary JSON to out_json.  Returns the process exit status:
// 0 success, 1 numerical failure, 2 configuration error.  Failures emit a
// JSON error object {"error": {"code", "message"}} on `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace sdutm
