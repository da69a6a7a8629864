// Command-line front end: solve | converge | bench | validate.  Flags are
// merged over an optional JSON config file and share its semantics exactly,
// because both paths funnel through the same config parser.

#include "sdutm/harness.hpp"
#include "sdutm/types.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

void emit_error(const std::string& code, const std::string& message) {
  ordered_json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump(2) << '\n';
}

std::string token_of(const sdutm::SolverError& e) {
  const std::string msg = e.what();
  const size_t colon = msg.find(':');
  if (colon != std::string::npos && colon > 0) {
    const std::string head = msg.substr(0, colon);
    bool tokenish = true;
    for (char ch : head)
      tokenish = tokenish && ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '-');
    if (tokenish) return head;
  }
  return sdutm::error_code_name(e.code());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semidiscrete unified transform method: solvers, convergence "
               "studies, and time-stepping benchmarks on a finite interval"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", "sdutm 1.0.0");

  std::string config_path, problem, out_path, json_path;
  std::vector<std::string> solvers;
  std::vector<long long> Ns;
  std::vector<double> hs, times;
  double dt = 0.0, tol = 0.0, target_error = 0.0, band = 0.0, cutoff = 0.0;
  int smalltime_order = 0, repeats = 0;

  auto* o_config = app.add_option("-c,--config", config_path, "JSON run configuration");
  auto* o_problem =
      app.add_option("-p,--problem", problem, "registry problem name");
  auto* o_solver = app.add_option(
      "-s,--solver", solvers,
      "solver: sdutm-series | sdutm-integral | fe | rk4 | be | tr | oracle");
  auto* o_N = app.add_option("-N,--N", Ns, "interior node counts");
  auto* o_h = app.add_option("--h", hs, "grid spacings (must divide L)");
  auto* o_T = app.add_option("-T,--T", times, "evaluation times");
  auto* o_dt = app.add_option("--dt", dt, "finite-difference time step");
  auto* o_tol = app.add_option("--tol", tol, "integral-solver tolerance");
  auto* o_order =
      app.add_option("--smalltime-order", smalltime_order, "small-time expansion order");
  auto* o_E = app.add_option("--target-error", target_error, "benchmark accuracy target");
  auto* o_band = app.add_option("--band", band, "benchmark grid-search stopping band");
  auto* o_cutoff =
      app.add_option("--cutoff", cutoff, "benchmark per-run wall-clock cutoff, seconds");
  auto* o_repeats = app.add_option("--repeats", repeats, "timing repetitions to average");
  auto* o_out = app.add_option("-o,--out", out_path, "CSV output path (default stdout)");
  auto* o_json = app.add_option("--json", json_path, "summary JSON output path");

  CLI::App* sub_solve = app.add_subcommand("solve", "evaluate one solver on one grid");
  CLI::App* sub_converge =
      app.add_subcommand("converge", "grid-refinement errors against the continuum solution");
  CLI::App* sub_bench =
      app.add_subcommand("bench", "cost to reach a fixed accuracy as the horizon grows");
  CLI::App* sub_validate =
      app.add_subcommand("validate", "check an equation/stencil discretization pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ordered_json j = ordered_json::object();
    if (o_config->count() > 0) {
      std::ifstream f(config_path);
      if (!f.good())
        sdutm::fail(sdutm::ErrorCode::ConfigError,
                    "bad-config: cannot read '" + config_path + "'");
      std::ostringstream ss;
      ss << f.rdbuf();
      j = ordered_json::parse(ss.str(), nullptr, false);
      if (j.is_discarded())
        sdutm::fail(sdutm::ErrorCode::ConfigError,
                    "bad-config: '" + config_path + "' is not valid JSON");
    }

    if (sub_solve->parsed()) j["command"] = "solve";
    if (sub_converge->parsed()) j["command"] = "converge";
    if (sub_bench->parsed()) j["command"] = "bench";
    if (sub_validate->parsed()) j["command"] = "validate";

    if (o_problem->count() > 0) j["problem"] = problem;
    if (o_solver->count() > 0) j["solvers"] = solvers;
    if (o_N->count() > 0) j["N"] = Ns;
    if (o_h->count() > 0) j["h"] = hs;
    if (o_T->count() > 0) j["T"] = times;
    if (o_dt->count() > 0) j["dt"] = dt;
    if (o_tol->count() > 0) j["tol"] = tol;
    if (o_order->count() > 0) j["smalltime_order"] = smalltime_order;
    if (o_E->count() > 0) j["target_error"] = target_error;
    if (o_band->count() > 0) j["band"] = band;
    if (o_cutoff->count() > 0) j["cutoff_seconds"] = cutoff;
    if (o_repeats->count() > 0) j["repeats"] = repeats;
    if (o_out->count() > 0) {
      if (sub_validate->parsed() && o_json->count() == 0)
        j["out_json"] = out_path;
      else
        j["out_csv"] = out_path;
    }
    if (o_json->count() > 0) j["out_json"] = json_path;

    const sdutm::RunConfig cfg = sdutm::parse_config(j.dump());
    return sdutm::run_command(cfg, std::cout, std::cerr);
  } catch (const sdutm::SolverError& e) {
    emit_error(token_of(e), e.what());
    return e.code() == sdutm::ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    emit_error("internal-error", e.what());
    return 1;
  }
}
