#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ibnls/errors.hpp"
#include "ibnls/io.hpp"
#include "ibnls/virial.hpp"

namespace fs = std::filesystem;
using namespace ibnls;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 20240901;
};

SimConfig load_config(const GlobalArgs& args) {
  if (args.config_path.empty()) return SimConfig{};
  return sim_config_from_file(args.config_path);
}

std::string out_path(const GlobalArgs& args, const std::string& name) {
  fs::create_directories(args.out_dir);
  return (fs::path(args.out_dir) / name).string();
}

int cmd_ground_state(const GlobalArgs& args) {
  const SimConfig config = load_config(args);
  const ModelParams params = make_params(config.dim, config.b);
  GridPtr grid = RadialGrid::create(params, config.r_max, config.n);
  GroundStateResult gs = solve_ground_state(grid, config.gs);
  write_ground_state_csv(out_path(args, "ground_state.csv"), gs);
  const std::string json = ground_state_json(gs, params);
  write_text_file(out_path(args, "ground_state.json"), json);
  std::cout << json;
  return 0;
}

int cmd_evolve(const GlobalArgs& args, bool virial_terms) {
  const SimConfig config = load_config(args);
  TimeSeries series = evolve(config);
  BlowupVerdict verdict = detect_blowup(series, config.growth_factor);
  write_timeseries_csv(out_path(args, "run.csv"), series);
  if (virial_terms) {
    write_virial_terms_csv(out_path(args, "virial_terms.csv"), series);
  }
  const std::string json = run_summary_json(config, series, verdict);
  write_text_file(out_path(args, "summary.json"), json);
  std::cout << json;
  if (series.max_boundary_ratio > config.far_field_tol) {
    std::cerr << "warning: state reached " << series.max_boundary_ratio
              << " of its peak near r_max (far_field_tol " << config.far_field_tol << ")\n";
  }
  return 0;
}

int cmd_classify(const GlobalArgs& args) {
  const SimConfig config = load_config(args);
  const ModelParams params = make_params(config.dim, config.b);
  GridPtr grid = RadialGrid::create(params, config.r_max, config.n);
  GroundStateResult gs = solve_ground_state(grid, config.gs);
  RadialField u0 = build_initial_data(grid, config.data, &gs);
  Classification cls = classify(u0, gs, config.declared_radial);
  const std::string json = classification_json(cls);
  write_text_file(out_path(args, "classification.json"), json);
  std::cout << json;
  return 0;
}

int cmd_verify(const GlobalArgs& args) {
  // tabulate a representative cut-off for inspection alongside the checks
  {
    const SimConfig config = load_config(args);
    const ModelParams params = make_params(config.dim, config.b);
    GridPtr grid = RadialGrid::create(params, config.r_max, config.n);
    write_cutoff_csv(out_path(args, "cutoff.csv"), make_cutoff(grid, config.cutoff_radius));
  }
  std::vector<CheckResult> checks = run_verification(args.seed);
  bool all_pass = true;
  for (const auto& check : checks) {
    std::printf("%-42s %s  measured %.3e  vs  %.3e%s\n", check.name.c_str(), check.pass ? "PASS" : "FAIL",
                check.measured, check.threshold, check.detail.empty() ? "" : ("  (" + check.detail + ")").c_str());
    all_pass = all_pass && check.pass;
  }
  write_text_file(out_path(args, "verify.json"), verification_json(checks));
  std::printf("%s\n", all_pass ? "all checks passed" : "SOME CHECKS FAILED");
  return all_pass ? 0 : 2;
}

int cmd_ode_demo(const GlobalArgs& args, double A1, double C, double t1) {
  OdeBlowup ode = ode_blowup(A1, C, t1);
  std::ostringstream csv;
  csv << "t,A\n";
  for (const auto& [t, a] : ode.trajectory) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", t, a);
    csv << buf;
  }
  write_text_file(out_path(args, "ode_trajectory.csv"), csv.str());
  std::printf("t_star = %.17g (closed form), trajectory of %zu samples reached A = %.3e at t = %.17g\n", ode.t_star,
              ode.trajectory.size(), ode.trajectory.back().second, ode.trajectory.back().first);
  return 0;
}

int cmd_sweep(const GlobalArgs& args, const std::vector<std::string>& axes, int parallelism) {
  const SimConfig base = load_config(args);
  std::vector<SimConfig> configs = expand_sweep(base, axes);
  std::vector<SweepRow> rows = sweep(configs, parallelism);
  write_sweep_csv(out_path(args, "sweep.csv"), rows);
  write_text_file(out_path(args, "sweep.json"), sweep_json(rows));
  std::printf("index  regime                 termination       verdict                   growth    note/error\n");
  for (const auto& row : rows) {
    std::printf("%5zu  %-21s  %-16s  %-24s  %8.2f  %s%s\n", row.index, row.regime.c_str(), row.termination.c_str(),
                row.verdict.c_str(), row.growth, row.note.c_str(), row.error.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the energy-critical inhomogeneous biharmonic NLS in radial symmetry"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--config", args.config_path, "key = value configuration file");
  app.add_option("--out", args.out_dir, "output directory (created if missing)");
  app.add_option("--seed", args.seed, "seed for random-field ensembles");

  app.add_subcommand("ground-state", "solve the ground state and emit its profile and certified constants");
  auto* evolve_cmd = app.add_subcommand("evolve", "integrate the flow and emit the diagnostic time series");
  bool virial_terms = false;
  evolve_cmd->add_flag("--virial-terms", virial_terms, "also write the term-by-term virial breakdown CSV");
  app.add_subcommand("classify", "evaluate the blow-up hypothesis table for the configured initial data");
  app.add_subcommand("verify", "run the identity and inequality suites, print a pass/fail report");

  auto* ode = app.add_subcommand("ode-demo", "integrate the comparison ODE A' = C^4 A^4 and report the blow-up time");
  double ode_a1 = 1.0, ode_c = 1.0, ode_t1 = 0.0;
  ode->add_option("--a1", ode_a1, "initial value A(t1)");
  ode->add_option("--c", ode_c, "constant C");
  ode->add_option("--t1", ode_t1, "initial time");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a batch of configurations and tabulate the outcomes");
  std::vector<std::string> axes;
  int parallelism = 2;
  sweep_cmd->add_option("--vary", axes, "sweep axis key=v1,v2,... (repeatable, cartesian product)");
  sweep_cmd->add_option("--parallel", parallelism, "maximum concurrent runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help is a success; bad usage is a validation error
  }

  try {
    if (app.got_subcommand("ground-state")) return cmd_ground_state(args);
    if (app.got_subcommand("evolve")) return cmd_evolve(args, virial_terms);
    if (app.got_subcommand("classify")) return cmd_classify(args);
    if (app.got_subcommand("verify")) return cmd_verify(args);
    if (app.got_subcommand("ode-demo")) return cmd_ode_demo(args, ode_a1, ode_c, ode_t1);
    if (app.got_subcommand("sweep")) return cmd_sweep(args, axes, parallelism);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
