// Command-line front end: fundamental matrix, Cauchy solutions, verification, Mittag-Leffler values.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "fracfund/cauchy.hpp"
#include "fracfund/config.hpp"
#include "fracfund/csv_io.hpp"
#include "fracfund/errors.hpp"
#include "fracfund/fundamental.hpp"
#include "fracfund/special_fn.hpp"
#include "fracfund/verify.hpp"

namespace {

using namespace fracfund;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kConfig = 2, kNumerical = 3, kPrecondition = 4 };

std::string pick_path(const std::string& flag, const std::string& from_config, const char* what) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  throw ConfigError(std::string("no output path for the ") + what + " (use --out/--report or the config's output section)");
}

int cmd_fundamental(const std::string& config_path, const std::string& out_flag) {
  const RunConfig cfg = RunConfig::load(config_path);
  const std::string out = pick_path(out_flag, cfg.out_fundamental, "fundamental matrix");
  const FundamentalField field = solve_F(cfg.problem(), TriangleGrid{cfg.t0, cfg.theta, cfg.grid_N});
  io::write_file(out, [&](std::ostream& os) { io::write_field(os, field); });
  return kOk;
}

int cmd_solve(const std::string& config_path, const std::string& method_flag, const std::string& out_flag) {
  const RunConfig cfg = RunConfig::load(config_path);
  const std::string out = pick_path(out_flag, cfg.out_solution, "solution");
  Method method;
  if (!method_flag.empty()) {
    method = method_from_string(method_flag);
  } else if (cfg.method) {
    method = *cfg.method;
  } else {
    throw ConfigError("no method given (use --method or the config's 'method')");
  }
  const CauchyProblem problem = cfg.problem();
  if (method == Method::ReprPC && problem.t_star != problem.t0) {
    throw PreconditionError("repr-pc needs t_star = t0; use repr-gc for an intermediate start");
  }

  Solution sol;
  if (method == Method::Direct) {
    sol = solve_direct(problem, cfg.grid_N);
  } else {
    const FundamentalField field = solve_F(problem, TriangleGrid{cfg.t0, cfg.theta, cfg.grid_N});
    switch (method) {
      case Method::ReprPC: sol = represent_pc(problem, field); break;
      case Method::ReprGC: sol = represent_gc(problem, field); break;
      default: sol = represent_gc_compact(problem, field); break;
    }
  }
  io::write_file(out, [&](std::ostream& os) { io::write_solution(os, sol); });
  io::write_file(out + ".meta.json", io::solution_metadata(sol));
  return kOk;
}

int cmd_verify(const std::string& config_path, const std::string& report_flag) {
  const RunConfig cfg = RunConfig::load(config_path);
  const std::string out = pick_path(report_flag, cfg.out_report, "report");
  const VerificationReport report = run_verification(cfg);
  io::write_file(out, report.to_json());
  for (const Check& c : report.checks) {
    if (c.pass) continue;
    if (!c.error.empty()) {
      std::cerr << "FAIL " << c.name << ": " << c.error << '\n';
    } else {
      std::cerr << "FAIL " << c.name << ": residual " << c.residual << " > " << c.threshold << '\n';
    }
  }
  return report.all_pass() ? kOk : kVerifyFailed;
}

int cmd_mlf(double alpha, double beta, double z) {
  MLParams params;
  params.alpha = alpha;
  params.beta = beta;
  try {
    params.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  std::printf("%.15g\n", mittag_leffler(params, z));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental matrix and representation formulas for linear Caputo equations"};
  app.require_subcommand(1);

  std::string config, out, method, report;
  double alpha = 0.0, beta = 0.0, z = 0.0;

  auto* fund = app.add_subcommand("fundamental", "Compute F(t, s) on the grid triangle and write it as CSV");
  fund->add_option("--config", config, "Run configuration (JSON)")->required();
  fund->add_option("--out", out, "Output CSV");

  auto* solve = app.add_subcommand("solve", "Solve the Cauchy problem and write x(t) as CSV");
  solve->add_option("--config", config, "Run configuration (JSON)")->required();
  solve->add_option("--method", method, "direct | repr-pc | repr-gc | repr-gc-compact");
  solve->add_option("--out", out, "Output CSV; metadata goes to <out>.meta.json");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite and write a JSON report");
  verify->add_option("--config", config, "Run configuration (JSON)")->required();
  verify->add_option("--report", report, "Report path");

  auto* mlf = app.add_subcommand("mlf", "Print E_{alpha,beta}(z)");
  mlf->add_option("--alpha", alpha)->required();
  mlf->add_option("--beta", beta)->required();
  mlf->add_option("--z", z)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*fund) return cmd_fundamental(config, out);
    if (*solve) return cmd_solve(config, method, out);
    if (*verify) return cmd_verify(config, report);
    return cmd_mlf(alpha, beta, z);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
}
