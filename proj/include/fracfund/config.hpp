#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "fracfund/cauchy.hpp"
#include "fracfund/problem.hpp"

namespace fracfund {

/// How the history w* on [t0, t*] is given in a run configuration.
struct HistorySpec {
  enum class Kind { Constant, Generator, Samples };
  Kind kind = Kind::Constant;
  Eigen::VectorXd w0;
  VectorFn phi;            ///< Caputo derivative, Generator only
  GridFn samples;          ///< Samples only
};

/// Parsed run configuration (JSON). Relative file paths resolve against the config's folder.
struct RunConfig {
  double alpha = 0.5;
  double t0 = 0.0;
  double theta = 1.0;
  Eigen::Index n = 1;
  double t_star = 0.0;
  MatrixFn A;
  VectorFn b;
  /// Set when A does not depend on t (presets zero, constant, rotation).
  std::optional<Eigen::MatrixXd> constant_A;
  HistorySpec history;

  int grid_N = 64;
  std::optional<Method> method;
  double picard_tol = 1e-10;
  double ml_tol = 1e-14;

  std::string out_fundamental;
  std::string out_solution;
  std::string out_report;

  static RunConfig parse(const std::string& text, const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);

  /// The Cauchy problem with its history sampled on the grid with `intervals` subintervals.
  CauchyProblem problem(int intervals) const;
  CauchyProblem problem() const { return problem(grid_N); }
};

}  // namespace fracfund
