#pragma once

#include <string>
#include <vector>

#include "fracfund/config.hpp"
#include "fracfund/fundamental.hpp"
#include "fracfund/grid_fn.hpp"

namespace fracfund {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Set when the check could not be evaluated; the check then fails.
  std::string error;
};

struct VerificationReport {
  std::vector<Check> checks;

  void add(std::string name, double residual, double threshold);
  void add_error(std::string name, double threshold, std::string message);
  bool all_pass() const;
  /// {"all_pass": ..., "checks": [{name, residual, threshold, pass}, ...]}; a check that could not
  /// be evaluated has residual null and an "error" field.
  std::string to_json() const;
};

/// Slack applied to every a-priori inequality to absorb discretization error.
inline constexpr double kBoundSlack = 1.05;

/// Bound checks report the worst excess  lhs - slack * rhs, which must not exceed this.
inline constexpr double kExcessTol = 1e-12;

/// Worst excess of ||f(t1) - f(t2)|| over slack * C |t1 - t2|^alpha. Pairs: every node against a
/// strided subset of about 64 nodes, plus all neighbours.
double holder_excess(const GridFn& f, double constant, double alpha, double slack = kBoundSlack);

/// Worst excess of ||F(t1,s1) - F(t2,s2)|| over slack * H (|t1-t2|^alpha + |s1-s2|^alpha) on a
/// strided sub-triangle (all pairs) and on all neighbouring nodes.
double field_holder_excess(const FundamentalField& field, double constant, double slack = kBoundSlack);

/// Worst excess of ||(R phi)(t)|| over slack * M_R max_{[a,t]} ||phi|| (left side).
double r_bound_excess(const GridFn& phi, double alpha, double slack = kBoundSlack);

/// Worst excess of ||(J phi)(t)|| over slack * (M_J / Gamma(alpha)) int (t-tau)^{alpha-1} max_{[a,tau]}||phi|| dtau.
double j_bound_excess(const GridFn& phi, double alpha, double slack = kBoundSlack);

/// Max-norm of I^alpha(D^alpha x) - (x - x(a)) for x(t) = (t - a)^2.
double caputo_roundtrip_residual(double alpha, double a, double b, int intervals);

/// Max-norm of J phi - I^alpha(phi + R phi) for phi(t) = cos(3t).
double j_identity_residual(double alpha, double a, double b, int intervals);

/// Operator identities and bounds on [a, b] at the given resolution.
void add_operator_checks(VerificationReport& report, double alpha, double a, double b, int intervals);

/// Full invariant suite for a configured problem.
VerificationReport run_verification(const RunConfig& config);

}  // namespace fracfund
