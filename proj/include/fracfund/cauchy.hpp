#pragma once

#include <string>

#include "fracfund/fundamental.hpp"
#include "fracfund/grid_fn.hpp"
#include "fracfund/problem.hpp"

namespace fracfund {

enum class Method { Direct, ReprPC, ReprGC, ReprGCCompact };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct SolveInfo {
  int intervals = 0;
  double wall_seconds = 0.0;
  /// Max-norm residual of the discrete integral equation on [t*, theta].
  double residual = 0.0;
};

struct Solution {
  GridFn x;
  Method method = Method::Direct;
  SolveInfo info;
};

/// Product-integration march of the integral equation on [t*, theta]. The history term over
/// [t0, t*] uses the Caputo derivative of w* (stored, or rebuilt by the L1 scheme).
Solution solve_direct(const CauchyProblem& problem, int intervals);

/// psi(t) = sin(alpha pi)/pi * int_{t0}^{t*} (t* - tau)^alpha phi(tau) / (t - tau) dtau on the
/// nodes of `target`, which must start at t* = phi.b(). Returns zero when t* = t0.
GridFn psi_star(const GridFn& phi, double alpha, const GridFn& target);

/// b*(t) = (psi(t) - psi(t*)) / (t - t*)^alpha + b(t) on psi's grid. At t = t* the first
/// subinterval's difference quotient is used.
GridFn b_star(const CauchyProblem& problem, const GridFn& psi);

/// Representation through F for t* = t0. Throws PreconditionError otherwise.
Solution represent_pc(const CauchyProblem& problem, const FundamentalField& field);

/// Representation through F and b* for any t* in [t0, theta).
Solution represent_gc(const CauchyProblem& problem, const FundamentalField& field);

/// Representation with the history entering through the hypersingular double integral.
/// The node t = t* is taken from the initial condition.
Solution represent_gc_compact(const CauchyProblem& problem, const FundamentalField& field);

/// Max-norm residual of x in the discrete integral equation on [t*, theta].
double integral_equation_residual(const CauchyProblem& problem, const GridFn& x);

/// LHS - RHS of  Id + int_{t*}^{t} F(t,tau) A(tau) (t-tau)^{alpha-1} dtau
///             = 1/Gamma(1-alpha) int_{t*}^{t} F(t,tau) (t-tau)^{alpha-1} (tau-t*)^{-alpha} dtau
/// at grid node i > star index.
Eigen::MatrixXd compact_identity_residual(const CauchyProblem& problem, const FundamentalField& field, int i);

}  // namespace fracfund
