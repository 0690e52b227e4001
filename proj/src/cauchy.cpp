#include "fracfund/cauchy.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "fracfund/errors.hpp"
#include "fracfund/frac_ops.hpp"
#include "fracfund/parallel.hpp"
#include "fracfund/quadrature.hpp"
#include "fracfund/special_fn.hpp"

namespace fracfund {
namespace {

bool close(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Value of the piecewise-linear phi at tau inside subinterval [node(s), node(s+1)].
Eigen::VectorXd lerp(const GridFn& f, int s, double tau) {
  const double u = (tau - f.node(s)) / f.step();
  return (1.0 - u) * f[static_cast<std::size_t>(s)] + u * f[static_cast<std::size_t>(s + 1)];
}

std::vector<Eigen::VectorXd> sample_forcing(const CauchyProblem& p, int intervals, int first) {
  const double h = (p.theta - p.t0) / intervals;
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(intervals + 1));
  for (int i = first; i <= intervals; ++i) {
    const double t = i == intervals ? p.theta : p.t0 + i * h;
    out[static_cast<std::size_t>(i)] = p.b(t);
    if (out[static_cast<std::size_t>(i)].size() != p.n) throw DomainError("forcing b(t) has the wrong size");
  }
  return out;
}

std::vector<Eigen::MatrixXd> sample_matrix(const CauchyProblem& p, int intervals, int first) {
  const double h = (p.theta - p.t0) / intervals;
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(intervals + 1));
  for (int i = first; i <= intervals; ++i) {
    const double t = i == intervals ? p.theta : p.t0 + i * h;
    out[static_cast<std::size_t>(i)] = p.A(t);
    if (out[static_cast<std::size_t>(i)].rows() != p.n || out[static_cast<std::size_t>(i)].cols() != p.n) {
      throw DomainError("coefficient A(t) has the wrong shape");
    }
  }
  return out;
}

void check_history_grid(const CauchyProblem& p, int star) {
  if (star > 0 && p.history.w.intervals() != star) {
    throw GridError("history must be sampled on the solver grid: expected " + std::to_string(star) +
                    " subintervals on [t0, t*], got " + std::to_string(p.history.w.intervals()));
  }
}

// w0 + (1/Gamma(alpha)) int_{t0}^{t*} phi(tau) (t_i - tau)^{alpha-1} dtau for i >= star.
std::vector<Eigen::VectorXd> history_term(const CauchyProblem& p, int intervals, int star,
                                          const RiemannWeights& rw) {
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(intervals + 1));
  const Eigen::VectorXd w0 = p.history.start();
  if (star == 0) {
    for (int i = 0; i <= intervals; ++i) out[static_cast<std::size_t>(i)] = w0;
    return out;
  }
  const GridFn phi = p.history.caputo_derivative(p.alpha);
  parallel_for(static_cast<std::size_t>(intervals - star + 1), [&](std::size_t idx) {
    const int i = star + static_cast<int>(idx);
    Eigen::VectorXd acc = w0;
    for (int k = 0; k < star; ++k) {
      acc += rw.falling(i, k) * phi[static_cast<std::size_t>(k)] +
             rw.rising(i, k) * phi[static_cast<std::size_t>(k + 1)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  });
  return out;
}

void check_field(const CauchyProblem& p, const FundamentalField& field) {
  const TriangleGrid& g = field.grid();
  if (!close(g.t0, p.t0) || !close(g.theta, p.theta)) {
    throw GridError("fundamental field was computed on a different interval");
  }
  if (field.dim() != p.n) throw GridError("fundamental field has the wrong dimension");
  if (!close(field.alpha(), p.alpha)) throw DomainError("fundamental field was computed for another alpha");
}

// b* on the nodes t*, ..., theta through psi and its difference quotient.
std::vector<Eigen::VectorXd> forcing_with_history(const CauchyProblem& p, int intervals, int star) {
  const GridFn phi = p.history.caputo_derivative(p.alpha);
  const double ts = p.t0 + star * (p.theta - p.t0) / intervals;
  const GridFn target = GridFn::zeros(ts, p.theta, intervals - star, p.n, 1);
  const GridFn bs = b_star(p, psi_star(phi, p.alpha, target));
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(intervals + 1));
  for (std::size_t l = 0; l < bs.size(); ++l) out[static_cast<std::size_t>(star) + l] = bs[l];
  return out;
}

// (alpha / Gamma(1-alpha)) (tau_l - t*)^alpha int_{t0}^{t*} (w(xi) - w(t0)) (tau_l - xi)^{-1-alpha} dxi,
// which tends to (w(t*) - w(t0)) / Gamma(1-alpha) as tau_l -> t*.
std::vector<Eigen::VectorXd> scaled_history_integral(const CauchyProblem& p, int intervals, int star) {
  const GridFn& w = p.history.w;
  const double h = (p.theta - p.t0) / intervals;
  const double ts = w.b();
  const double alpha = p.alpha;
  const Eigen::VectorXd w0 = w[0];
  const quad::UnitRule r32 = quad::gauss_legendre_unit(32);
  const quad::UnitRule r16 = quad::gauss_legendre_unit(16);
  const quad::UnitRule r8 = quad::gauss_legendre_unit(8);
  const double factor = alpha / gamma(1.0 - alpha);
  const int m_hist = w.intervals();

  std::vector<Eigen::VectorXd> d(static_cast<std::size_t>(intervals - star + 1));
  d[0] = (w[w.size() - 1] - w0) / gamma(1.0 - alpha);
  parallel_for(d.size() - 1, [&](std::size_t idx) {
    const int l = static_cast<int>(idx) + 1;
    const double tau = ts + l * h;
    Eigen::VectorXd inner = Eigen::VectorXd::Zero(p.n);
    for (int s = 0; s < m_hist; ++s) {
      const quad::UnitRule& rule = s == m_hist - 1 ? r32 : (s == m_hist - 2 ? r16 : r8);
      inner += quad::integrate(rule, w.node(s), w.node(s + 1), [&](double xi) -> Eigen::VectorXd {
        return (lerp(w, s, xi) - w0) * std::pow(tau - xi, -1.0 - alpha);
      });
    }
    d[static_cast<std::size_t>(l)] = factor * std::pow(l * h, alpha) * inner;
  });
  return d;
}

enum class Correction { None, Psi, Compact };

// int_{t*}^{t_i} F(t_i, tau) (t_i - tau)^{alpha-1} (tau - t*)^{-alpha} dtau on the nodes star..i.
// Near the diagonal F(t, tau) - F(t, t) ~ A(t) (t - tau)^alpha / Gamma(2 alpha). A piecewise-linear
// F misses that by O(h^alpha) against a weight whose mass stays O(1) next to t*, so the smooth
// quotient Q = (F(t, tau) - F(t, t)) / (t - tau)^alpha is interpolated instead.
class DoublyWeightedF {
 public:
  DoublyWeightedF(double alpha, double h, int max_m)
      : alpha_(alpha),
        h_(h),
        full_(beta_fn(alpha, 1.0 - alpha)),
        diag_(1.0 / gamma(2.0 * alpha)),
        table_(-alpha, 2.0 * alpha - 1.0, max_m) {}

  Eigen::MatrixXd operator()(const FundamentalField& field, int star, int i, const Eigen::MatrixXd& a_i) const {
    const int m = i - star;
    const auto f_ii = field(i, i);
    Eigen::MatrixXd q_sum = table_(m, m) * diag_ * a_i;
    for (int l = 0; l < m; ++l) {
      const double gap = std::pow((m - l) * h_, alpha_);
      q_sum.noalias() += table_(m, l) / gap * (field(i, star + l) - f_ii);
    }
    return full_ * f_ii + std::pow(h_, alpha_) * q_sum;
  }

 private:
  double alpha_;
  double h_;
  double full_;  // int (t - tau)^{alpha-1} (tau - t*)^{-alpha} dtau = B(alpha, 1 - alpha)
  double diag_;
  quad::HatMomentTable table_;
};

GridFn represent(const CauchyProblem& p, const FundamentalField& field, Correction corr) {
  p.validate();
  check_field(p, field);
  const int N = field.grid().N;
  const int star = p.star_index(N);
  check_history_grid(p, star);
  const double h = field.grid().step();
  const std::vector<Eigen::MatrixXd> a = sample_matrix(p, N, star);
  std::vector<Eigen::VectorXd> b = sample_forcing(p, N, star);
  const RiemannWeights rw(p.alpha, h, N - star);
  const double g = gamma(p.alpha);
  const Eigen::Index n = p.n;

  // The history enters as extra forcing that is bounded near t*. The compact form also keeps
  // the (tau - t*)^{-alpha} part with constant coefficient d0, integrated with both weights.
  Eigen::VectorXd d0;
  std::unique_ptr<DoublyWeightedF> split;
  if (corr == Correction::Psi && star > 0) {
    b = forcing_with_history(p, N, star);
  } else if (corr == Correction::Compact && star > 0) {
    const std::vector<Eigen::VectorXd> d = scaled_history_integral(p, N, star);
    d0 = d[0];
    for (std::size_t l = 1; l < d.size(); ++l) {
      b[static_cast<std::size_t>(star) + l] += (d[l] - d0) / std::pow(static_cast<double>(l) * h, p.alpha);
    }
    // One-sided value at t*, as for b*.
    b[static_cast<std::size_t>(star)] += (d[1] - d0) / std::pow(h, p.alpha);
    split = std::make_unique<DoublyWeightedF>(p.alpha, h, N - star);
  }
  const Eigen::VectorXd start = corr == Correction::Compact ? p.history.start() : p.history.end();

  std::vector<Eigen::MatrixXd> x(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= star; ++i) {
    x[static_cast<std::size_t>(i)] = p.history.w[static_cast<std::size_t>(i)];
  }
  parallel_for(static_cast<std::size_t>(N - star), [&](std::size_t idx) {
    const int i = star + 1 + static_cast<int>(idx);
    const int m = i - star;
    Eigen::MatrixXd ia = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd ib = Eigen::VectorXd::Zero(n);
    for (int l = 0; l <= m; ++l) {
      const int k = star + l;
      const auto f = field(i, k);
      const double w = g * rw(m, l);
      ia.noalias() += w * (f * a[static_cast<std::size_t>(k)]);
      ib.noalias() += w * (f * b[static_cast<std::size_t>(k)]);
    }
    ia += Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd xi = ia * start + ib;
    if (split) xi += (*split)(field, star, i, a[static_cast<std::size_t>(i)]) * d0;
    x[static_cast<std::size_t>(i)] = xi;
  });
  return GridFn(p.t0, p.theta, N, std::move(x));
}

Solution finish(const CauchyProblem& p, GridFn x, Method m, std::chrono::steady_clock::time_point t0) {
  Solution s{std::move(x), m, {}};
  s.info.intervals = s.x.intervals();
  s.info.residual = integral_equation_residual(p, s.x);
  s.info.wall_seconds = seconds_since(t0);
  return s;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::ReprPC: return "repr-pc";
    case Method::ReprGC: return "repr-gc";
    case Method::ReprGCCompact: return "repr-gc-compact";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "direct") return Method::Direct;
  if (name == "repr-pc") return Method::ReprPC;
  if (name == "repr-gc") return Method::ReprGC;
  if (name == "repr-gc-compact") return Method::ReprGCCompact;
  throw ConfigError("unknown method '" + name + "' (expected direct, repr-pc, repr-gc or repr-gc-compact)");
}

History History::from_generator(const Eigen::VectorXd& w0, const GridFn& phi, double alpha) {
  if (phi.rows() != w0.size() || !phi.is_vector()) throw GridError("history generator shape mismatch");
  History h;
  if (phi.intervals() == 0) {
    h.w = GridFn(phi.a(), phi.b(), 0, {w0});
  } else {
    h.w = fractional_integral(phi, alpha, Side::Left);
    for (std::size_t i = 0; i < h.w.size(); ++i) h.w[i] += w0;
  }
  h.caputo = phi;
  return h;
}

History History::constant(const Eigen::VectorXd& w0, double t0, double t_star, int intervals) {
  if (t_star == t0) intervals = 0;
  History h;
  h.w = GridFn(t0, t_star, intervals, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(intervals) + 1, w0));
  h.caputo = GridFn::zeros(t0, t_star, intervals, w0.size(), 1);
  return h;
}

History History::from_samples(GridFn w) {
  if (!w.is_vector()) throw GridError("history samples must be vectors");
  History h;
  h.w = std::move(w);
  return h;
}

GridFn History::caputo_derivative(double alpha) const {
  if (caputo) return *caputo;
  if (w.intervals() == 0) return GridFn::zeros(w.a(), w.b(), 0, w.rows(), 1);
  return fracfund::caputo_derivative(w, alpha);
}

void CauchyProblem::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(theta > t0)) throw DomainError("need theta > t0");
  if (!(t_star >= t0 && t_star < theta)) throw DomainError("need t0 <= t_star < theta");
  if (n < 1) throw DomainError("dimension n must be positive");
  if (!A || !b) throw DomainError("coefficient A and forcing b must be set");
  if (!close(history.t0(), t0) || !close(history.t_star(), t_star)) {
    throw GridError("history must be given on exactly [t0, t_star]");
  }
  if (history.w.rows() != n || !history.w.is_vector()) throw GridError("history has the wrong dimension");
  if (t_star > t0 && !history.caputo && history.w.size() < 2) {
    throw ConfigError("history needs its Caputo derivative or at least two samples");
  }
  if (history.caputo && !history.caputo->same_grid(history.w)) {
    throw GridError("history Caputo derivative must share the history grid");
  }
}

int CauchyProblem::star_index(int intervals) const {
  if (intervals < 1) throw GridError("need at least one subinterval");
  const double h = (theta - t0) / intervals;
  const double k = std::round((t_star - t0) / h);
  if (std::abs(t0 + k * h - t_star) > 1e-9 * std::max(1.0, std::abs(t_star)) || k >= intervals) {
    throw GridError("t_star = " + std::to_string(t_star) + " is not a node of the grid with N = " +
                    std::to_string(intervals));
  }
  return static_cast<int>(k);
}

Solution solve_direct(const CauchyProblem& problem, int intervals) {
  const auto clock = std::chrono::steady_clock::now();
  problem.validate();
  const int N = intervals;
  const int star = problem.star_index(N);
  check_history_grid(problem, star);
  const double h = (problem.theta - problem.t0) / N;
  const RiemannWeights rw(problem.alpha, h, N);
  const std::vector<Eigen::MatrixXd> a = sample_matrix(problem, N, star);
  const std::vector<Eigen::VectorXd> b = sample_forcing(problem, N, star);
  const std::vector<Eigen::VectorXd> hist = history_term(problem, N, star, rw);
  const Eigen::Index n = problem.n;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  std::vector<Eigen::MatrixXd> x(static_cast<std::size_t>(N + 1));
  std::vector<Eigen::VectorXd> g(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= star; ++i) {
    x[static_cast<std::size_t>(i)] = problem.history.w[static_cast<std::size_t>(i)];
  }
  g[static_cast<std::size_t>(star)] = a[static_cast<std::size_t>(star)] * x[static_cast<std::size_t>(star)] +
                                      b[static_cast<std::size_t>(star)];
  for (int i = star + 1; i <= N; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    Eigen::VectorXd rhs = hist[iu];
    for (int k = star; k < i - 1; ++k) {
      rhs += rw.falling(i, k) * g[static_cast<std::size_t>(k)] + rw.rising(i, k) * g[static_cast<std::size_t>(k + 1)];
    }
    const double self = rw.rising(i, i - 1);
    rhs += rw.falling(i, i - 1) * g[iu - 1] + self * b[iu];
    const Eigen::MatrixXd m = id - self * a[iu];
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    if (!(lu.rcond() > 1e-13)) {
      throw SingularSystemError("implicit step matrix is singular at t = " + std::to_string(problem.t0 + i * h) +
                                "; refine the grid");
    }
    x[iu] = lu.solve(rhs);
    g[iu] = a[iu] * x[iu] + b[iu];
  }
  return finish(problem, GridFn(problem.t0, problem.theta, N, std::move(x)), Method::Direct, clock);
}

GridFn psi_star(const GridFn& phi, double alpha, const GridFn& target) {
  const double ts = phi.b();
  if (!close(target.a(), ts)) throw DomainError("psi_star: target grid must start at t_star");
  const Eigen::Index n = phi.rows();
  GridFn out = GridFn::zeros(target.a(), target.b(), target.intervals(), n, 1);
  if (phi.intervals() == 0 || phi.b() == phi.a()) return out;

  const int m_hist = phi.intervals();
  const double c = std::sin(alpha * std::numbers::pi) / std::numbers::pi;
  const quad::UnitRule at_star = quad::gauss_jacobi_unit(32, 0.0, alpha - 1.0);
  const quad::UnitRule beyond = quad::gauss_jacobi_unit(32, 0.0, alpha);
  const quad::UnitRule r16 = quad::gauss_legendre_unit(16);
  const quad::UnitRule r8 = quad::gauss_legendre_unit(8);

  parallel_for(out.size(), [&](std::size_t j) {
    const bool on_star = j == 0;
    const double t = out.node(static_cast<int>(j));
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < m_hist; ++s) {
      const double lo = phi.node(s);
      const double hi = phi.node(s + 1);
      if (s == m_hist - 1) {
        // (t* - tau)^alpha, or (t* - tau)^{alpha - 1} after cancellation at t = t*, sits in the weight.
        if (on_star) {
          acc += quad::integrate(at_star, lo, hi, [&](double tau) -> Eigen::VectorXd { return lerp(phi, s, tau); });
        } else {
          acc += quad::integrate(beyond, lo, hi,
                                 [&](double tau) -> Eigen::VectorXd { return lerp(phi, s, tau) / (t - tau); });
        }
        continue;
      }
      const quad::UnitRule& rule = s == m_hist - 2 ? r16 : r8;
      if (on_star) {
        acc += quad::integrate(rule, lo, hi, [&](double tau) -> Eigen::VectorXd {
          return std::pow(ts - tau, alpha - 1.0) * lerp(phi, s, tau);
        });
      } else {
        acc += quad::integrate(rule, lo, hi, [&](double tau) -> Eigen::VectorXd {
          return std::pow(ts - tau, alpha) / (t - tau) * lerp(phi, s, tau);
        });
      }
    }
    out[j] = c * acc;
  });
  return out;
}

GridFn b_star(const CauchyProblem& problem, const GridFn& psi) {
  if (!(problem.t_star < problem.theta)) throw DomainError("b_star: need t_star < theta");
  if (psi.intervals() < 1) throw GridError("b_star: psi needs at least one subinterval");
  if (!close(psi.a(), problem.t_star)) throw DomainError("b_star: psi must start at t_star");
  GridFn out = GridFn::zeros(psi.a(), psi.b(), psi.intervals(), problem.n, 1);
  const bool trivial = problem.t_star == problem.t0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Eigen::VectorXd bj = problem.b(out.node(static_cast<int>(j)));
    if (trivial) {
      out[j] = bj;
      continue;
    }
    const std::size_t q = j == 0 ? 1 : j;
    const double dt = out.node(static_cast<int>(q)) - psi.a();
    out[j] = (psi[q] - psi[0]) / std::pow(dt, problem.alpha) + bj;
  }
  return out;
}

Solution represent_pc(const CauchyProblem& problem, const FundamentalField& field) {
  if (problem.t_star != problem.t0) {
    throw PreconditionError("repr-pc needs t_star = t0; use repr-gc for an intermediate start");
  }
  const auto clock = std::chrono::steady_clock::now();
  return finish(problem, represent(problem, field, Correction::None), Method::ReprPC, clock);
}

Solution represent_gc(const CauchyProblem& problem, const FundamentalField& field) {
  const auto clock = std::chrono::steady_clock::now();
  return finish(problem, represent(problem, field, Correction::Psi), Method::ReprGC, clock);
}

Solution represent_gc_compact(const CauchyProblem& problem, const FundamentalField& field) {
  const auto clock = std::chrono::steady_clock::now();
  return finish(problem, represent(problem, field, Correction::Compact), Method::ReprGCCompact, clock);
}

double integral_equation_residual(const CauchyProblem& problem, const GridFn& x) {
  problem.validate();
  const int N = x.intervals();
  if (!close(x.a(), problem.t0) || !close(x.b(), problem.theta)) {
    throw GridError("residual: solution must live on [t0, theta]");
  }
  const int star = problem.star_index(N);
  check_history_grid(problem, star);
  const RiemannWeights rw(problem.alpha, x.step(), N);
  const std::vector<Eigen::MatrixXd> a = sample_matrix(problem, N, star);
  const std::vector<Eigen::VectorXd> b = sample_forcing(problem, N, star);
  const std::vector<Eigen::VectorXd> hist = history_term(problem, N, star, rw);
  std::vector<Eigen::VectorXd> g(static_cast<std::size_t>(N + 1));
  for (int k = star; k <= N; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    g[ku] = a[ku] * x[ku] + b[ku];
  }
  std::vector<double> res(static_cast<std::size_t>(N + 1), 0.0);
  parallel_for(static_cast<std::size_t>(N - star), [&](std::size_t idx) {
    const int i = star + 1 + static_cast<int>(idx);
    Eigen::VectorXd rhs = hist[static_cast<std::size_t>(i)];
    for (int k = star; k < i; ++k) {
      rhs += rw.falling(i, k) * g[static_cast<std::size_t>(k)] + rw.rising(i, k) * g[static_cast<std::size_t>(k + 1)];
    }
    res[static_cast<std::size_t>(i)] = (x[static_cast<std::size_t>(i)] - rhs).cwiseAbs().maxCoeff();
  });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

Eigen::MatrixXd compact_identity_residual(const CauchyProblem& problem, const FundamentalField& field, int i) {
  problem.validate();
  check_field(problem, field);
  const int N = field.grid().N;
  const int star = problem.star_index(N);
  if (i <= star || i > N) throw DomainError("compact_identity_residual: need star index < i <= N");
  const int m = i - star;
  const RiemannWeights rw(problem.alpha, field.grid().step(), m);
  const DoublyWeightedF split(problem.alpha, field.grid().step(), m);
  const double g = gamma(problem.alpha);
  const double g1 = gamma(1.0 - problem.alpha);
  const Eigen::Index n = problem.n;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n);
  for (int l = 0; l <= m; ++l) {
    const int k = star + l;
    lhs.noalias() += g * rw(m, l) * (field(i, k) * problem.A(field.grid().node(k)));
  }
  return lhs - split(field, star, i, problem.A(field.grid().node(i))) / g1;
}

}  // namespace fracfund
