#include "fracfund/frac_ops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracfund/errors.hpp"
#include "fracfund/parallel.hpp"
#include "fracfund/special_fn.hpp"

namespace fracfund {
namespace {

constexpr int kGradedLevels = 20;
constexpr int kPanelNodes = 8;
constexpr int kKernelPanelNodes = 16;
constexpr int kKernelWholeNodes = 64;

void check_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError(std::string(where) + ": alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

}  // namespace

OpConstants op_constants(double alpha) {
  check_alpha(alpha, "op_constants");
  OpConstants c;
  c.alpha = alpha;
  c.H_I = 2.0 / gamma(alpha + 1.0);
  c.M_R = std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi);
  c.M_J = 1.0 + c.M_R;
  c.H_J = c.M_J * c.H_I;
  return c;
}

RiemannWeights::RiemannWeights(double alpha, double h, int max_n)
    : scale_(std::pow(h, alpha) / gamma(alpha)),
      fall_(static_cast<std::size_t>(std::max(max_n, 1)) + 1, 0.0),
      rise_(fall_.size(), 0.0) {
  // fall[p] = int_{p-1}^{p} v^{alpha-1} (v - p + 1) dv, rise[p] = int_{p-1}^{p} v^{alpha-1} (p - v) dv.
  fall_[1] = 1.0 / (alpha + 1.0);
  rise_[1] = 1.0 / alpha - 1.0 / (alpha + 1.0);
  const quad::UnitRule near = quad::gauss_legendre_unit(16);
  const quad::UnitRule far = quad::gauss_legendre_unit(kPanelNodes);
  for (std::size_t p = 2; p < fall_.size(); ++p) {
    const quad::UnitRule& rule = p == 2 ? near : far;
    double f = 0.0;
    double r = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double s = rule.nodes[i];
      const double g = rule.weights[i] * std::pow(static_cast<double>(p) - 1.0 + s, alpha - 1.0);
      f += g * s;
      r += g * (1.0 - s);
    }
    fall_[p] = f;
    rise_[p] = r;
  }
}

double RiemannWeights::operator()(int i, int k) const {
  double w = 0.0;
  if (k < i) w += fall_[static_cast<std::size_t>(i - k)];
  if (k > 0) w += rise_[static_cast<std::size_t>(i - k + 1)];
  return scale_ * w;
}

JWeights::JWeights(double alpha, double h, int max_m) : max_m_(max_m) {
  const quad::HatMomentTable table(alpha - 1.0, alpha - 1.0, max_m);
  data_.assign(offset(max_m + 1), 0.0);
  const double h_alpha = std::pow(h, alpha) / gamma(alpha);
  for (int m = 1; m <= max_m; ++m) {
    const double scale = h_alpha * std::pow(static_cast<double>(m), 1.0 - alpha);
    const double* src = table.row(m);
    double* dst = data_.data() + offset(m);
    for (int k = 0; k <= m; ++k) dst[k] = scale * src[k];
  }
}

GridFn mirror(const GridFn& phi) {
  std::vector<Eigen::MatrixXd> v(phi.values().rbegin(), phi.values().rend());
  return GridFn(phi.a(), phi.b(), phi.intervals(), std::move(v));
}

GridFn fractional_integral(const GridFn& phi, double alpha, Side side) {
  check_alpha(alpha, "fractional_integral");
  if (side == Side::Right) return mirror(fractional_integral(mirror(phi), alpha, Side::Left));

  const int n = phi.intervals();
  GridFn out = GridFn::zeros(phi.a(), phi.b(), n, phi.rows(), phi.cols());
  if (n == 0) return out;
  const RiemannWeights w(alpha, phi.step(), n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(phi.rows(), phi.cols());
    for (int k = 0; k <= i; ++k) acc += w(i, k) * phi[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = acc;
  });
  return out;
}

GridFn caputo_derivative(const GridFn& x, double alpha) {
  check_alpha(alpha, "caputo_derivative");
  const int n = x.intervals();
  if (n < 1) throw GridError("caputo_derivative: need at least one subinterval");
  const double scale = std::pow(x.step(), -alpha) / gamma(2.0 - alpha);
  std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
  for (int p = 1; p <= n; ++p) {
    b[static_cast<std::size_t>(p)] = std::pow(p, 1.0 - alpha) - std::pow(p - 1, 1.0 - alpha);
  }
  GridFn out = GridFn::zeros(x.a(), x.b(), n, x.rows(), x.cols());
  for (int k = 1; k <= n; ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    for (int j = 0; j < k; ++j) {
      acc += b[static_cast<std::size_t>(k - j)] *
             (x[static_cast<std::size_t>(j) + 1] - x[static_cast<std::size_t>(j)]);
    }
    out[static_cast<std::size_t>(k)] = scale * acc;
  }
  out[0] = out[1];
  return out;
}

KernelK::KernelK(double alpha)
    : alpha_(alpha),
      head_(quad::gauss_jacobi_unit(kKernelPanelNodes, alpha, 0.0)),
      mid_(quad::gauss_legendre_unit(kKernelPanelNodes)),
      tail_(quad::gauss_jacobi_unit(kKernelPanelNodes, 0.0, -alpha)),
      whole_(quad::gauss_jacobi_unit(kKernelWholeNodes, alpha, -alpha)) {
  check_alpha(alpha, "KernelK");
}

double KernelK::operator()(double xi, double tau) const {
  if (!(tau > 0.0) || !(tau < xi)) {
    throw DomainError("kernel_K: need 0 < tau < xi");
  }
  const double a = alpha_;
  const double gap = xi - tau;
  const double ratio = tau / xi;
  double inner = 0.0;
  if (ratio >= 0.25) {
    inner = quad::integrate(whole_, 0.0, 1.0,
                            [&](double eta) { return std::pow(tau + eta * gap, -a); });
  } else {
    // The integrand varies on the scale tau / xi near eta = 0; panels double in width from there.
    double lo = ratio;
    inner = quad::integrate(head_, 0.0, lo, [&](double eta) {
      return std::pow((1.0 - eta) * (tau + eta * gap), -a);
    });
    while (lo < 0.5) {
      const double hi = std::min(2.0 * lo, 0.5);
      inner += quad::integrate(mid_, lo, hi, [&](double eta) {
        return std::pow(eta / ((1.0 - eta) * (tau + eta * gap)), a);
      });
      lo = hi;
    }
    inner += quad::integrate(tail_, 0.5, 1.0,
                             [&](double eta) { return std::pow(eta / (tau + eta * gap), a); });
  }
  return std::pow(tau, a - 1.0) * inner;
}

double kernel_K(double xi, double tau, double alpha) { return KernelK(alpha)(xi, tau); }

GridFn r_operator(const GridFn& phi, double alpha, Side side) {
  check_alpha(alpha, "r_operator");
  if (side == Side::Right) return mirror(r_operator(mirror(phi), alpha, Side::Left));

  const int n = phi.intervals();
  if (n < 1) throw GridError("r_operator: need at least one subinterval");
  const double h = phi.step();
  const double c_r = (1.0 - alpha) * std::sin(alpha * std::numbers::pi) / std::numbers::pi;
  const KernelK kernel(alpha);
  const quad::UnitRule rule = quad::gauss_legendre_unit(kPanelNodes);

  GridFn out = GridFn::zeros(phi.a(), phi.b(), n, phi.rows(), phi.cols());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    const double xi = i * h;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(phi.rows(), phi.cols());
    // Regular subintervals [k h, (k+1) h], k >= 1, with phi linear on each.
    for (int k = 1; k < i; ++k) {
      double fall = 0.0;
      double rise = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double s = rule.nodes[q];
        const double g = rule.weights[q] * kernel(xi, (k + s) * h);
        fall += g * (1.0 - s);
        rise += g * s;
      }
      acc += h * (fall * phi[static_cast<std::size_t>(k)] + rise * phi[static_cast<std::size_t>(k) + 1]);
    }
    // First subinterval: geometric pieces towards the tau^{alpha-1} end.
    double fall = 0.0;
    double rise = 0.0;
    double hi = 1.0;
    for (int level = 0; level < kGradedLevels; ++level) {
      const double lo = 0.5 * hi;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double s = lo + (hi - lo) * rule.nodes[q];
        const double g = (hi - lo) * rule.weights[q] * kernel(xi, s * h);
        fall += g * (1.0 - s);
        rise += g * s;
      }
      hi = lo;
    }
    // Remainder [0, hi h]: K(xi, tau) ~ tau^{alpha-1} xi^{-alpha} / (1 - alpha) as tau -> 0.
    const double eps = hi * h;
    fall += std::pow(eps, alpha) / alpha * std::pow(xi, -alpha) / (1.0 - alpha) / h;
    acc += h * (fall * phi[0] + rise * phi[1]);
    out[static_cast<std::size_t>(i)] = c_r * acc;
  });
  return out;
}

double r_of_constant(double alpha) {
  check_alpha(alpha, "r_of_constant");
  return alpha * beta_fn(alpha, alpha) - 1.0;
}

GridFn j_operator(const GridFn& phi, double alpha, Side side) {
  check_alpha(alpha, "j_operator");
  if (side == Side::Right) return mirror(j_operator(mirror(phi), alpha, Side::Left));

  const int n = phi.intervals();
  GridFn out = GridFn::zeros(phi.a(), phi.b(), n, phi.rows(), phi.cols());
  if (n == 0) return out;
  const JWeights w(alpha, phi.step(), n);
  for (int m = 1; m <= n; ++m) {
    const double* row = w.row(m);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(phi.rows(), phi.cols());
    for (int k = 0; k <= m; ++k) acc += row[k] * phi[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(m)] = acc;
  }
  return out;
}

}  // namespace fracfund
