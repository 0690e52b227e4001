#include "fracfund/oracle.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <queue>
#include <string>

#include "fracfund/errors.hpp"
#include "fracfund/special_fn.hpp"

namespace fracfund::oracle {
namespace {

using Rule = std::pair<std::vector<long double>, std::vector<long double>>;

struct PanelRules {
  Rule coarse;
  Rule fine;
};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// Integrates the smooth factor g = f / weight over [lo, hi] where the weight is
// (x - wlo)^p (whi - x)^q restricted to this panel (p or q may be zero).
double apply_rule(const Rule& rule, const std::function<double(double)>& f, double lo, double hi,
                  double p, double q) {
  const long double half = 0.5L * (static_cast<long double>(hi) - lo);
  const long double mid = 0.5L * (static_cast<long double>(hi) + lo);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < rule.first.size(); ++i) {
    const long double y = rule.first[i];
    const long double x = mid + half * y;
    long double w = 1.0L;
    if (p != 0.0) w *= std::pow(x - lo, static_cast<long double>(p));
    if (q != 0.0) w *= std::pow(hi - x, static_cast<long double>(q));
    acc += rule.second[i] * static_cast<long double>(f(static_cast<double>(x))) / w;
  }
  return static_cast<double>(acc * std::pow(half, 1.0L + p + q));
}

}  // namespace

Rule gauss_jacobi_newton(int n, long double alf, long double bet) {
  if (n < 4) throw DomainError("gauss_jacobi_newton: need n >= 4");
  std::vector<long double> x(static_cast<std::size_t>(n) + 1);
  std::vector<long double> w(static_cast<std::size_t>(n) + 1);
  const long double alfbet = alf + bet;
  long double z = 0.0L;
  for (int i = 1; i <= n; ++i) {
    if (i == 1) {
      const long double an = alf / n;
      const long double bn = bet / n;
      const long double r1 = (1.0L + alf) * (2.78L / (4.0L + n * n) + 0.768L * an / n);
      const long double r2 = 1.0L + 1.48L * an + 0.96L * bn + 0.452L * an * an + 0.83L * an * bn;
      z = 1.0L - r1 / r2;
    } else if (i == 2) {
      const long double r1 = (4.1L + alf) / ((1.0L + alf) * (1.0L + 0.156L * alf));
      const long double r2 = 1.0L + 0.06L * (n - 8.0L) * (1.0L + 0.12L * alf) / n;
      const long double r3 = 1.0L + 0.012L * bet * (1.0L + 0.25L * std::fabs(alf)) / n;
      z -= (1.0L - z) * r1 * r2 * r3;
    } else if (i == 3) {
      const long double r1 = (1.67L + 0.28L * alf) / (1.0L + 0.37L * alf);
      const long double r2 = 1.0L + 0.22L * (n - 8.0L) / n;
      const long double r3 = 1.0L + 8.0L * bet / ((6.28L + bet) * n * n);
      z -= (x[1] - z) * r1 * r2 * r3;
    } else if (i == n - 1) {
      const long double r1 = (1.0L + 0.235L * bet) / (0.766L + 0.119L * bet);
      const long double r2 = 1.0L / (1.0L + 0.639L * (n - 4.0L) / (1.0L + 0.71L * (n - 4.0L)));
      const long double r3 = 1.0L / (1.0L + 20.0L * alf / ((7.5L + alf) * n * n));
      z += (z - x[static_cast<std::size_t>(n - 3)]) * r1 * r2 * r3;
    } else if (i == n) {
      const long double r1 = (1.0L + 0.37L * bet) / (1.67L + 0.28L * bet);
      const long double r2 = 1.0L / (1.0L + 0.22L * (n - 8.0L) / n);
      const long double r3 = 1.0L / (1.0L + 8.0L * alf / ((6.28L + alf) * n * n));
      z += (z - x[static_cast<std::size_t>(n - 2)]) * r1 * r2 * r3;
    } else {
      z = 3.0L * x[static_cast<std::size_t>(i - 1)] - 3.0L * x[static_cast<std::size_t>(i - 2)] +
          x[static_cast<std::size_t>(i - 3)];
    }
    long double p1 = 0.0L;
    long double p2 = 0.0L;
    long double pp = 0.0L;
    long double temp = 0.0L;
    int its = 0;
    for (; its < 100; ++its) {
      temp = 2.0L + alfbet;
      p1 = (alf - bet + temp * z) / 2.0L;
      p2 = 1.0L;
      for (int j = 2; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        temp = 2.0L * j + alfbet;
        const long double a = 2.0L * j * (j + alfbet) * (temp - 2.0L);
        const long double b = (temp - 1.0L) * (alf * alf - bet * bet + temp * (temp - 2.0L) * z);
        const long double c = 2.0L * (j - 1.0L + alf) * (j - 1.0L + bet) * temp;
        p1 = (b * p2 - c * p3) / a;
      }
      pp = (n * (alf - bet - temp * z) * p1 + 2.0L * (n + alf) * (n + bet) * p2) / (temp * (1.0L - z * z));
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-17L) break;
    }
    if (its == 100) throw ConvergenceError("gauss_jacobi_newton: Newton iteration failed");
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] =
        std::exp(std::lgamma(alf + n) + std::lgamma(bet + n) - std::lgamma(n + 1.0L) -
                 std::lgamma(n + alfbet + 1.0L)) *
        temp * std::pow(2.0L, alfbet) / (pp * p2);
  }
  // Newton returns nodes from +1 downwards; map to x in [-1, 1] with weight (1-x)^a (1+x)^b.
  return {std::vector<long double>(x.begin() + 1, x.end()), std::vector<long double>(w.begin() + 1, w.end())};
}

QuadResult adaptive_quad(const QuadSpec& spec) {
  if (!(spec.p_lo > -1.0) || !(spec.p_hi > -1.0)) {
    throw DomainError("adaptive_quad: endpoint exponents must exceed -1");
  }
  if (!(spec.hi > spec.lo)) {
    return {};
  }
  // Rules indexed by (touches lo, touches hi).
  auto make = [](double p, double q) {
    return PanelRules{gauss_jacobi_newton(12, q, p), gauss_jacobi_newton(24, q, p)};
  };
  const PanelRules interior = make(0.0, 0.0);
  const PanelRules left = make(spec.p_lo, 0.0);
  const PanelRules right = make(0.0, spec.p_hi);
  const PanelRules both = make(spec.p_lo, spec.p_hi);

  auto evaluate = [&](double lo, double hi) {
    const bool at_lo = lo == spec.lo;
    const bool at_hi = hi == spec.hi;
    const PanelRules& rules = at_lo ? (at_hi ? both : left) : (at_hi ? right : interior);
    const double p = at_lo ? spec.p_lo : 0.0;
    const double q = at_hi ? spec.p_hi : 0.0;
    const double coarse = apply_rule(rules.coarse, spec.integrand, lo, hi, p, q);
    const double fine = apply_rule(rules.fine, spec.integrand, lo, hi, p, q);
    return Panel{lo, hi, fine, std::abs(fine - coarse)};
  };

  std::priority_queue<Panel> heap;
  heap.push(evaluate(spec.lo, spec.hi));
  double total_err = heap.top().error;
  int panels = 1;
  while (total_err > spec.tol) {
    if (panels >= spec.max_panels) {
      throw ConvergenceError("adaptive_quad: tolerance " + std::to_string(spec.tol) +
                             " not met within " + std::to_string(spec.max_panels) + " panels");
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel a = evaluate(worst.lo, mid);
    const Panel b = evaluate(mid, worst.hi);
    heap.push(a);
    heap.push(b);
    ++panels;
    // Recompute the sum rather than updating it, so cancellation cannot stall the loop.
    total_err = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      total_err += copy.top().error;
      copy.pop();
    }
  }
  QuadResult result;
  result.panels = panels;
  std::vector<double> values;
  while (!heap.empty()) {
    values.push_back(heap.top().value);
    result.error += heap.top().error;
    heap.pop();
  }
  // Sum small contributions first.
  std::sort(values.begin(), values.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  for (double v : values) result.value += v;
  return result;
}

Eigen::VectorXd adaptive_quad(const std::function<Eigen::VectorXd(double)>& integrand, Eigen::Index dim,
                              double lo, double hi, double p_lo, double p_hi, double tol) {
  Eigen::VectorXd out(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    QuadSpec spec;
    spec.integrand = [&](double x) { return integrand(x)(c); };
    spec.lo = lo;
    spec.hi = hi;
    spec.p_lo = p_lo;
    spec.p_hi = p_hi;
    spec.tol = tol;
    out(c) = adaptive_quad(spec).value;
  }
  return out;
}

Eigen::MatrixXd constant_coeff_F(const Eigen::MatrixXd& a0, double alpha, double dt, double ml_tol) {
  if (dt < 0.0) throw DomainError("constant_coeff_F: dt must be non-negative");
  const Eigen::Index n = a0.rows();
  if (dt == 0.0) return Eigen::MatrixXd::Identity(n, n) / gamma(alpha);
  MLParams p;
  p.alpha = alpha;
  p.beta = alpha;
  p.tol = ml_tol;
  return mittag_leffler(p, std::pow(dt, alpha) * a0);
}

double convergence_order(const std::vector<std::pair<int, double>>& errors) {
  if (errors.size() < 3) throw DomainError("convergence_order: need at least three samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [n, err] : errors) {
    if (!(err > 0.0)) throw DomainError("convergence_order: errors must be positive");
    if (n <= 0) throw DomainError("convergence_order: grid sizes must be positive");
    const double x = std::log(1.0 / n);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(errors.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double mittag_leffler_highprec(double alpha, double beta, double z) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big a(alpha);
  const big b(beta);
  const big zz(z);
  big sum = 0;
  big power = 1;
  const big eps = big(1e-40);
  int small_run = 0;
  for (int k = 0; k < 20000; ++k) {
    const big term = power / boost::math::tgamma(a * k + b);
    sum += term;
    if (abs(term) < eps * (1 + abs(sum))) {
      if (++small_run >= 2) return static_cast<double>(sum);
    } else {
      small_run = 0;
    }
    power *= zz;
  }
  throw ConvergenceError("mittag_leffler_highprec: series did not converge");
}

}  // namespace fracfund::oracle
