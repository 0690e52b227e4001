#include "fracfund/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fracfund/csv_io.hpp"
#include "fracfund/errors.hpp"

namespace fracfund {
namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  return j.at(key);
}

Eigen::MatrixXd read_matrix(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ConfigError(where + ": expected " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError(where + ": row " + std::to_string(r) + " needs " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Eigen::VectorXd read_vector(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ConfigError(where + ": expected a vector of length " + std::to_string(n));
  }
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

GridFn read_samples(const json& j, const std::filesystem::path& base, Eigen::Index rows, Eigen::Index cols,
                    const std::string& where) {
  std::filesystem::path path = need(j, "path", where).get<std::string>();
  if (path.is_relative()) path = base / path;
  GridFn f = io::read_grid_fn(path, cols);
  if (f.rows() != rows) throw ConfigError(where + ": samples in '" + path.string() + "' have the wrong width");
  return f;
}

MatrixFn matrix_spec(const json& j, Eigen::Index n, const std::filesystem::path& base,
                     std::optional<Eigen::MatrixXd>& constant) {
  const std::string where = "problem.A";
  const std::string type = need(j, "type", where).get<std::string>();
  if (type == "zero") {
    constant = Eigen::MatrixXd::Zero(n, n);
  } else if (type == "constant") {
    constant = read_matrix(need(j, "matrix", where), n, where + ".matrix");
  } else if (type == "rotation") {
    if (n != 2) throw ConfigError("problem.A: preset 'rotation' needs n = 2");
    const double omega = j.value("omega", 1.0);
    Eigen::MatrixXd m(2, 2);
    m << 0.0, omega, -omega, 0.0;
    constant = m;
  } else if (type == "cosine") {
    const Eigen::MatrixXd a0 = read_matrix(need(j, "matrix", where), n, where + ".matrix");
    const double omega = j.value("omega", 1.0);
    return [a0, omega](double t) -> Eigen::MatrixXd { return a0 * std::cos(omega * t); };
  } else if (type == "samples") {
    GridFn f = read_samples(j, base, n, n, where);
    return [f = std::move(f)](double t) { return f.at(t); };
  } else {
    throw ConfigError(where + ": unknown type '" + type + "'");
  }
  return [m = *constant](double) { return m; };
}

VectorFn vector_spec(const json& j, Eigen::Index n, const std::filesystem::path& base, const std::string& where) {
  const std::string type = need(j, "type", where).get<std::string>();
  if (type == "zero") {
    return [n](double) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(n); };
  }
  if (type == "constant") {
    const Eigen::VectorXd v = read_vector(need(j, "vector", where), n, where + ".vector");
    return [v](double) { return v; };
  }
  if (type == "harmonic") {
    // c + s sin(omega t) + k cos(omega t), each part optional.
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd c = j.contains("constant") ? read_vector(j.at("constant"), n, where + ".constant") : zero;
    const Eigen::VectorXd s = j.contains("sin") ? read_vector(j.at("sin"), n, where + ".sin") : zero;
    const Eigen::VectorXd k = j.contains("cos") ? read_vector(j.at("cos"), n, where + ".cos") : zero;
    const double omega = j.value("omega", 1.0);
    return [c, s, k, omega](double t) -> Eigen::VectorXd {
      return c + s * std::sin(omega * t) + k * std::cos(omega * t);
    };
  }
  if (type == "samples") {
    GridFn f = read_samples(j, base, n, 1, where);
    return [f = std::move(f)](double t) -> Eigen::VectorXd { return f.at(t); };
  }
  throw ConfigError(where + ": unknown type '" + type + "'");
}

HistorySpec history_spec(const json& j, Eigen::Index n, const std::filesystem::path& base) {
  const std::string where = "problem.history";
  const std::string type = need(j, "type", where).get<std::string>();
  HistorySpec h;
  if (type == "constant") {
    h.kind = HistorySpec::Kind::Constant;
    h.w0 = read_vector(need(j, "w0", where), n, where + ".w0");
  } else if (type == "generator") {
    h.kind = HistorySpec::Kind::Generator;
    h.w0 = read_vector(need(j, "w0", where), n, where + ".w0");
    h.phi = vector_spec(need(j, "phi", where), n, base, where + ".phi");
  } else if (type == "samples") {
    h.kind = HistorySpec::Kind::Samples;
    h.samples = read_samples(j, base, n, 1, where);
    h.w0 = h.samples[0];
  } else {
    throw ConfigError(where + ": unknown type '" + type + "'");
  }
  return h;
}

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); }

}  // namespace

RunConfig RunConfig::parse(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig c;
  try {
    const json root = json::parse(text);
    const json& p = need(root, "problem", "config");
    c.alpha = need(p, "alpha", "problem").get<double>();
    c.t0 = p.value("t0", 0.0);
    c.theta = need(p, "theta", "problem").get<double>();
    c.n = need(p, "n", "problem").get<int>();
    c.t_star = p.value("t_star", c.t0);
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("problem.alpha must lie in (0, 1)");
    if (!(c.theta > c.t0)) throw ConfigError("problem: need theta > t0");
    if (!(c.t_star >= c.t0 && c.t_star < c.theta)) throw ConfigError("problem: need t0 <= t_star < theta");
    if (c.n < 1) throw ConfigError("problem.n must be positive");

    c.A = matrix_spec(need(p, "A", "problem"), c.n, base_dir, c.constant_A);
    c.b = p.contains("b") ? vector_spec(p.at("b"), c.n, base_dir, "problem.b")
                          : vector_spec(json{{"type", "zero"}}, c.n, base_dir, "problem.b");
    c.history = history_spec(need(p, "history", "problem"), c.n, base_dir);

    c.grid_N = need(root, "grid_N", "config").get<int>();
    if (c.grid_N < 8) throw ConfigError("grid_N must be at least 8");
    if (root.contains("method")) c.method = method_from_string(root.at("method").get<std::string>());
    if (root.contains("tolerances")) {
      const json& t = root.at("tolerances");
      c.picard_tol = t.value("picard_tol", c.picard_tol);
      c.ml_tol = t.value("ml_tol", c.ml_tol);
      if (!(c.picard_tol > 0.0) || !(c.ml_tol > 0.0)) throw ConfigError("tolerances must be positive");
    }
    if (root.contains("output")) {
      const json& o = root.at("output");
      c.out_fundamental = o.value("fundamental", "");
      c.out_solution = o.value("solution", "");
      c.out_report = o.value("report", "");
    }
    // t_star has to be a node of the configured grid.
    c.problem(c.grid_N);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const GridError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.parent_path());
}

CauchyProblem RunConfig::problem(int intervals) const {
  CauchyProblem p;
  p.alpha = alpha;
  p.t0 = t0;
  p.theta = theta;
  p.n = n;
  p.A = A;
  p.b = b;
  p.t_star = t_star;
  const int star = p.star_index(intervals);
  const double h = (theta - t0) / intervals;

  switch (history.kind) {
    case HistorySpec::Kind::Constant:
      p.history = History::constant(history.w0, t0, t_star, star);
      break;
    case HistorySpec::Kind::Generator: {
      const GridFn phi = star == 0 ? GridFn(t0, t0, 0, {history.phi(t0)})
                                   : GridFn::sample(t0, t_star, star, [&](double t) -> Eigen::MatrixXd {
                                       return history.phi(t);
                                     });
      p.history = History::from_generator(history.w0, phi, alpha);
      break;
    }
    case HistorySpec::Kind::Samples: {
      const GridFn& s = history.samples;
      if (!near(s.a(), t0) || s.b() < t_star - 1e-12 * std::max(1.0, std::abs(t_star))) {
        throw ConfigError("history samples must cover [t0, t_star]");
      }
      if (star == 0) {
        p.history = History::from_samples(GridFn(t0, t0, 0, {s[0]}));
      } else if (s.intervals() > 0 && std::abs(s.step() - h) <= 1e-12 * h) {
        // Same grid: take the nodes verbatim so a solution CSV round-trips exactly.
        GridFn w = s.slice(0, star);
        p.history = History::from_samples(GridFn(t0, t_star, star, w.values()));
      } else {
        p.history = History::from_samples(
            GridFn::sample(t0, t_star, star, [&](double t) -> Eigen::MatrixXd { return s.at(t); }));
      }
      break;
    }
  }
  return p;
}

}  // namespace fracfund
