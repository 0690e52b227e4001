#include "fracfund/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fracfund/errors.hpp"

namespace fracfund::io {
namespace {

void write_row(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << ',' << format_double(m(r, c));
  }
}

std::vector<double> split_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) throw ConfigError("CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_grid_fn(std::ostream& out, const GridFn& f, const std::string& prefix) {
  out << 't';
  for (Eigen::Index k = 1; k <= f.rows() * f.cols(); ++k) out << ',' << prefix << '_' << k;
  out << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.node(static_cast<int>(i)));
    write_row(out, f[i]);
    out << '\n';
  }
}

GridFn read_grid_fn(std::istream& in, Eigen::Index cols) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0) throw ConfigError("CSV: missing 't,...' header");
  const auto width = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  if (width == 0 || width % static_cast<std::size_t>(cols) != 0) throw ConfigError("CSV: bad column count");
  const auto rows = static_cast<Eigen::Index>(width) / cols;

  std::vector<double> t;
  std::vector<Eigen::MatrixXd> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<double> v = split_numbers(line, line_no);
    if (v.size() != width + 1) throw ConfigError("CSV line " + std::to_string(line_no) + ": wrong number of columns");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[1 + static_cast<std::size_t>(r * cols + c)];
    }
    t.push_back(v[0]);
    values.push_back(std::move(m));
  }
  if (values.empty()) throw ConfigError("CSV: no data rows");
  const int n_int = static_cast<int>(values.size()) - 1;
  if (n_int > 0) {
    const double h = (t.back() - t.front()) / n_int;
    for (int i = 0; i <= n_int; ++i) {
      if (std::abs(t[static_cast<std::size_t>(i)] - (t.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(t.back()))) {
        throw GridError("CSV: t column is not a uniform grid");
      }
    }
  }
  return GridFn(t.front(), t.back(), n_int, std::move(values));
}

GridFn read_grid_fn(const std::filesystem::path& path, Eigen::Index cols) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  return read_grid_fn(in, cols);
}

void write_field(std::ostream& out, const FundamentalField& field) {
  const Eigen::Index n = field.dim();
  out << "t,s";
  for (Eigen::Index r = 1; r <= n; ++r) {
    for (Eigen::Index c = 1; c <= n; ++c) out << ",F_" << r << c;
  }
  out << '\n';
  const TriangleGrid& g = field.grid();
  for (int i = 0; i <= g.N; ++i) {
    for (int j = 0; j <= i; ++j) {
      out << format_double(g.node(i)) << ',' << format_double(g.node(j));
      write_row(out, field(i, j));
      out << '\n';
    }
  }
}

void write_solution(std::ostream& out, const Solution& sol) { write_grid_fn(out, sol.x, "x"); }

std::string solution_metadata(const Solution& sol) {
  nlohmann::json j;
  j["method"] = to_string(sol.method);
  j["grid_N"] = sol.info.intervals;
  j["t0"] = sol.x.a();
  j["theta"] = sol.x.b();
  j["residual"] = sol.info.residual;
  j["wall_seconds"] = sol.info.wall_seconds;
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  std::filesystem::path tmp = path;
  tmp += ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    writer(out);
    if (!out) throw ConfigError("write failed for '" + path.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, [&](std::ostream& out) { out << text; });
}

}  // namespace fracfund::io
