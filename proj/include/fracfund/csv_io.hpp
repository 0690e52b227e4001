#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "fracfund/cauchy.hpp"
#include "fracfund/fundamental.hpp"
#include "fracfund/grid_fn.hpp"

namespace fracfund::io {

/// Shortest form that round-trips a double ("%.17g").
std::string format_double(double x);

/// Header `t,<prefix>_1,...,<prefix>_k`; matrices are flattened row-major.
void write_grid_fn(std::ostream& out, const GridFn& f, const std::string& prefix = "v");

/// Reads a CSV written by write_grid_fn. The t column must be uniform; entries are reshaped to
/// (k / cols) x cols.
GridFn read_grid_fn(std::istream& in, Eigen::Index cols = 1);
GridFn read_grid_fn(const std::filesystem::path& path, Eigen::Index cols = 1);

/// Header `t,s,F_11,...,F_nn`, one row per triangle node (i, j), j <= i.
void write_field(std::ostream& out, const FundamentalField& field);

void write_solution(std::ostream& out, const Solution& sol);

/// JSON sidecar with grid size, method, residual and wall time.
std::string solution_metadata(const Solution& sol);

/// Writes to `path` via a temporary file so a failed run never leaves a partial file.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fracfund::io
