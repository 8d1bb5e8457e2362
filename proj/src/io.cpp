#include "sccm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "sccm/error.hpp"

namespace sccm::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw argument_error("csv line " + std::to_string(line_no) + ": cannot parse '" + s + "' as a number");
  return v;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw argument_error("csv input is empty");
  t.header = split_line(line);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_line(line);
    if (cells.size() != t.header.size())
      throw argument_error("csv line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                           " fields, header has " + std::to_string(t.header.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c, line_no));
    t.rows.push_back(std::move(row));
  }
  return t;
}

double infer_dt(const Table& t, std::size_t tcol) {
  if (t.rows.size() < 2) return 1.0;
  const double dt = t.rows[1][tcol] - t.rows[0][tcol];
  return dt > 0.0 ? dt : 1.0;
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const std::vector<std::string>& names) {
  os << "t";
  for (Index j = 0; j < traj.dim(); ++j) {
    if (static_cast<std::size_t>(j) < names.size())
      os << ',' << names[static_cast<std::size_t>(j)];
    else
      os << ",x" << j;
  }
  os << '\n' << std::setprecision(17);
  for (Index i = 0; i < traj.size(); ++i) {
    os << traj.t0 + static_cast<double>(i) * traj.dt;
    for (Index j = 0; j < traj.dim(); ++j) os << ',' << traj.states(i, j);
    os << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  Table t = read_table(is);
  if (t.header.size() < 2 || t.header[0] != "t")
    throw argument_error("trajectory csv must start with a 't' column followed by state columns");
  if (t.rows.size() < 2) throw argument_error("trajectory csv needs at least 2 rows");
  Trajectory traj;
  traj.t0 = t.rows[0][0];
  traj.dt = infer_dt(t, 0);
  const auto dim = static_cast<Index>(t.header.size() - 1);
  traj.states.resize(static_cast<Index>(t.rows.size()), dim);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (Index j = 0; j < dim; ++j)
      traj.states(static_cast<Index>(i), j) = t.rows[i][static_cast<std::size_t>(j + 1)];
  return traj;
}

void write_series_csv(std::ostream& os, const TimeSeries& series, double t0) {
  os << "t,value\n" << std::setprecision(17);
  for (Index i = 0; i < series.size(); ++i)
    os << t0 + static_cast<double>(i) * series.dt << ',' << series.values[i] << '\n';
}

TimeSeries read_series_csv(std::istream& is) { return read_column_csv(is, "value"); }

TimeSeries read_column_csv(std::istream& is, const std::string& column) {
  Table t = read_table(is);
  std::size_t col = t.header.size();
  for (std::size_t j = 0; j < t.header.size(); ++j)
    if (t.header[j] == column) col = j;
  if (col == t.header.size()) {
    std::size_t pos = 0;
    try {
      pos = std::stoul(column);
    } catch (const std::exception&) {
      throw argument_error("csv has no column named '" + column + "'");
    }
    if (pos >= t.header.size()) throw argument_error("csv column index " + column + " out of range");
    col = pos;
  }
  TimeSeries s;
  s.values.resize(static_cast<Index>(t.rows.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) s.values[static_cast<Index>(i)] = t.rows[i][col];
  s.dt = 1.0;
  for (std::size_t j = 0; j < t.header.size(); ++j)
    if (t.header[j] == "t") s.dt = infer_dt(t, j);
  if (!s.values.allFinite()) throw argument_error("csv column '" + column + "' contains non-finite values");
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw argument_error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw argument_error("failed writing '" + path + "'");
}

}  // namespace sccm::io
