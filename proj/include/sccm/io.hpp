#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sccm/dynsys.hpp"

namespace sccm::io {

// All floating-point output uses 17 significant digits so values survive a
// write/read cycle exactly.

/// Header `t,x0,x1,...` (or the given column names after `t`).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& names = {});
Trajectory read_trajectory_csv(std::istream& is);

/// Header `t,value`.
void write_series_csv(std::ostream& os, const TimeSeries& series, double t0 = 0.0);
TimeSeries read_series_csv(std::istream& is);

/// Reads one column of any CSV with a header row, by name or 0-based
/// position. dt is inferred from a `t` column when present, else 1.
TimeSeries read_column_csv(std::istream& is, const std::string& column);

void write_file(const std::string& path, const std::string& contents);
std::string format_double(double v);

}  // namespace sccm::io
