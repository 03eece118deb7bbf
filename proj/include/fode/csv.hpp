#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "fode/trajectory.hpp"

namespace fode::csv {

/// Double with 17 significant digits, enough to round-trip exactly.
std::string format_double(double value);

/// Header "t,y0,...,y{d-1}", then one row per grid point. LF line endings.
void write_trajectory(std::ostream& out, const Trajectory& traj);

struct TrajectoryTable {
  std::size_t dim = 0;
  std::vector<double> t;
  /// Row-major states, t.size() rows of `dim` values.
  std::vector<double> states;
};

/// Parses the output of write_trajectory; throws ConfigError on malformed input.
TrajectoryTable read_trajectory(std::istream& in);

}  // namespace fode::csv
