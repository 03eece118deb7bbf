#include "fode/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "fode/errors.hpp"

namespace fode::csv {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out << 't';
  for (std::size_t i = 0; i < traj.dim(); ++i) {
    out << ",y" << i;
  }
  out << '\n';
  std::string line;
  for (std::size_t n = 0; n < traj.size(); ++n) {
    line = format_double(traj.grid().t(n));
    for (double v : traj.state(n)) {
      line += ',';
      line += format_double(v);
    }
    line += '\n';
    out << line;
  }
}

namespace {

double parse_field(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ConfigError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

}  // namespace

TrajectoryTable read_trajectory(std::istream& in) {
  TrajectoryTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("empty trajectory file");
  }
  const auto header = split(line);
  if (header.empty() || header[0] != "t") {
    throw ConfigError("trajectory header must start with 't'");
  }
  table.dim = header.size() - 1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != table.dim + 1) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.dim + 1) +
                        " fields");
    }
    table.t.push_back(parse_field(fields[0], line_no));
    for (std::size_t i = 1; i < fields.size(); ++i) {
      table.states.push_back(parse_field(fields[i], line_no));
    }
  }
  return table;
}

}  // namespace fode::csv
