#include <charconv>
#include <cstdio>
#include <sstream>

#include "seirs/cli.hpp"

namespace seirs::cli {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_shortest(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc{} ? end : buf);
}

void Report::output(std::string key, double value) {
  outputs.emplace_back(std::move(key), format_number(value));
}

void Report::output(std::string key, std::string value) {
  outputs.emplace_back(std::move(key), std::move(value));
}

void Report::output(std::string key, bool value) {
  outputs.emplace_back(std::move(key), value ? "true" : "false");
}

void Report::output(std::string key, std::size_t value) {
  outputs.emplace_back(std::move(key), std::to_string(value));
}

std::string Report::render() const {
  std::ostringstream os;
  os << "command = " << command << '\n';
  for (const auto& [k, v] : inputs) os << "input." << k << " = " << v << '\n';
  for (const auto& [k, v] : outputs) os << "output." << k << " = " << v << '\n';
  for (std::size_t k = 0; k < warnings.size(); ++k) {
    os << "warning." << k + 1 << " = " << warnings[k] << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,S,E,I,R\n";
  out.reserve(out.size() + traj.size() * 96);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const State& x = traj.states[k];
    out += format_shortest(traj.times[k]);
    for (double v : x.as_array()) {
      out += ',';
      out += format_shortest(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace seirs::cli
