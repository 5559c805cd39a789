#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "seirs/cli.hpp"
#include "seirs/errors.hpp"

namespace seirs::cli {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // of the value
};

const std::set<std::string, std::less<>> kRequired = {"params.beta", "params.mu", "params.gamma",
                                                      "params.k_r", "params.r", "params.epsilon"};

const std::set<std::string, std::less<>> kOptional = {
    "initial.s0",       "initial.e0",           "initial.i0",          "initial.r0",
    "run.horizon",      "run.step",             "ensemble.n_rep",      "ensemble.seed",
    "ensemble.rho_grid", "ensemble.threads",    "simulate.method",     "simulate.quad_n",
    "sde.replica",      "concentration.epsilon_check", "concentration.safety",
    "lyapunov.experiment", "output.trajectory"};

bool is_key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '.' || c == '-';
}

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  return pos;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& what, std::size_t line, std::size_t column) {
  throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        what,
                    line, column);
}

std::map<std::string, Entry, std::less<>> tokenize(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim_right(line);
    std::size_t pos = skip_space(line, 0);
    if (pos == line.size()) continue;

    if (line[pos] == '[') {
      const std::size_t close = line.find(']', pos);
      if (close == std::string_view::npos) fail("unterminated section header", line_no, pos + 1);
      if (skip_space(line, close + 1) != line.size()) {
        fail("unexpected text after section header", line_no, close + 2);
      }
      std::string_view name = line.substr(pos + 1, close - pos - 1);
      const std::size_t name_start = skip_space(name, 0);
      name = trim_right(name.substr(name_start));
      if (name.empty() || !std::all_of(name.begin(), name.end(), is_key_char)) {
        fail("invalid section name", line_no, pos + 2);
      }
      section = std::string(name);
      continue;
    }

    const std::size_t key_start = pos;
    while (pos < line.size() && is_key_char(line[pos])) ++pos;
    if (pos == key_start) fail("expected a key", line_no, key_start + 1);
    std::string key(line.substr(key_start, pos - key_start));
    pos = skip_space(line, pos);
    if (pos == line.size() || line[pos] != '=') fail("expected '='", line_no, pos + 1);
    pos = skip_space(line, pos + 1);
    if (pos == line.size()) fail("missing value for '" + key + "'", line_no, pos + 1);

    std::string full = section.empty() ? key : section + "." + key;
    if (entries.count(full)) fail("duplicate key '" + full + "'", line_no, key_start + 1);
    entries.emplace(std::move(full), Entry{std::string(line.substr(pos)), line_no, pos + 1});
  }
  return entries;
}

double to_double(const Entry& e, std::string_view key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    fail("'" + std::string(key) + "' expects a number, got '" + e.value + "'", e.line, e.column);
  }
  return v;
}

std::uint64_t to_unsigned(const Entry& e, std::string_view key) {
  std::uint64_t v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    fail("'" + std::string(key) + "' expects a non-negative integer, got '" + e.value + "'", e.line,
         e.column);
  }
  return v;
}

bool to_bool(const Entry& e, std::string_view key) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail("'" + std::string(key) + "' expects true or false, got '" + e.value + "'", e.line, e.column);
}

std::vector<double> to_list(const Entry& e, std::string_view key) {
  std::vector<double> out;
  std::string_view rest = e.value;
  std::size_t offset = 0;
  while (true) {
    const std::size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    const std::size_t lead = skip_space(item, 0);
    item = trim_right(item.substr(lead));
    Entry piece{std::string(item), e.line, e.column + offset + lead};
    if (item.empty()) fail("empty item in '" + std::string(key) + "'", piece.line, piece.column);
    out.push_back(to_double(piece, key));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    offset += comma + 1;
  }
  return out;
}

Method to_method(const Entry& e) {
  static const std::pair<const char*, Method> names[] = {{"auto", Method::kAuto},
                                                         {"rk4", Method::kRk4},
                                                         {"trapezoid", Method::kTrapezoid},
                                                         {"euler", Method::kEuler},
                                                         {"cascade", Method::kCascade}};
  for (const auto& [name, m] : names) {
    if (e.value == name) return m;
  }
  fail("unknown simulate.method '" + e.value + "' (auto, rk4, trapezoid, euler, cascade)", e.line,
       e.column);
}

void require(bool ok, const std::string& constraint, std::vector<std::string>& violations) {
  if (!ok) violations.push_back(constraint);
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::kAuto: return "auto";
    case Method::kRk4: return "rk4";
    case Method::kTrapezoid: return "trapezoid";
    case Method::kEuler: return "euler";
    case Method::kCascade: return "cascade";
  }
  return "auto";
}

RunConfig parse_config(std::string_view text) {
  auto entries = tokenize(text);
  RunConfig cfg;
  for (const auto& key : kRequired) {
    if (!entries.count(key)) throw ConfigError("missing required key '" + key + "'", 0, 0);
  }
  for (const auto& [key, entry] : entries) {
    if (!kRequired.count(key) && !kOptional.count(key)) {
      cfg.warnings.push_back("unknown key '" + key + "' at line " + std::to_string(entry.line));
    }
  }

  auto num = [&](std::string_view key, double& out) {
    if (auto it = entries.find(key); it != entries.end()) out = to_double(it->second, key);
  };
  num("params.beta", cfg.params.beta);
  num("params.mu", cfg.params.mu);
  num("params.gamma", cfg.params.gamma);
  num("params.k_r", cfg.params.k_r);
  num("params.r", cfg.params.r);
  num("params.epsilon", cfg.params.epsilon);
  num("initial.s0", cfg.initial.s0);
  num("initial.e0", cfg.initial.e0);
  num("initial.i0", cfg.initial.i0);
  num("initial.r0", cfg.initial.r0);
  num("run.horizon", cfg.horizon);
  cfg.step = default_step(cfg.params);
  num("run.step", cfg.step);
  num("concentration.safety", cfg.safety);
  if (auto it = entries.find("concentration.epsilon_check"); it != entries.end()) {
    cfg.epsilon_check = to_double(it->second, it->first);
  }

  if (auto it = entries.find("ensemble.n_rep"); it != entries.end()) {
    cfg.n_rep = to_unsigned(it->second, it->first);
  }
  if (auto it = entries.find("ensemble.seed"); it != entries.end()) {
    cfg.seed = to_unsigned(it->second, it->first);
  }
  if (auto it = entries.find("ensemble.threads"); it != entries.end()) {
    cfg.threads = static_cast<unsigned>(to_unsigned(it->second, it->first));
  }
  if (auto it = entries.find("ensemble.rho_grid"); it != entries.end()) {
    cfg.rho_grid = to_list(it->second, it->first);
  }
  if (auto it = entries.find("simulate.method"); it != entries.end()) {
    cfg.method = to_method(it->second);
  }
  if (auto it = entries.find("simulate.quad_n"); it != entries.end()) {
    cfg.quad_n = static_cast<int>(std::min<std::uint64_t>(to_unsigned(it->second, it->first), 1u << 30));
  }
  if (auto it = entries.find("sde.replica"); it != entries.end()) {
    cfg.replica = to_unsigned(it->second, it->first);
  }
  if (auto it = entries.find("lyapunov.experiment"); it != entries.end()) {
    cfg.lyapunov_experiment = to_bool(it->second, it->first);
  }
  if (auto it = entries.find("output.trajectory"); it != entries.end()) {
    cfg.trajectory_path = it->second.value;
  }

  validate_config(cfg);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  require_valid(cfg.params);
  (void)make_initial_condition(cfg.initial.e0, cfg.initial.s0, cfg.initial.i0, cfg.initial.r0);
  (void)steps_for(cfg.horizon, cfg.step);

  std::vector<std::string> violations;
  if (cfg.params.r > 0.0) {
    const double ratio = cfg.params.r / cfg.step;
    require(std::abs(ratio - std::round(ratio)) <= 1e-12 * std::max(1.0, ratio) &&
                std::round(ratio) >= 1.0,
            "run.step divides params.r", violations);
  }
  require(cfg.n_rep >= 1, "ensemble.n_rep ≥ 1", violations);
  require(cfg.quad_n >= 8, "simulate.quad_n ≥ 8", violations);
  require(cfg.safety > 0.0 && std::isfinite(cfg.safety), "concentration.safety > 0", violations);
  if (cfg.epsilon_check) {
    require(*cfg.epsilon_check > 0.0 && std::isfinite(*cfg.epsilon_check),
            "concentration.epsilon_check > 0", violations);
  }
  require(std::all_of(cfg.rho_grid.begin(), cfg.rho_grid.end(),
                      [](double v) { return v > 0.0 && std::isfinite(v); }) &&
              std::is_sorted(cfg.rho_grid.begin(), cfg.rho_grid.end()),
          "ensemble.rho_grid positive and nondecreasing", violations);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto line = [&](const char* key, const std::string& value) { os << key << " = " << value << '\n'; };
  auto num = [&](const char* key, double v) { line(key, format_shortest(v)); };

  os << "[params]\n";
  num("beta", cfg.params.beta);
  num("mu", cfg.params.mu);
  num("gamma", cfg.params.gamma);
  num("k_r", cfg.params.k_r);
  num("r", cfg.params.r);
  num("epsilon", cfg.params.epsilon);
  os << "\n[initial]\n";
  num("s0", cfg.initial.s0);
  num("e0", cfg.initial.e0);
  num("i0", cfg.initial.i0);
  num("r0", cfg.initial.r0);
  os << "\n[run]\n";
  num("horizon", cfg.horizon);
  num("step", cfg.step);
  os << "\n[ensemble]\n";
  line("n_rep", std::to_string(cfg.n_rep));
  line("seed", std::to_string(cfg.seed));
  line("threads", std::to_string(cfg.threads));
  if (!cfg.rho_grid.empty()) {
    std::string grid;
    for (std::size_t k = 0; k < cfg.rho_grid.size(); ++k) {
      if (k) grid += ", ";
      grid += format_shortest(cfg.rho_grid[k]);
    }
    line("rho_grid", grid);
  }
  os << "\n[simulate]\n";
  line("method", to_string(cfg.method));
  line("quad_n", std::to_string(cfg.quad_n));
  os << "\n[sde]\n";
  line("replica", std::to_string(cfg.replica));
  os << "\n[concentration]\n";
  if (cfg.epsilon_check) num("epsilon_check", *cfg.epsilon_check);
  num("safety", cfg.safety);
  os << "\n[lyapunov]\n";
  line("experiment", cfg.lyapunov_experiment ? "true" : "false");
  if (!cfg.trajectory_path.empty()) {
    os << "\n[output]\n";
    line("trajectory", cfg.trajectory_path);
  }
  return os.str();
}

LogLevel log_level_from_env() {
  const char* raw = std::getenv("SEIRS_LOG");
  if (!raw) return LogLevel::kInfo;
  const std::string_view v(raw);
  if (v == "quiet") return LogLevel::kQuiet;
  if (v == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

}  // namespace seirs::cli
