#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "seirs/cli.hpp"
#include "seirs/errors.hpp"

namespace {

enum Exit { kOk = 0, kIo = 1, kParse = 2, kValidation = 3, kNumerical = 4 };

seirs::cli::LogLevel g_level = seirs::cli::LogLevel::kInfo;

void log(seirs::cli::LogLevel level, const std::string& msg) {
  if (g_level >= level && level != seirs::cli::LogLevel::kQuiet) std::cerr << "seirs: " << msg << '\n';
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using seirs::cli::LogLevel;
  g_level = seirs::cli::log_level_from_env();

  CLI::App app{"SEIRS epidemic model with latency delay: simulation and stability analysis"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string trajectory_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<unsigned> threads;

  std::vector<std::string> commands(std::begin(seirs::cli::kCommands), std::end(seirs::cli::kCommands));
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--config,-c", config_path, "Configuration document")->required();
  app.add_option("--out,-o", out_path, "Write the report here instead of stdout");
  app.add_option("--seed", seed, "Override ensemble.seed");
  app.add_option("--reps", reps, "Override ensemble.n_rep");
  app.add_option("--threads", threads, "Override ensemble.threads");
  app.add_option("--trajectory", trajectory_path, "Write the trajectory CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }

  std::string text;
  if (!read_file(config_path, text)) {
    std::cerr << "seirs: cannot read config '" << config_path << "'\n";
    return kIo;
  }

  try {
    seirs::cli::RunConfig cfg = seirs::cli::parse_config(text);
    if (seed) cfg.seed = *seed;
    if (reps) cfg.n_rep = *reps;
    if (threads) cfg.threads = *threads;
    if (!trajectory_path.empty()) cfg.trajectory_path = trajectory_path;
    seirs::cli::validate_config(cfg);
    for (const auto& w : cfg.warnings) log(LogLevel::kInfo, "warning: " + w);
    log(LogLevel::kDebug, "config:\n" + seirs::cli::serialize_config(cfg));

    const seirs::cli::RunResult result = seirs::cli::run(command, cfg);
    if (result.trajectory && !cfg.trajectory_path.empty()) {
      if (!write_file(cfg.trajectory_path, seirs::cli::trajectory_csv(*result.trajectory))) {
        std::cerr << "seirs: cannot write trajectory '" << cfg.trajectory_path << "'\n";
        return kIo;
      }
      log(LogLevel::kInfo, "trajectory written to " + cfg.trajectory_path);
    }
    const std::string report = result.report.render();
    if (out_path.empty()) {
      std::cout << report;
    } else if (!write_file(out_path, report)) {
      std::cerr << "seirs: cannot write report '" << out_path << "'\n";
      return kIo;
    }
    log(LogLevel::kDebug, command + " done");
    return kOk;
  } catch (const seirs::ConfigError& e) {
    std::cerr << "seirs: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const seirs::ValidationError& e) {
    std::cerr << "seirs: validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const seirs::Error& e) {
    std::cerr << "seirs: numerical error: " << e.what() << '\n';
    return kNumerical;
  }
}
