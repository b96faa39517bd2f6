// qpc_sim: run multi-party quantum private comparison experiments.
//
//   qpc_sim --variant two-tp --n 3 --d 13 --r 5 --secrets 2,4,1 --trials 100
//   qpc_sim --attack ir-random --d 4 --r 2 --l 32 --trials 1000 --format csv
//   qpc_sim --sweep-axis l --sweep-values 4,8,16,32 --attack ir-random
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpc/errors.hpp"
#include "qpc/harness.hpp"
#include "qpc/protocol.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw qpc::ConfigError("invalid " + what + " '" + text + "'");
  }
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw qpc::ConfigError("invalid seed '" + text + "'");
  return value;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-party quantum private comparison simulator"};

  std::string variant = "two-tp";
  int n = 3, d = 13, r = 5, l = 16, trials = 1, threads = 1;
  std::string secrets = "random", key = "random", attack = "none";
  std::string seed_text, out_path, format = "json", transcript_path;
  double threshold = 0.0;
  std::string sweep_axis;
  std::string sweep_values;

  app.add_option("--variant", variant, "two-tp or one-tp")->check(CLI::IsMember({"two-tp", "one-tp"}));
  app.add_option("--n", n, "number of parties");
  app.add_option("--d", d, "qudit dimension");
  app.add_option("--r", r, "secret bound (secrets lie in [0, r))");
  app.add_option("--l", l, "decoy photons per transmission");
  app.add_option("--secrets", secrets, "comma-separated secrets, or 'random' (resampled per trial)");
  app.add_option("--c", key, "shared key C for one-tp, or 'random'");
  app.add_option("--attack", attack, "attack id")->check(CLI::IsMember(qpc::attack_ids()));
  app.add_option("--trials", trials, "number of protocol runs");
  app.add_option("--seed", seed_text, "master seed (falls back to $QPC_SIM_SEED, then 0)");
  app.add_option("--threshold", threshold, "decoy error-rate threshold in [0, 1]");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads (results do not depend on this)");
  app.add_option("--transcript", transcript_path, "write the JSON transcript of trial 0 here");
  app.add_option("--sweep-axis", sweep_axis, "sweep over d, l or attack")->check(CLI::IsMember({"d", "l", "attack"}));
  app.add_option("--sweep-values", sweep_values, "comma-separated values for the sweep axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    qpc::ExperimentConfig config;
    config.params = {qpc::variant_from_string(variant), n, d, r, l, threshold};
    config.attack = qpc::attack_from_id(attack);
    config.trials = trials;
    config.threads = threads;
    if (secrets != "random") {
      std::vector<int> values;
      for (const auto& s : split(secrets, ',')) values.push_back(parse_int(s, "secret"));
      config.secrets = std::move(values);
    }
    if (key != "random") {
      config.key = parse_int(key, "key C");
    }
    if (!seed_text.empty()) {
      config.seed = parse_seed(seed_text);
    } else if (const char* env = std::getenv("QPC_SIM_SEED"); env != nullptr && *env != '\0') {
      config.seed = parse_seed(env);
    }
    // C is meaningless for two-tp; a leftover default is not an error.
    if (config.params.variant == qpc::Variant::TwoTP && key == "random") config.key.reset();

    if (!sweep_axis.empty()) {
      const auto values = split(sweep_values, ',');
      const auto cells = qpc::sweep(config, qpc::sweep_axis_from_string(sweep_axis), values);
      for (const auto& cell : cells) {
        if (!cell.report) std::cerr << "skipped cell: " << cell.skipped_reason << "\n";
      }
      if (format == "csv") {
        emit(out_path, qpc::sweep_csv(cells));
      } else {
        nlohmann::json doc = nlohmann::json::array();
        for (std::size_t i = 0; i < cells.size(); ++i) {
          doc.push_back(cells[i].report ? nlohmann::json{{"value", values[i]}, {"report", qpc::to_json(*cells[i].report)}}
                                        : nlohmann::json{{"value", values[i]}, {"skipped", cells[i].skipped_reason}});
        }
        emit(out_path, doc.dump(2) + "\n");
      }
      return 0;
    }

    const auto report = qpc::run_experiment(config);
    std::cerr << "wall clock: " << report.wall_clock_seconds << " s\n";
    if (format == "csv") {
      emit(out_path, qpc::csv_header() + "\n" + qpc::csv_row(report) + "\n");
    } else {
      emit(out_path, qpc::to_json(report).dump(2) + "\n");
    }

    if (!transcript_path.empty()) {
      const auto& t0 = report.trials.front();
      const auto run = qpc::run_protocol(config.params, qpc::SecretVector{t0.secrets}, qpc::SharedKeyC{t0.key},
                                         config.attack, t0.seed);
      emit(transcript_path, run.transcript.to_json().dump(2) + "\n");
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
