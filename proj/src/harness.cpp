#include "qpc/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "qpc/adversary.hpp"
#include "qpc/errors.hpp"
#include "qpc/protocol.hpp"

namespace qpc {
namespace {

constexpr std::uint64_t kSecretStream = 7;

struct TrialResult {
  TrialRecord record;
  bool aborted = false;
  std::size_t checked = 0;
  std::size_t flagged = 0;
};

TrialResult run_trial(const ExperimentConfig& config, std::size_t index) {
  const auto& p = config.params;
  TrialResult out;
  out.record.index = index;
  out.record.seed = trial_seed(config.seed, index);

  Rng draws(derive_seed(out.record.seed, kSecretStream));
  SecretVector secrets;
  if (config.secrets) {
    secrets.values = *config.secrets;
  } else {
    for (int i = 0; i < p.n; ++i) secrets.values.push_back(draws.uniform_int(0, p.r - 1));
  }
  const int key = config.key ? *config.key : draws.uniform_int(0, p.r - 1);
  out.record.secrets = secrets.values;
  out.record.key = p.variant == Variant::OneTP ? key : 0;

  const auto run = run_protocol(p, secrets, SharedKeyC{key}, config.attack, out.record.seed);
  out.aborted = run.outcome.aborted();
  if (out.aborted) {
    out.record.outcome = "abort:" + *run.outcome.aborted_at;
  } else {
    out.record.outcome = to_string(run.outcome.ranking);
    out.record.correct = run.outcome.ranking == rank_by_value(std::span<const int>(secrets.values));
  }
  for (const auto& c : run.checks) {
    out.checked += c.checked();
    out.flagged += c.flagged();
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void validate(const ExperimentConfig& config) {
  validate(config.params);
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.threads < 1) throw ConfigError("threads must be >= 1");
  if (config.secrets) validate(config.params, SecretVector{*config.secrets});
  if (config.key) {
    if (config.params.variant != Variant::OneTP) throw ConfigError("the key C only applies to one-tp");
    validate(config.params, SharedKeyC{*config.key});
  }
  if (!supported_in(config.attack, config.params.variant)) {
    throw ConfigError("attack '" + attack_id(config.attack) + "' is only defined for two-tp");
  }
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t index) { return derive_seed(master, index); }

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const auto count = static_cast<std::size_t>(config.trials);
  std::vector<TrialResult> results(count);

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), count);
  if (workers <= 1) {
    for (std::size_t t = 0; t < count; ++t) results[t] = run_trial(config, t);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < count; t += workers) results[t] = run_trial(config, t);
      });
    }
  }

  ExperimentReport report;
  report.params = config.params;
  report.attack = attack_id(config.attack);
  report.seed = config.seed;
  report.trial_count = count;
  // Fold in trial order regardless of which worker finished first.
  for (auto& r : results) {
    if (r.aborted) ++report.aborts;
    if (r.record.correct) ++report.correct;
    report.decoys_checked += r.checked;
    report.decoys_flagged += r.flagged;
    report.trials.push_back(std::move(r.record));
  }
  const double n = static_cast<double>(count);
  report.correctness_rate = static_cast<double>(report.correct) / n;
  report.abort_rate = static_cast<double>(report.aborts) / n;
  report.std_error = std::sqrt(report.abort_rate * (1.0 - report.abort_rate) / n);
  report.analytic_abort = analytic_run_abort_probability(config.attack, config.params);
  if (tapped_transmissions(config.attack, config.params) > 0) {
    report.analytic_per_decoy = per_decoy_detection_probability(config.attack, config.params.d);
  }
  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool ExperimentReport::operator==(const ExperimentReport& o) const {
  return params == o.params && attack == o.attack && seed == o.seed && trial_count == o.trial_count &&
         trials == o.trials && correct == o.correct && aborts == o.aborts && correctness_rate == o.correctness_rate &&
         abort_rate == o.abort_rate && std_error == o.std_error && analytic_abort == o.analytic_abort &&
         analytic_per_decoy == o.analytic_per_decoy && decoys_checked == o.decoys_checked &&
         decoys_flagged == o.decoys_flagged;
}

nlohmann::json to_json(const ExperimentReport& r) {
  using nlohmann::json;
  json trials = json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"index", t.index},
                      {"seed", t.seed},
                      {"secrets", t.secrets},
                      {"key", t.key},
                      {"outcome", t.outcome},
                      {"correct", t.correct}});
  }
  auto optional_number = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"config",
           {{"variant", to_string(r.params.variant)},
            {"n", r.params.n},
            {"d", r.params.d},
            {"r", r.params.r},
            {"l", r.params.l},
            {"threshold", r.params.error_threshold},
            {"attack", r.attack},
            {"seed", r.seed},
            {"trials", r.trial_count}}},
          {"summary",
           {{"correct", r.correct},
            {"aborts", r.aborts},
            {"correctness_rate", r.correctness_rate},
            {"abort_rate", r.abort_rate},
            {"stderr", r.std_error},
            {"analytic_abort", optional_number(r.analytic_abort)},
            {"analytic_per_decoy", optional_number(r.analytic_per_decoy)},
            {"decoys_checked", r.decoys_checked},
            {"decoys_flagged", r.decoys_flagged}}},
          {"trials", std::move(trials)}};
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport r;
  try {
    const auto& c = j.at("config");
    r.params.variant = variant_from_string(c.at("variant").get<std::string>());
    r.params.n = c.at("n").get<int>();
    r.params.d = c.at("d").get<int>();
    r.params.r = c.at("r").get<int>();
    r.params.l = c.at("l").get<int>();
    r.params.error_threshold = c.at("threshold").get<double>();
    r.attack = c.at("attack").get<std::string>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.trial_count = c.at("trials").get<std::size_t>();

    const auto& s = j.at("summary");
    r.correct = s.at("correct").get<std::size_t>();
    r.aborts = s.at("aborts").get<std::size_t>();
    r.correctness_rate = s.at("correctness_rate").get<double>();
    r.abort_rate = s.at("abort_rate").get<double>();
    r.std_error = s.at("stderr").get<double>();
    if (!s.at("analytic_abort").is_null()) r.analytic_abort = s.at("analytic_abort").get<double>();
    if (!s.at("analytic_per_decoy").is_null()) r.analytic_per_decoy = s.at("analytic_per_decoy").get<double>();
    r.decoys_checked = s.at("decoys_checked").get<std::size_t>();
    r.decoys_flagged = s.at("decoys_flagged").get<std::size_t>();

    for (const auto& t : j.at("trials")) {
      r.trials.push_back({t.at("index").get<std::size_t>(), t.at("seed").get<std::uint64_t>(),
                          t.at("secrets").get<std::vector<int>>(), t.at("key").get<int>(),
                          t.at("outcome").get<std::string>(), t.at("correct").get<bool>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string csv_header() { return "variant,n,d,r,l,attack,trials,correct,aborts,rate,stderr,analytic"; }

std::string csv_row(const ExperimentReport& r) {
  std::ostringstream os;
  os << to_string(r.params.variant) << ',' << r.params.n << ',' << r.params.d << ',' << r.params.r << ','
     << r.params.l << ',' << r.attack << ',' << r.trial_count << ',' << r.correct << ',' << r.aborts << ','
     << format_double(r.abort_rate) << ',' << format_double(r.std_error) << ','
     << (r.analytic_abort ? format_double(*r.analytic_abort) : "");
  return os.str();
}

namespace {

int parse_sweep_int(const std::string& text) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) throw std::out_of_range(text);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError("sweep value '" + text + "' is not an integer");
  }
  return value;
}

}  // namespace

SweepAxis sweep_axis_from_string(std::string_view text) {
  if (text == "d") return SweepAxis::D;
  if (text == "l") return SweepAxis::L;
  if (text == "attack") return SweepAxis::Attack;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "' (expected d, l or attack)");
}

std::vector<SweepCell> sweep(const ExperimentConfig& base, SweepAxis axis, std::span<const std::string> values) {
  std::vector<SweepCell> cells;
  for (std::size_t i = 0; i < values.size(); ++i) {
    SweepCell cell{base, std::nullopt, {}};
    cell.config.seed = trial_seed(base.seed, i);
    try {
      switch (axis) {
        case SweepAxis::D: cell.config.params.d = parse_sweep_int(values[i]); break;
        case SweepAxis::L: cell.config.params.l = parse_sweep_int(values[i]); break;
        case SweepAxis::Attack: cell.config.attack = attack_from_id(values[i]); break;
      }
      cell.report = run_experiment(cell.config);
    } catch (const std::invalid_argument& e) {
      cell.skipped_reason = e.what();
    } catch (const std::out_of_range&) {
      cell.skipped_reason = "value '" + values[i] + "' out of range";
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string sweep_csv(std::span<const SweepCell> cells) {
  std::string out = csv_header() + "\n";
  for (const auto& cell : cells) {
    if (cell.report) {
      out += csv_row(*cell.report);
    } else {
      const auto& p = cell.config.params;
      std::ostringstream os;
      os << to_string(p.variant) << ',' << p.n << ',' << p.d << ',' << p.r << ',' << p.l << ','
         << attack_id(cell.config.attack) << ',' << cell.config.trials << ",,,,,";
      out += os.str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace qpc
