#pragma once

// Experiment runner: repeated protocol runs with deterministic per-trial
// seeds, aggregate statistics, and JSON / CSV reports.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpc/attack.hpp"
#include "qpc/params.hpp"

namespace qpc {

struct ExperimentConfig {
  ProtocolParams params;
  std::optional<std::vector<int>> secrets;  // nullopt: fresh uniform secrets every trial
  std::optional<int> key;                   // one-TP only; nullopt: fresh uniform C every trial
  AttackStrategy attack;
  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 1;  // affects scheduling only, never results
};

// Throws ConfigError naming the violated constraint.
void validate(const ExperimentConfig& config);

// Seed of trial `index`: a pure function of (master, index).
std::uint64_t trial_seed(std::uint64_t master, std::size_t index);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<int> secrets;
  int key = 0;
  std::string outcome;  // "P2>P1>P3" or "abort:step3"
  bool correct = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct ExperimentReport {
  ProtocolParams params;
  std::string attack;
  std::uint64_t seed = 0;
  std::size_t trial_count = 0;
  std::vector<TrialRecord> trials;
  std::size_t correct = 0;
  std::size_t aborts = 0;
  double correctness_rate = 0.0;
  double abort_rate = 0.0;
  double std_error = 0.0;
  std::optional<double> analytic_abort;      // zero-threshold closed form
  std::optional<double> analytic_per_decoy;  // (1/2)(1 - 1/d) style rate
  std::size_t decoys_checked = 0;
  std::size_t decoys_flagged = 0;

  // Measured, reported on stderr by the CLI, excluded from serialization
  // and comparison so reports stay reproducible.
  double wall_clock_seconds = 0.0;

  bool operator==(const ExperimentReport& other) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& json);

// variant,n,d,r,l,attack,trials,correct,aborts,rate,stderr,analytic
std::string csv_header();
std::string csv_row(const ExperimentReport& report);

enum class SweepAxis { D, L, Attack };

SweepAxis sweep_axis_from_string(std::string_view text);

struct SweepCell {
  ExperimentConfig config;
  std::optional<ExperimentReport> report;
  std::string skipped_reason;  // set when report is empty
};

// One experiment per value along `axis`; cell i uses seed
// trial_seed(base.seed, i). Invalid cells are skipped with a reason.
std::vector<SweepCell> sweep(const ExperimentConfig& base, SweepAxis axis, std::span<const std::string> values);

std::string sweep_csv(std::span<const SweepCell> cells);

}  // namespace qpc
