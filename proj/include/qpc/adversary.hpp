#pragma once

// Attack analysis: Monte-Carlo detection estimates, coalition views over a
// transcript, and brute-force inference of what a view reveals about one
// party's secret.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpc/attack.hpp"
#include "qpc/protocol.hpp"

namespace qpc {

struct StepTally {
  std::size_t checks = 0;
  std::size_t failed = 0;
  BasisTally computational;
  BasisTally fourier;
};

struct DetectionEstimate {
  std::size_t trials = 0;
  std::size_t aborts = 0;
  double rate = 0.0;       // fraction of runs that aborted
  double std_error = 0.0;  // binomial, sqrt(rate (1 - rate) / trials)
  std::map<std::string, StepTally> by_step;

  // Pooled over every decoy that was actually checked.
  std::size_t decoys_checked() const;
  std::size_t decoys_flagged() const;
  std::size_t checks_run() const;
  std::size_t checks_failed() const;
};

// Runs `trials` protocol executions with fresh uniform secrets (and key,
// for one-TP) and reports how often they abort. Seeds for each run are
// drawn from `rng`.
DetectionEstimate estimate_detection_rate(const AttackStrategy& strategy, const ProtocolParams& params, int trials,
                                          Rng& rng);

// Number of transmissions per run the strategy taps.
int tapped_transmissions(const AttackStrategy& strategy, const ProtocolParams& params);

// Probability one checked transmission of l decoys fails a zero-threshold
// check: 1 - (1 - p)^l.
double analytic_transmission_detection(const AttackStrategy& strategy, int d, int l);

// Whole-run abort probability under a zero error threshold, or nullopt if
// the threshold is positive (no closed form implemented).
std::optional<double> analytic_run_abort_probability(const AttackStrategy& strategy, const ProtocolParams& params);

struct Coalition {
  std::vector<Role> members;
  int target = 0;  // party whose secret is sought
};

// Throws ParameterError for coalitions the trust model rules out: a TP (or
// the outsider) never shares its view with anyone else.
void validate(const Coalition& coalition, const ProtocolParams& params);

struct View {
  Coalition coalition;
  std::vector<Event> events;
};

// Union of the members' views, which always includes the public log.
View coalition_view(const Transcript& transcript, const Coalition& coalition, const ProtocolParams& params);

struct SecretSupport {
  int target = 0;
  std::vector<int> candidates;  // ascending

  bool contains(int s) const;
  bool full(int r) const { return static_cast<int>(candidates.size()) == r; }
};

// Whether the final announced ranking counts as evidence. The ranking is
// the intended output of the comparison, so by default the support
// measures only what leaks beyond it.
enum class RankingEvidence { Ignore, Use };

// Every s in [0, r) for the target that is consistent with the view under
// some admissible choice of the unseen randomness (K, k_i, C and other
// parties' secrets). Refuses r > 16 or d > 64.
SecretSupport secret_support(const View& view, const ProtocolParams& params,
                             RankingEvidence ranking = RankingEvidence::Ignore);

}  // namespace qpc
