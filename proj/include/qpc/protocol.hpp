#pragma once

// Role logic and orchestration for the two comparison protocols:
//
//   two-TP:  TP1 prepares carriers |k_i>, party P_i shifts by s_i, TP2
//            measures k_i + s_i and adds the k'_i that TP1 announces.
//   one-TP:  a single TP prepares and measures; parties shift by s_i + C
//            with a key C shared among the parties only.
//
// Every quantum transmission carries one carrier among l decoys and is
// checked before the protocol moves on. Since k_i + k'_i = K for all i,
// the ranking of M_i = k_i + s_i (+ C) + k'_i equals the ranking of s_i.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpc/attack.hpp"
#include "qpc/channel.hpp"
#include "qpc/params.hpp"
#include "qpc/qudit.hpp"
#include "qpc/ranking.hpp"
#include "qpc/rng.hpp"
#include "qpc/sequence.hpp"

namespace qpc {

struct CarrierRecord {
  int k;        // in [0, r), encoded in the carrier
  int k_prime;  // K - k, in [0, d)
  int K;

  friend bool operator==(const CarrierRecord&, const CarrierRecord&) = default;
};

struct CarrierBatch {
  int K;
  std::vector<CarrierRecord> carriers;
  std::vector<QuditState> states;
};

// Step 1. K is drawn uniformly from [r-1, d-1], the range for which every
// k' = K - k stays inside [0, d); each k_i is uniform on [0, r).
CarrierBatch tp_prepare_carriers(const ProtocolParams& params, Rng& rng);

struct BuiltTransmission {
  TransmissionSequence sequence;
  DecoySpec spec;
};

// Places `carrier` at a uniformly random slot among l + 1 and fills the
// remaining slots with decoys drawn uniformly from the 2d basis states.
BuiltTransmission build_transmission(QuditState carrier, int l, Rng& rng);

// Receiver side of a check: measures each disclosed slot in its announced
// basis. Measured decoys are consumed.
std::vector<int> measure_decoys(std::span<const DisclosedDecoy> disclosed, TransmissionSequence& received, Rng& rng);

std::size_t count_mismatches(std::span<const DecoyEntry> entries, std::span<const int> outcomes);

std::vector<DisclosedDecoy> disclose(std::span<const DecoyEntry> entries);

// Measure-and-compare in one go. An empty entry set yields 0.
double run_decoy_check(std::span<const DecoyEntry> entries, TransmissionSequence& received, Rng& rng);

// U_{s + offset}. Throws ParameterError when s + offset >= d or either is
// negative.
QuditState encode_secret(const QuditState& carrier, int s, int offset);

struct DisclosurePhases {
  std::vector<DecoyEntry> fourier;        // disclosed and checked first
  std::vector<DecoyEntry> computational;  // then these
};

DisclosurePhases two_phase_disclosure(const DecoySpec& spec);

struct ComparisonOutcome {
  Ranking ranking;
  std::vector<long long> m_values;
  std::optional<std::string> aborted_at;

  bool aborted() const { return aborted_at.has_value(); }
  friend bool operator==(const ComparisonOutcome&, const ComparisonOutcome&) = default;
};

// M_i = measured_i + k'_i as plain integers, ranked with ties.
ComparisonOutcome tp_compute_result(std::span<const int> measured_values, std::span<const int> k_primes);

struct BasisTally {
  std::size_t checked = 0;
  std::size_t flagged = 0;
};

// Outcome of one eavesdropping check.
struct CheckRecord {
  std::string step;  // "step3", "step5", "step6"
  int party;
  Role sender;  // transmission direction that was checked
  Role receiver;
  BasisTally computational;
  BasisTally fourier;
  double error_rate;
  bool passed;

  std::size_t checked() const { return computational.checked + fourier.checked; }
  std::size_t flagged() const { return computational.flagged + fourier.flagged; }
};

// Simulator-side facts about a run, never part of any role's view.
struct GroundTruth {
  int K = 0;
  std::vector<int> k;
  std::vector<int> k_prime;
  std::vector<int> secrets;
  int C = 0;
  std::vector<int> measured;  // filled only if Step 7 was reached
};

struct RunResult {
  Transcript transcript;
  ComparisonOutcome outcome;
  std::vector<CheckRecord> checks;
  GroundTruth truth;
};

// Same (params, secrets, attack, seed) gives a byte-identical transcript.
// Each role draws from its own stream derived from `seed`, so no role's
// randomness depends on another role's private data.
RunResult run_two_tp_protocol(const ProtocolParams& params, const SecretVector& secrets, const AttackStrategy& attack,
                              std::uint64_t seed);

RunResult run_one_tp_protocol(const ProtocolParams& params, const SecretVector& secrets, SharedKeyC key,
                              const AttackStrategy& attack, std::uint64_t seed);

// Dispatches on params.variant; `key` is ignored for two-TP.
RunResult run_protocol(const ProtocolParams& params, const SecretVector& secrets, SharedKeyC key,
                       const AttackStrategy& attack, std::uint64_t seed);

}  // namespace qpc
