#include "qpc/protocol.hpp"

#include <stdexcept>

#include "qpc/errors.hpp"

namespace qpc {
namespace {

// Per-role RNG streams inside one run.
enum Stream : std::uint64_t {
  kPreparerStream = 1,
  kMeasurerStream = 2,
  kAdversaryStream = 3,
  kPartyStreamBase = 100,
};

Json spec_to_json(const DecoySpec& spec) {
  Json entries = Json::array();
  for (const auto& e : spec.entries) {
    entries.push_back({{"position", e.position}, {"basis", to_string(e.basis)}, {"index", e.index}});
  }
  return {{"carrier_position", spec.carrier_position}, {"decoys", std::move(entries)}};
}

Tap make_tap(const AttackStrategy& attack, Variant variant, const Role& sender, const Role& receiver) {
  if (!taps_link(attack, variant, sender, receiver)) return {};
  return [attack](QuditState qudit, const TapContext& ctx, Rng& rng) {
    Interception hit = intercept(attack, qudit, rng);
    ctx.transcript.record(std::string(ctx.step), attacker_role(attack), "tap_measured",
                          {{"from", to_string(ctx.link.sender)},
                           {"to", to_string(ctx.link.receiver)},
                           {"position", ctx.position},
                           {"basis", to_string(hit.basis)},
                           {"outcome", hit.outcome}});
    return std::move(hit.forwarded);
  };
}

std::size_t sole_remaining_slot(const TransmissionSequence& seq) {
  const auto slots = seq.occupied_positions();
  if (slots.size() != 1) throw std::logic_error("expected exactly one undisclosed slot after decoy checks");
  return slots.front();
}

// Shared choreography for both variants. `preparer` runs Steps 1-3,
// `measurer` runs Steps 5-7; in the one-TP variant they are the same role.
class ProtocolRun {
 public:
  ProtocolRun(const ProtocolParams& params, const SecretVector& secrets, SharedKeyC key, const AttackStrategy& attack,
              std::uint64_t seed)
      : params_(params),
        secrets_(secrets),
        offset_(params.variant == Variant::OneTP ? key.value : 0),
        attack_(attack),
        preparer_(params.variant == Variant::TwoTP ? Role::tp1() : Role::tp()),
        measurer_(params.variant == Variant::TwoTP ? Role::tp2() : Role::tp()),
        preparer_rng_(derive_seed(seed, kPreparerStream)),
        measurer_rng_(derive_seed(seed, params.variant == Variant::TwoTP ? kMeasurerStream : kPreparerStream)),
        adversary_rng_(derive_seed(seed, kAdversaryStream)),
        bus_(result_.transcript) {
    validate(params);
    validate(params, secrets);
    if (params.variant == Variant::OneTP) validate(params, key);
    if (!supported_in(attack, params.variant)) {
      throw ConfigError("attack '" + attack_id(attack) + "' is not defined for the " +
                        std::string(to_string(params.variant)) + " protocol");
    }
    for (int i = 0; i < params.n; ++i) party_rngs_.emplace_back(derive_seed(seed, kPartyStreamBase + i));
    result_.truth.secrets = secrets.values;
    result_.truth.C = offset_;
  }

  RunResult execute() {
    prepare_carriers();
    send_to_parties();
    if (!check_step3()) return finish();
    encode_and_forward();
    if (!check_party_phase("step5", CheckPhase::Fourier)) return finish();
    if (!check_party_phase("step6", CheckPhase::Computational)) return finish();
    measure_and_rank();
    return finish();
  }

 private:
  Transcript& transcript() { return result_.transcript; }
  Rng& measurer_rng() { return params_.variant == Variant::TwoTP ? measurer_rng_ : preparer_rng_; }

  void prepare_carriers() {
    for (int i = 0; i < params_.n; ++i) {
      const Role p = Role::participant(i);
      transcript().record("setup", p, "secret", {{"party", i}, {"s", secrets_.values[static_cast<std::size_t>(i)]}});
      if (params_.variant == Variant::OneTP) transcript().record("setup", p, "shared_key", {{"C", offset_}});
    }
    batch_ = tp_prepare_carriers(params_, preparer_rng_);
    transcript().record("step1", preparer_, "choose_K", {{"K", batch_->K}});
    for (int i = 0; i < params_.n; ++i) {
      const auto& c = batch_->carriers[static_cast<std::size_t>(i)];
      transcript().record("step1", preparer_, "carrier_prepared",
                          {{"party", i}, {"k", c.k}, {"k_prime", c.k_prime}, {"K", c.K}});
      result_.truth.k.push_back(c.k);
      result_.truth.k_prime.push_back(c.k_prime);
    }
    result_.truth.K = batch_->K;
  }

  void send_to_parties() {
    for (int i = 0; i < params_.n; ++i) {
      const Role p = Role::participant(i);
      auto built = build_transmission(batch_->states[static_cast<std::size_t>(i)], params_.l, preparer_rng_);
      transcript().record("step2", preparer_, "decoys_prepared", {{"party", i}, {"spec", spec_to_json(built.spec)}});
      const QuantumLink link{preparer_, p, make_tap(attack_, params_.variant, preparer_, p)};
      at_party_.push_back(transmit(link, std::move(built.sequence), adversary_rng_, transcript(), "step2"));
      tp_specs_.push_back(std::move(built.spec));
    }
  }

  // One eavesdropping check. `checker` owns the decoy spec and discloses;
  // `responder` measures and reports back.
  bool run_check(const std::string& step, int party, const Role& checker, const Role& responder,
                 const Role& link_sender, const Role& link_receiver, CheckPhase phase,
                 const std::vector<DecoyEntry>& entries, TransmissionSequence& received, Rng& responder_rng) {
    const auto disclosed = disclose(entries);
    bus_.broadcast(checker, step, DecoyDisclosure{party, phase, disclosed});
    const auto outcomes = measure_decoys(disclosed, received, responder_rng);
    bus_.broadcast(responder, step, MeasurementReport{party, phase, outcomes});

    CheckRecord rec{step, party, link_sender, link_receiver, {}, {}, 0.0, true};
    for (std::size_t e = 0; e < entries.size(); ++e) {
      BasisTally& tally = entries[e].basis == Basis::Computational ? rec.computational : rec.fourier;
      ++tally.checked;
      if (outcomes[e] != entries[e].index) ++tally.flagged;
    }
    rec.error_rate = entries.empty() ? 0.0 : static_cast<double>(rec.flagged()) / static_cast<double>(entries.size());
    rec.passed = rec.error_rate <= params_.error_threshold;
    transcript().record(step, checker, "check_result",
                        {{"party", party},
                         {"phase", to_string(phase)},
                         {"checked", rec.checked()},
                         {"mismatches", rec.flagged()},
                         {"error_rate", rec.error_rate},
                         {"passed", rec.passed}});
    result_.checks.push_back(rec);
    if (!rec.passed) {
      bus_.broadcast(checker, step, AbortMessage{step, party});
      result_.outcome.aborted_at = step;
    }
    return rec.passed;
  }

  bool check_step3() {
    for (int i = 0; i < params_.n; ++i) {
      const Role p = Role::participant(i);
      const auto& spec = tp_specs_[static_cast<std::size_t>(i)];
      if (!run_check("step3", i, preparer_, p, preparer_, p, CheckPhase::All, spec.entries,
                     at_party_[static_cast<std::size_t>(i)], party_rngs_[static_cast<std::size_t>(i)])) {
        return false;
      }
    }
    return true;
  }

  void encode_and_forward() {
    for (int i = 0; i < params_.n; ++i) {
      const Role p = Role::participant(i);
      auto& held = at_party_[static_cast<std::size_t>(i)];
      const std::size_t slot = sole_remaining_slot(held);
      const int s = secrets_.values[static_cast<std::size_t>(i)];
      QuditState encoded = encode_secret(held.take(slot), s, offset_);
      transcript().record("step4", p, "carrier_encoded", {{"party", i}, {"shift", s + offset_}});

      Rng& rng = party_rngs_[static_cast<std::size_t>(i)];
      auto built = build_transmission(std::move(encoded), params_.l, rng);
      transcript().record("step4", p, "decoys_prepared", {{"party", i}, {"spec", spec_to_json(built.spec)}});
      const QuantumLink link{p, measurer_, make_tap(attack_, params_.variant, p, measurer_)};
      at_measurer_.push_back(transmit(link, std::move(built.sequence), adversary_rng_, transcript(), "step4"));
      party_specs_.push_back(std::move(built.spec));
    }
  }

  bool check_party_phase(const std::string& step, CheckPhase phase) {
    for (int i = 0; i < params_.n; ++i) {
      const Role p = Role::participant(i);
      const auto phases = two_phase_disclosure(party_specs_[static_cast<std::size_t>(i)]);
      const auto& entries = phase == CheckPhase::Fourier ? phases.fourier : phases.computational;
      if (!run_check(step, i, p, measurer_, p, measurer_, phase, entries, at_measurer_[static_cast<std::size_t>(i)],
                     measurer_rng())) {
        return false;
      }
    }
    return true;
  }

  void measure_and_rank() {
    std::vector<int> measured;
    for (int i = 0; i < params_.n; ++i) {
      auto& held = at_measurer_[static_cast<std::size_t>(i)];
      const auto outcome = measure(held.take(sole_remaining_slot(held)), Basis::Computational, measurer_rng());
      transcript().record("step7", measurer_, "carrier_measured", {{"party", i}, {"value", outcome.value}});
      measured.push_back(outcome.value);
    }
    std::vector<int> k_primes;
    for (const auto& c : batch_->carriers) k_primes.push_back(c.k_prime);
    if (params_.variant == Variant::TwoTP) bus_.broadcast(preparer_, "step7", KPrimeAnnouncement{k_primes});

    result_.outcome = tp_compute_result(measured, k_primes);
    transcript().record("step7", measurer_, "result_computed", {{"m_values", result_.outcome.m_values}});
    bus_.broadcast(measurer_, "step7", OrderingAnnouncement{result_.outcome.ranking});
    result_.truth.measured = std::move(measured);
  }

  RunResult finish() { return std::move(result_); }

  ProtocolParams params_;
  SecretVector secrets_;
  int offset_;
  AttackStrategy attack_;
  Role preparer_;
  Role measurer_;
  Rng preparer_rng_;
  Rng measurer_rng_;
  Rng adversary_rng_;
  std::vector<Rng> party_rngs_;

  RunResult result_;
  ClassicalBus bus_;
  std::optional<CarrierBatch> batch_;
  std::vector<DecoySpec> tp_specs_;
  std::vector<DecoySpec> party_specs_;
  std::vector<TransmissionSequence> at_party_;
  std::vector<TransmissionSequence> at_measurer_;
};

}  // namespace

CarrierBatch tp_prepare_carriers(const ProtocolParams& params, Rng& rng) {
  validate(params);
  CarrierBatch batch;
  batch.K = rng.uniform_int(params.r - 1, params.d - 1);
  for (int i = 0; i < params.n; ++i) {
    const int k = rng.uniform_int(0, params.r - 1);
    batch.carriers.push_back({k, batch.K - k, batch.K});
    batch.states.push_back(basis_state(params.d, Basis::Computational, k));
  }
  return batch;
}

BuiltTransmission build_transmission(QuditState carrier, int l, Rng& rng) {
  if (l < 1) throw ParameterError("l must be >= 1, got " + std::to_string(l));
  const int d = carrier.dim();
  DecoySpec spec;
  spec.carrier_position = static_cast<std::size_t>(rng.uniform_int(0, l));
  std::vector<QuditState> qudits;
  qudits.reserve(static_cast<std::size_t>(l) + 1);
  for (std::size_t pos = 0; pos <= static_cast<std::size_t>(l); ++pos) {
    if (pos == spec.carrier_position) {
      qudits.push_back(std::move(carrier));
      continue;
    }
    const int draw = rng.uniform_int(0, 2 * d - 1);
    const Basis basis = draw < d ? Basis::Computational : Basis::Fourier;
    const int j = draw % d;
    spec.entries.push_back({pos, basis, j});
    qudits.push_back(basis_state(d, basis, j));
  }
  return {TransmissionSequence(std::move(qudits)), std::move(spec)};
}

std::vector<int> measure_decoys(std::span<const DisclosedDecoy> disclosed, TransmissionSequence& received, Rng& rng) {
  std::vector<int> outcomes;
  outcomes.reserve(disclosed.size());
  for (const auto& d : disclosed) outcomes.push_back(measure(received.take(d.position), d.basis, rng).value);
  return outcomes;
}

std::size_t count_mismatches(std::span<const DecoyEntry> entries, std::span<const int> outcomes) {
  if (entries.size() != outcomes.size()) throw ParameterError("report length does not match disclosed decoys");
  std::size_t mismatches = 0;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    if (outcomes[e] != entries[e].index) ++mismatches;
  }
  return mismatches;
}

std::vector<DisclosedDecoy> disclose(std::span<const DecoyEntry> entries) {
  std::vector<DisclosedDecoy> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({e.position, e.basis});
  return out;
}

double run_decoy_check(std::span<const DecoyEntry> entries, TransmissionSequence& received, Rng& rng) {
  if (entries.empty()) return 0.0;
  const auto outcomes = measure_decoys(disclose(entries), received, rng);
  return static_cast<double>(count_mismatches(entries, outcomes)) / static_cast<double>(entries.size());
}

QuditState encode_secret(const QuditState& carrier, int s, int offset) {
  if (s < 0 || offset < 0) throw ParameterError("secret and offset must be non-negative");
  if (s + offset >= carrier.dim()) {
    throw ParameterError("shift s + offset = " + std::to_string(s + offset) + " must be < d = " +
                         std::to_string(carrier.dim()));
  }
  return apply_shift(carrier, s + offset);
}

DisclosurePhases two_phase_disclosure(const DecoySpec& spec) {
  DisclosurePhases phases;
  for (const auto& e : spec.entries) {
    (e.basis == Basis::Fourier ? phases.fourier : phases.computational).push_back(e);
  }
  return phases;
}

ComparisonOutcome tp_compute_result(std::span<const int> measured_values, std::span<const int> k_primes) {
  if (measured_values.size() != k_primes.size()) {
    throw ParameterError("measured values and k' lists differ in length");
  }
  ComparisonOutcome out;
  for (std::size_t i = 0; i < measured_values.size(); ++i) {
    out.m_values.push_back(static_cast<long long>(measured_values[i]) + k_primes[i]);
  }
  out.ranking = rank_by_value(std::span<const long long>(out.m_values));
  return out;
}

RunResult run_two_tp_protocol(const ProtocolParams& params, const SecretVector& secrets, const AttackStrategy& attack,
                              std::uint64_t seed) {
  if (params.variant != Variant::TwoTP) throw ConfigError("run_two_tp_protocol needs variant two-tp");
  return ProtocolRun(params, secrets, SharedKeyC{}, attack, seed).execute();
}

RunResult run_one_tp_protocol(const ProtocolParams& params, const SecretVector& secrets, SharedKeyC key,
                              const AttackStrategy& attack, std::uint64_t seed) {
  if (params.variant != Variant::OneTP) throw ConfigError("run_one_tp_protocol needs variant one-tp");
  return ProtocolRun(params, secrets, key, attack, seed).execute();
}

RunResult run_protocol(const ProtocolParams& params, const SecretVector& secrets, SharedKeyC key,
                       const AttackStrategy& attack, std::uint64_t seed) {
  return params.variant == Variant::TwoTP ? run_two_tp_protocol(params, secrets, attack, seed)
                                          : run_one_tp_protocol(params, secrets, key, attack, seed);
}

}  // namespace qpc
