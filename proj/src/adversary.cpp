#include "qpc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qpc/errors.hpp"

namespace qpc {

std::size_t DetectionEstimate::decoys_checked() const {
  std::size_t total = 0;
  for (const auto& [step, t] : by_step) total += t.computational.checked + t.fourier.checked;
  return total;
}

std::size_t DetectionEstimate::decoys_flagged() const {
  std::size_t total = 0;
  for (const auto& [step, t] : by_step) total += t.computational.flagged + t.fourier.flagged;
  return total;
}

std::size_t DetectionEstimate::checks_run() const {
  std::size_t total = 0;
  for (const auto& [step, t] : by_step) total += t.checks;
  return total;
}

std::size_t DetectionEstimate::checks_failed() const {
  std::size_t total = 0;
  for (const auto& [step, t] : by_step) total += t.failed;
  return total;
}

DetectionEstimate estimate_detection_rate(const AttackStrategy& strategy, const ProtocolParams& params, int trials,
                                          Rng& rng) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  validate(params);
  DetectionEstimate est;
  for (int t = 0; t < trials; ++t) {
    SecretVector secrets;
    for (int i = 0; i < params.n; ++i) secrets.values.push_back(rng.uniform_int(0, params.r - 1));
    const SharedKeyC key{rng.uniform_int(0, params.r - 1)};
    const auto run = run_protocol(params, secrets, key, strategy, rng.next_u64());
    ++est.trials;
    if (run.outcome.aborted()) ++est.aborts;
    for (const auto& c : run.checks) {
      auto& tally = est.by_step[c.step];
      ++tally.checks;
      if (!c.passed) ++tally.failed;
      tally.computational.checked += c.computational.checked;
      tally.computational.flagged += c.computational.flagged;
      tally.fourier.checked += c.fourier.checked;
      tally.fourier.flagged += c.fourier.flagged;
    }
  }
  est.rate = static_cast<double>(est.aborts) / static_cast<double>(est.trials);
  est.std_error = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(est.trials));
  return est;
}

int tapped_transmissions(const AttackStrategy& strategy, const ProtocolParams& params) {
  const Role preparer = params.variant == Variant::TwoTP ? Role::tp1() : Role::tp();
  const Role measurer = params.variant == Variant::TwoTP ? Role::tp2() : Role::tp();
  int count = 0;
  for (int i = 0; i < params.n; ++i) {
    const Role p = Role::participant(i);
    if (taps_link(strategy, params.variant, preparer, p)) ++count;
    if (taps_link(strategy, params.variant, p, measurer)) ++count;
  }
  return count;
}

double analytic_transmission_detection(const AttackStrategy& strategy, int d, int l) {
  return 1.0 - std::pow(1.0 - per_decoy_detection_probability(strategy, d), l);
}

std::optional<double> analytic_run_abort_probability(const AttackStrategy& strategy, const ProtocolParams& params) {
  if (params.error_threshold > 0.0) return std::nullopt;
  const int tapped = tapped_transmissions(strategy, params);
  if (tapped == 0) return 0.0;
  // Every checked decoy flags independently, and a run survives only if no
  // decoy on any tapped transmission flags.
  const double survive = std::pow(1.0 - per_decoy_detection_probability(strategy, params.d),
                                  static_cast<double>(params.l) * tapped);
  return 1.0 - survive;
}

void validate(const Coalition& coalition, const ProtocolParams& params) {
  const auto& m = coalition.members;
  if (m.empty()) throw ParameterError("coalition has no members");
  if (coalition.target < 0 || coalition.target >= params.n) throw ParameterError("coalition target out of range");
  std::set<Role> unique(m.begin(), m.end());
  if (unique.size() != m.size()) throw ParameterError("coalition lists a member twice");
  for (const auto& r : m) {
    if (r.is_party()) {
      if (r.party < 0 || r.party >= params.n) throw ParameterError("coalition member " + to_string(r) + " unknown");
      if (r.party == coalition.target) throw ParameterError("the target cannot be a coalition member");
      continue;
    }
    const bool valid_tp = params.variant == Variant::TwoTP ? (r == Role::tp1() || r == Role::tp2()) : r == Role::tp();
    if (!valid_tp && r != Role::outsider()) {
      throw ParameterError("role " + to_string(r) + " does not exist in the " +
                           std::string(to_string(params.variant)) + " protocol");
    }
    if (m.size() != 1) throw ParameterError(to_string(r) + " does not collude with anyone");
  }
}

View coalition_view(const Transcript& transcript, const Coalition& coalition, const ProtocolParams& params) {
  validate(coalition, params);
  return {coalition, transcript.view(coalition.members)};
}

bool SecretSupport::contains(int s) const { return std::binary_search(candidates.begin(), candidates.end(), s); }

namespace {

// Facts a view pins down. Unknown entries stay empty.
struct Evidence {
  std::optional<int> K;
  std::optional<int> C;
  std::vector<std::optional<int>> k, k_prime, measured, secret, shift;
  std::vector<std::optional<long long>> m_value;
  std::optional<Ranking> ranking;

  explicit Evidence(int n)
      : k(static_cast<std::size_t>(n)),
        k_prime(static_cast<std::size_t>(n)),
        measured(static_cast<std::size_t>(n)),
        secret(static_cast<std::size_t>(n)),
        shift(static_cast<std::size_t>(n)),
        m_value(static_cast<std::size_t>(n)) {}
};

Evidence gather(const View& view, int n) {
  Evidence ev(n);
  auto slot = [n](const Json& data) {
    const int p = data.at("party").get<int>();
    if (p < 0 || p >= n) throw ParameterError("view references unknown party");
    return static_cast<std::size_t>(p);
  };
  for (const auto& e : view.events) {
    const Json& data = e.data;
    if (e.kind == "choose_K") {
      ev.K = data.at("K").get<int>();
    } else if (e.kind == "carrier_prepared") {
      const auto p = slot(data);
      ev.k[p] = data.at("k").get<int>();
      ev.k_prime[p] = data.at("k_prime").get<int>();
      ev.K = data.at("K").get<int>();
    } else if (e.kind == "KPrimeAnnouncement") {
      const auto kp = data.at("k_primes").get<std::vector<int>>();
      for (std::size_t i = 0; i < kp.size() && i < ev.k_prime.size(); ++i) ev.k_prime[i] = kp[i];
    } else if (e.kind == "carrier_measured") {
      ev.measured[slot(data)] = data.at("value").get<int>();
    } else if (e.kind == "secret") {
      ev.secret[slot(data)] = data.at("s").get<int>();
    } else if (e.kind == "shared_key") {
      ev.C = data.at("C").get<int>();
    } else if (e.kind == "carrier_encoded") {
      ev.shift[slot(data)] = data.at("shift").get<int>();
    } else if (e.kind == "result_computed") {
      const auto m = data.at("m_values").get<std::vector<long long>>();
      for (std::size_t i = 0; i < m.size() && i < ev.m_value.size(); ++i) ev.m_value[i] = m[i];
    } else if (e.kind == "OrderingAnnouncement") {
      ev.ranking = ranking_from_string(data.at("ranking").get<std::string>());
    }
  }
  return ev;
}

template <typename T>
bool agrees(const std::optional<T>& known, long long value) {
  return !known || static_cast<long long>(*known) == value;
}

// Secrets of party i consistent with the evidence for fixed (K, C).
std::vector<int> feasible_secrets(const Evidence& ev, std::size_t i, int K, int C, const ProtocolParams& params) {
  std::vector<int> out;
  for (int s = 0; s < params.r; ++s) {
    if (!agrees(ev.secret[i], s) || !agrees(ev.shift[i], s + C) || !agrees(ev.m_value[i], K + s + C)) continue;
    for (int k = 0; k < params.r; ++k) {
      if (agrees(ev.k[i], k) && agrees(ev.k_prime[i], K - k) && agrees(ev.measured[i], k + s + C)) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

// Is there an assignment from the per-party sets whose descending order
// (with ties) is exactly `ranking`? Greedy from the lowest group up,
// always taking the smallest admissible common value.
bool ranking_realizable(const Ranking& ranking, const std::vector<std::vector<int>>& feasible, int r) {
  int next = 0;
  for (auto group = ranking.rbegin(); group != ranking.rend(); ++group) {
    std::optional<int> pick;
    for (int x = next; x < r && !pick; ++x) {
      const bool all = std::all_of(group->begin(), group->end(), [&](int p) {
        const auto& f = feasible[static_cast<std::size_t>(p)];
        return std::binary_search(f.begin(), f.end(), x);
      });
      if (all) pick = x;
    }
    if (!pick) return false;
    next = *pick + 1;
  }
  return true;
}

}  // namespace

SecretSupport secret_support(const View& view, const ProtocolParams& params, RankingEvidence ranking) {
  validate(params);
  validate(view.coalition, params);
  if (params.r > 16 || params.d > 64) {
    throw ParameterError("secret_support brute force is limited to r <= 16 and d <= 64");
  }
  const Evidence ev = gather(view, params.n);
  const bool use_ranking = ranking == RankingEvidence::Use && ev.ranking.has_value();
  const auto target = static_cast<std::size_t>(view.coalition.target);
  const int max_c = params.variant == Variant::OneTP ? params.r - 1 : 0;

  std::set<int> support;
  for (int K = params.r - 1; K <= params.d - 1; ++K) {
    if (!agrees(ev.K, K)) continue;
    for (int C = 0; C <= max_c; ++C) {
      if (!agrees(ev.C, C)) continue;
      std::vector<std::vector<int>> feasible;
      bool possible = true;
      for (int i = 0; i < params.n && possible; ++i) {
        feasible.push_back(feasible_secrets(ev, static_cast<std::size_t>(i), K, C, params));
        possible = !feasible.back().empty();
      }
      if (!possible) continue;
      for (const int s : feasible[target]) {
        if (support.contains(s)) continue;
        if (use_ranking) {
          auto pinned = feasible;
          pinned[target] = {s};
          if (!ranking_realizable(*ev.ranking, pinned, params.r)) continue;
        }
        support.insert(s);
      }
    }
  }
  return {view.coalition.target, std::vector<int>(support.begin(), support.end())};
}

}  // namespace qpc
