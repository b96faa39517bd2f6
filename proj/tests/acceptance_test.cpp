// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpc/adversary.hpp"
#include "qpc/harness.hpp"
#include "qpc/protocol.hpp"
#include "qpc/qudit.hpp"
#include "test_support.hpp"

namespace {

using namespace qpc;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Ranking oracle built from a plain sort of the secrets.
Ranking sort_oracle(const std::vector<int>& secrets) {
  std::vector<int> levels(secrets.begin(), secrets.end());
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Ranking out;
  for (int v : levels) {
    out.emplace_back();
    for (std::size_t i = 0; i < secrets.size(); ++i) {
      if (secrets[i] == v) out.back().push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// Trials from criteria 1 and 2, kept for the algebraic-identity check.
struct HonestBatch {
  ExperimentConfig config;
  ExperimentReport report;
};
std::vector<HonestBatch> g_honest;

Verdict honest_correctness(Variant variant, int d, double time_limit_s) {
  ExperimentConfig config;
  config.params = {variant, 5, d, 5, 16, 0.0};
  config.attack = AttackStrategy::none();
  config.trials = 1000;
  config.seed = variant == Variant::TwoTP ? 101 : 202;
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_experiment(config);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t agree = 0;
  for (const auto& t : report.trials) {
    if (t.outcome == to_string(sort_oracle(t.secrets))) ++agree;
  }
  g_honest.push_back({config, report});
  Verdict v;
  v.pass = agree == 1000 && report.aborts == 0 && elapsed < time_limit_s;
  v.detail = std::to_string(agree) + "/1000 rankings match the sort oracle, " + std::to_string(report.aborts) +
             " aborts, " + fmt(elapsed, 3) + " s";
  return v;
}

Verdict algebraic_identity() {
  std::size_t checked = 0, violations = 0;
  for (const auto& batch : g_honest) {
    const auto& p = batch.config.params;
    for (const auto& t : batch.report.trials) {
      const auto run = run_protocol(p, SecretVector{t.secrets}, SharedKeyC{t.key}, batch.config.attack, t.seed);
      if (to_string(run.outcome.ranking) != t.outcome) ++violations;
      const long long c = p.variant == Variant::OneTP ? t.key : 0;
      for (std::size_t i = 0; i < t.secrets.size(); ++i) {
        ++checked;
        if (run.outcome.m_values[i] != run.truth.K + t.secrets[i] + c) ++violations;
        if (run.truth.measured[i] != run.truth.k[i] + t.secrets[i] + c) ++violations;
      }
    }
  }
  return {checked == 10000 && violations == 0,
          std::to_string(checked) + " M_i values checked, " + std::to_string(violations) + " violations"};
}

Verdict outside_attack() {
  const auto attack = AttackStrategy::intercept_resend_random();
  const ProtocolParams params{Variant::TwoTP, 2, 4, 2, 32, 0.0};
  constexpr int kRuns = 10000;
  Rng rng(404);
  const auto est = estimate_detection_rate(attack, params, kRuns, rng);

  const double p_decoy = 0.5 * (1.0 - 1.0 / 4.0);
  const double freq = static_cast<double>(est.decoys_flagged()) / static_cast<double>(est.decoys_checked());

  // Every transmission is tapped, so each check fails with 1 - (1 - p)^l
  // and the run aborts unless all 2n checks pass.
  const double per_transmission = 1.0 - std::pow(1.0 - p_decoy, 32);
  const double run_abort = 1.0 - std::pow(1.0 - per_transmission, 2 * params.n);
  const double sigma_run = std::sqrt(run_abort * (1.0 - run_abort) / kRuns);
  const double check_rate = static_cast<double>(est.checks_failed()) / static_cast<double>(est.checks_run());
  const double sigma_check = std::sqrt(per_transmission * (1.0 - per_transmission) / est.checks_run());

  Verdict v;
  v.pass = std::abs(freq - p_decoy) <= 0.01 && std::abs(est.rate - run_abort) <= 3.0 * sigma_run &&
           std::abs(check_rate - per_transmission) <= 3.0 * sigma_check;
  v.detail = "per-decoy " + fmt(freq) + " vs 0.375 (+-0.01) over " + std::to_string(est.decoys_checked()) +
             " decoys; run abort " + fmt(est.rate) + " vs " + fmt(run_abort, 10) + " (3 sigma " +
             fmt(3 * sigma_run, 3) + "); per-check " + fmt(check_rate) + " vs " + fmt(per_transmission, 10);
  return v;
}

Verdict tp1_attack() {
  // Threshold 1 keeps every check running so the Step-6 computational
  // decoys are observed as well.
  const ProtocolParams params{Variant::TwoTP, 2, 4, 2, 16, 1.0};
  Rng rng(505);
  const auto est = estimate_detection_rate(AttackStrategy::tp1_measure_resend(), params, 10000, rng);
  const auto& s5 = est.by_step.at("step5");
  const auto& s6 = est.by_step.at("step6");
  const auto& s3 = est.by_step.at("step3");
  const double freq = static_cast<double>(s5.fourier.flagged) / static_cast<double>(s5.fourier.checked);
  Verdict v;
  v.pass = std::abs(freq - 0.75) <= 0.01 && s5.computational.checked == 0 && s6.computational.checked > 0 &&
           s6.computational.flagged == 0 && s6.fourier.checked == 0 && s3.fourier.flagged + s3.computational.flagged == 0;
  v.detail = "Step-5 Fourier decoys flagged " + fmt(freq) + " vs 0.75 (+-0.01) over " +
             std::to_string(s5.fourier.checked) + "; computational decoys flagged " +
             std::to_string(s6.computational.flagged) + "/" + std::to_string(s6.computational.checked);
  return v;
}

Verdict tp2_attack() {
  const ProtocolParams params{Variant::TwoTP, 2, 4, 2, 8, 0.0};
  constexpr int kRuns = 10000;
  Rng rng(606);
  const auto attack = AttackStrategy::tp2_measure_resend();
  const auto est = estimate_detection_rate(attack, params, kRuns, rng);
  const auto& s3 = est.by_step.at("step3");
  const std::size_t decoys = s3.computational.checked + s3.fourier.checked;
  const std::size_t flagged = s3.computational.flagged + s3.fourier.flagged;

  const double p = per_decoy_detection_probability(attack, 4);
  const double freq = static_cast<double>(flagged) / static_cast<double>(decoys);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(decoys));

  const double q = 1.0 - std::pow(1.0 - p, params.l);
  const double check_rate = static_cast<double>(s3.failed) / static_cast<double>(s3.checks);
  const double sigma_check = std::sqrt(q * (1 - q) / static_cast<double>(s3.checks));

  // Untapped party -> TP2 links stay clean.
  std::size_t later_flags = 0;
  for (const auto& [step, t] : est.by_step) {
    if (step != "step3") later_flags += t.computational.flagged + t.fourier.flagged;
  }
  Verdict v;
  v.pass = std::abs(p - 0.375) < 1e-12 && std::abs(freq - p) <= 3 * sigma && std::abs(check_rate - q) <= 3 * sigma_check &&
           later_flags == 0;
  v.detail = "Step-3 per-decoy " + fmt(freq) + " vs " + fmt(p) + " (3 sigma " + fmt(3 * sigma, 3) + "); per-check " +
             fmt(check_rate) + " vs " + fmt(q) + " (3 sigma " + fmt(3 * sigma_check, 3) + ") over " +
             std::to_string(kRuns) + " runs";
  return v;
}

std::string dump_without_ordering(const std::vector<Event>& events) {
  std::vector<Event> kept;
  for (const auto& e : events) {
    if (e.kind != "OrderingAnnouncement") kept.push_back(e);
  }
  return to_json(kept).dump();
}

std::string ordering_of(const RunResult& run) {
  for (const auto& e : run.transcript.public_log()) {
    if (e.kind == "OrderingAnnouncement") return e.data.dump();
  }
  return "";
}

Verdict view_independence() {
  const ProtocolParams params{Variant::TwoTP, 3, 13, 5, 8, 0.0};
  const SecretVector a{{2, 4, 1}}, b{{1, 3, 0}}, c{{4, 2, 1}};  // a, b rank alike; c differs
  int seeds = 0, failures = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed, ++seeds) {
    const auto ra = run_two_tp_protocol(params, a, AttackStrategy::none(), seed);
    const auto rb = run_two_tp_protocol(params, b, AttackStrategy::none(), seed);
    const auto rc = run_two_tp_protocol(params, c, AttackStrategy::none(), seed);
    const bool tp1_same = to_json(ra.transcript.view(Role::tp1())).dump() == to_json(rb.transcript.view(Role::tp1())).dump();
    const bool outsider_same = dump_without_ordering(ra.transcript.public_log()) ==
                                   dump_without_ordering(rb.transcript.public_log()) &&
                               dump_without_ordering(ra.transcript.public_log()) ==
                                   dump_without_ordering(rc.transcript.public_log());
    const bool tp1_differs_only_in_ordering =
        dump_without_ordering(ra.transcript.view(Role::tp1())) == dump_without_ordering(rc.transcript.view(Role::tp1()));
    const bool ordering_tracks_ranking = ordering_of(ra) == ordering_of(rb) && ordering_of(ra) != ordering_of(rc);
    if (!(tp1_same && outsider_same && tp1_differs_only_in_ordering && ordering_tracks_ranking)) ++failures;
  }
  return {failures == 0, std::to_string(seeds - failures) + "/" + std::to_string(seeds) +
                             " seeds: TP1 and outsider views byte-identical; ordering differs only with ranking"};
}

Verdict support_soundness() {
  const ProtocolParams params{Variant::TwoTP, 3, 13, 5, 8, 0.0};
  std::mt19937_64 gen(808);
  std::uniform_int_distribution<int> secret(0, 4);
  int audits = 0, failures = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SecretVector s{{secret(gen), secret(gen), secret(gen)}};
    const auto run = run_two_tp_protocol(params, s, AttackStrategy::none(), seed);
    for (int target = 0; target < 3; ++target) {
      std::vector<Role> others;
      for (int i = 0; i < 3; ++i) {
        if (i != target) others.push_back(Role::participant(i));
      }
      for (const Coalition& coalition : {Coalition{{Role::tp1()}, target}, Coalition{others, target}}) {
        ++audits;
        const auto support = secret_support(coalition_view(run.transcript, coalition, params), params);
        if (!support.full(5) || !support.contains(s.values[static_cast<std::size_t>(target)])) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(audits - failures) + "/" + std::to_string(audits) +
                             " audits returned the full support [0,5) containing the true secret"};
}

Verdict engine_properties() {
  using namespace qpc::testing;
  std::mt19937_64 gen(909);
  Rng rng(910);
  int failures = 0;
  std::string first_failure;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first_failure = what;
  };
  auto norm_of = [](const QuditState& s) {
    double n = 0.0;
    for (const auto& a : s.amplitudes()) n += std::norm(a);
    return n;
  };
  for (int d = 2; d <= 16; ++d) {
    const QuditState psi(random_amplitudes(d, gen));
    for (int m = 0; m < d; ++m) {
      if (std::abs(norm_of(apply_shift(psi, m)) - 1.0) > kTolerance) fail("shift norm d=" + std::to_string(d));
      for (int m2 = 0; m2 < d; ++m2) {
        if (!same_state(apply_shift(apply_shift(psi, m), m2), apply_shift(psi, (m + m2) % d))) {
          fail("group law d=" + std::to_string(d));
        }
      }
    }
    if (std::abs(norm_of(qft(psi)) - 1.0) > kTolerance) fail("qft norm d=" + std::to_string(d));
    if (!same_state(iqft(qft(psi)), psi)) fail("iqft d=" + std::to_string(d));
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const double delta = j == k ? 1.0 : 0.0;
        for (const Basis b : {Basis::Computational, Basis::Fourier}) {
          if (std::abs(overlap(basis_state(d, b, j), basis_state(d, b, k)) - delta) > kTolerance) {
            fail("orthonormality d=" + std::to_string(d));
          }
        }
        if (std::abs(overlap(basis_state(d, Basis::Computational, j), basis_state(d, Basis::Fourier, k)) - 1.0 / d) >
            kTolerance) {
          fail("MUB d=" + std::to_string(d));
        }
      }
    }
    const auto f = fourier_matrix(d);
    for (const Basis b : {Basis::Computational, Basis::Fourier}) {
      std::vector<double> probs;
      for (int j = 0; j < d; ++j) {
        std::complex<double> inner;
        for (int k = 0; k < d; ++k) {
          const auto bj = b == Basis::Computational ? std::complex<double>(k == j ? 1.0 : 0.0)
                                                    : f[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
          inner += std::conj(bj) * psi[k];
        }
        probs.push_back(std::norm(inner));
      }
      std::vector<std::size_t> counts(static_cast<std::size_t>(d));
      for (int s = 0; s < 100000; ++s) ++counts[static_cast<std::size_t>(measure(psi, b, rng).value)];
      const double pval = chi_square_p_value(counts, probs);
      if (!(pval > 0.001)) fail("chi-square d=" + std::to_string(d) + " p=" + fmt(pval));
    }
  }
  return {failures == 0, failures == 0 ? "unitarity, group law, orthonormality, MUB 1/d, chi-square p > 0.001 for d=2..16"
                                       : std::to_string(failures) + " failures, first: " + first_failure};
}

Verdict exhaustive_small() {
  std::size_t runs = 0, mismatches = 0;
  std::uint64_t seed = 0;
  for (const Variant variant : {Variant::TwoTP, Variant::OneTP}) {
    for (int n = 2; n <= 3; ++n) {
      for (int r = 1; r <= 4; ++r) {
        const ProtocolParams params{variant, n, minimum_dimension(variant, r), r, 4, 0.0};
        const int vectors = static_cast<int>(std::pow(r, n));
        const int keys = variant == Variant::OneTP ? r : 1;
        for (int code = 0; code < vectors; ++code) {
          std::vector<int> secrets;
          for (int i = 0, rest = code; i < n; ++i, rest /= r) secrets.push_back(rest % r);
          for (int c = 0; c < keys; ++c) {
            const auto run = run_protocol(params, SecretVector{secrets}, SharedKeyC{c}, AttackStrategy::none(), seed++);
            ++runs;
            if (run.outcome.aborted() || run.outcome.ranking != sort_oracle(secrets)) ++mismatches;
          }
        }
      }
    }
  }
  return {mismatches == 0 && runs > 0,
          std::to_string(runs - mismatches) + "/" + std::to_string(runs) + " runs match the sort oracle"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 honest correctness, two-TP (n=5, d=13, r=5)", [] { return honest_correctness(Variant::TwoTP, 13, 10.0); }},
      {"2 honest correctness, one-TP (n=5, d=17, r=5)", [] { return honest_correctness(Variant::OneTP, 17, 1e9); }},
      {"3 algebraic identity M_i = K + s_i (+C)", algebraic_identity},
      {"4 outside intercept-resend detection (d=4, l=32)", outside_attack},
      {"5 TP1 measure-resend detection (d=4)", tp1_attack},
      {"6 TP2 measure-resend detection (d=4)", tp2_attack},
      {"7 view independence of TP1 and outsider", view_independence},
      {"8 secret support soundness (n=3, d=13, r=5)", support_soundness},
      {"9 engine properties for d=2..16", engine_properties},
      {"10 exhaustive small instances", exhaustive_small},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << ": " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
