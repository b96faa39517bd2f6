#include "qpc/attack.hpp"

#include "qpc/errors.hpp"

namespace qpc {
namespace {

// Probability that measuring a `decoy`-basis state in `probe` and resending
// flips the receiver's correct-basis result.
double flip_probability(Basis probe, Basis decoy, int d) { return probe == decoy ? 0.0 : 1.0 - 1.0 / d; }

double scoped(DecoyScope scope, double on_computational, double on_fourier) {
  switch (scope) {
    case DecoyScope::All: return 0.5 * (on_computational + on_fourier);
    case DecoyScope::FourierOnly: return on_fourier;
    case DecoyScope::ComputationalOnly: return on_computational;
  }
  return 0.0;
}

}  // namespace

std::string attack_id(const AttackStrategy& s) {
  switch (s.kind) {
    case AttackKind::None: return "none";
    case AttackKind::InterceptResendFixed: return s.basis == Basis::Computational ? "ir-fixed-t1" : "ir-fixed-t2";
    case AttackKind::InterceptResendRandomBasis: return "ir-random";
    case AttackKind::TP1MeasureResendT1: return "tp1-mr";
    case AttackKind::TP2MeasureResendT1: return "tp2-mr";
    case AttackKind::OutsiderPassiveClassical: return "outsider-classical";
  }
  return "?";
}

const std::vector<std::string>& attack_ids() {
  static const std::vector<std::string> ids{"none",   "ir-fixed-t1", "ir-fixed-t2",       "ir-random",
                                            "tp1-mr", "tp2-mr",      "outsider-classical"};
  return ids;
}

AttackStrategy attack_from_id(std::string_view id) {
  if (id == "none") return AttackStrategy::none();
  if (id == "ir-fixed-t1") return AttackStrategy::intercept_resend(Basis::Computational);
  if (id == "ir-fixed-t2") return AttackStrategy::intercept_resend(Basis::Fourier);
  if (id == "ir-random") return AttackStrategy::intercept_resend_random();
  if (id == "tp1-mr") return AttackStrategy::tp1_measure_resend();
  if (id == "tp2-mr") return AttackStrategy::tp2_measure_resend();
  if (id == "outsider-classical") return AttackStrategy::outsider_classical();
  throw ConfigError("unknown attack '" + std::string(id) + "'");
}

Role attacker_role(const AttackStrategy& s) {
  switch (s.kind) {
    case AttackKind::TP1MeasureResendT1: return Role::tp1();
    case AttackKind::TP2MeasureResendT1: return Role::tp2();
    default: return Role::outsider();
  }
}

bool supported_in(const AttackStrategy& s, Variant variant) {
  const bool tp_attack = s.kind == AttackKind::TP1MeasureResendT1 || s.kind == AttackKind::TP2MeasureResendT1;
  return !tp_attack || variant == Variant::TwoTP;
}

bool taps_link(const AttackStrategy& s, Variant variant, const Role& sender, const Role& receiver) {
  switch (s.kind) {
    case AttackKind::None:
    case AttackKind::OutsiderPassiveClassical: return false;
    case AttackKind::InterceptResendFixed:
    case AttackKind::InterceptResendRandomBasis: return true;
    case AttackKind::TP1MeasureResendT1:
      return variant == Variant::TwoTP && sender.is_party() && receiver == Role::tp2();
    case AttackKind::TP2MeasureResendT1:
      return variant == Variant::TwoTP && sender == Role::tp1() && receiver.is_party();
  }
  return false;
}

Interception intercept(const AttackStrategy& s, const QuditState& qudit, Rng& rng) {
  Basis basis = Basis::Computational;
  switch (s.kind) {
    case AttackKind::InterceptResendFixed: basis = s.basis; break;
    case AttackKind::InterceptResendRandomBasis:
      basis = rng.uniform_int(0, 1) == 0 ? Basis::Computational : Basis::Fourier;
      break;
    case AttackKind::TP1MeasureResendT1:
    case AttackKind::TP2MeasureResendT1: basis = Basis::Computational; break;
    default: throw ParameterError("attack '" + attack_id(s) + "' does not intercept qudits");
  }
  auto result = measure(qudit, basis, rng);
  return {basis, result.value, std::move(result.post_state)};
}

QuditState apply_tap(const AttackStrategy& s, const QuditState& qudit, Rng& rng) {
  if (s.kind == AttackKind::None || s.kind == AttackKind::OutsiderPassiveClassical) return qudit;
  return intercept(s, qudit, rng).forwarded;
}

double per_decoy_detection_probability(const AttackStrategy& s, int d, DecoyScope scope) {
  if (d < 2) throw ParameterError("d must be >= 2");
  switch (s.kind) {
    case AttackKind::InterceptResendFixed:
      return scoped(scope, flip_probability(s.basis, Basis::Computational, d),
                    flip_probability(s.basis, Basis::Fourier, d));
    case AttackKind::InterceptResendRandomBasis: {
      const double on_comp =
          0.5 * (flip_probability(Basis::Computational, Basis::Computational, d) +
                 flip_probability(Basis::Fourier, Basis::Computational, d));
      const double on_fourier = 0.5 * (flip_probability(Basis::Computational, Basis::Fourier, d) +
                                       flip_probability(Basis::Fourier, Basis::Fourier, d));
      return scoped(scope, on_comp, on_fourier);
    }
    case AttackKind::TP1MeasureResendT1:
    case AttackKind::TP2MeasureResendT1:
      return scoped(scope, flip_probability(Basis::Computational, Basis::Computational, d),
                    flip_probability(Basis::Computational, Basis::Fourier, d));
    default: throw ParameterError("no detection probability for attack '" + attack_id(s) + "'");
  }
}

}  // namespace qpc
