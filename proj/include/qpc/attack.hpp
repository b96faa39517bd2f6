#pragma once

// Executable attack strategies and their per-qudit action on a link.

#include <string>
#include <string_view>
#include <vector>

#include "qpc/params.hpp"
#include "qpc/qudit.hpp"
#include "qpc/role.hpp"

namespace qpc {

enum class AttackKind {
  None,
  InterceptResendFixed,        // outsider, measure every qudit in one basis
  InterceptResendRandomBasis,  // outsider, fresh random basis per qudit
  TP1MeasureResendT1,          // TP1 taps party -> TP2 links
  TP2MeasureResendT1,          // TP2 taps TP1 -> party links
  OutsiderPassiveClassical,    // reads the classical bus only
};

struct AttackStrategy {
  AttackKind kind = AttackKind::None;
  Basis basis = Basis::Computational;  // InterceptResendFixed only

  static AttackStrategy none() { return {}; }
  static AttackStrategy intercept_resend(Basis b) { return {AttackKind::InterceptResendFixed, b}; }
  static AttackStrategy intercept_resend_random() { return {AttackKind::InterceptResendRandomBasis}; }
  static AttackStrategy tp1_measure_resend() { return {AttackKind::TP1MeasureResendT1}; }
  static AttackStrategy tp2_measure_resend() { return {AttackKind::TP2MeasureResendT1}; }
  static AttackStrategy outsider_classical() { return {AttackKind::OutsiderPassiveClassical}; }

  friend bool operator==(const AttackStrategy&, const AttackStrategy&) = default;
};

// Stable CLI identifiers: none, ir-fixed-t1, ir-fixed-t2, ir-random,
// tp1-mr, tp2-mr, outsider-classical.
std::string attack_id(const AttackStrategy& strategy);
AttackStrategy attack_from_id(std::string_view id);
const std::vector<std::string>& attack_ids();

// Role that mounts the attack and sees its measurement results.
Role attacker_role(const AttackStrategy& strategy);

// Whether the strategy is admissible in this protocol variant. TP attacks
// only exist in the two-TP protocol.
bool supported_in(const AttackStrategy& strategy, Variant variant);

// Links the strategy may tap.
bool taps_link(const AttackStrategy& strategy, Variant variant, const Role& sender, const Role& receiver);

struct Interception {
  Basis basis;
  int outcome;
  QuditState forwarded;
};

// Measure-and-resend on one qudit. Throws ParameterError for strategies
// that do not touch qudits.
Interception intercept(const AttackStrategy& strategy, const QuditState& qudit, Rng& rng);

// The tapped qudit after the attack (identity for None).
QuditState apply_tap(const AttackStrategy& strategy, const QuditState& qudit, Rng& rng);

// Which decoys a detection probability is averaged over.
enum class DecoyScope { All, FourierOnly, ComputationalOnly };

// Probability that a single decoy, prepared uniformly over the admissible
// states, comes back wrong after the attack. Throws ParameterError for
// strategies that never disturb qudits.
double per_decoy_detection_probability(const AttackStrategy& strategy, int d, DecoyScope scope = DecoyScope::All);

}  // namespace qpc
