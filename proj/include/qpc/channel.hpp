#pragma once

// Simulated quantum links with an optional adversary tap, an authenticated
// classical broadcast bus, and the transcript that records what every role
// observes.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qpc/ranking.hpp"
#include "qpc/role.hpp"
#include "qpc/rng.hpp"
#include "qpc/sequence.hpp"

namespace qpc {

using Json = nlohmann::json;

// Which decoys a disclosure / report covers. Step 3 discloses everything;
// Steps 5 and 6 split by preparation basis, Fourier first.
enum class CheckPhase { All, Fourier, Computational };

std::string_view to_string(CheckPhase phase);

struct DisclosedDecoy {
  std::size_t position;
  Basis basis;

  friend bool operator==(const DisclosedDecoy&, const DisclosedDecoy&) = default;
};

struct DecoyDisclosure {
  int party;  // whose transmission this concerns
  CheckPhase phase;
  std::vector<DisclosedDecoy> decoys;

  friend bool operator==(const DecoyDisclosure&, const DecoyDisclosure&) = default;
};

struct MeasurementReport {
  int party;
  CheckPhase phase;
  std::vector<int> outcomes;

  friend bool operator==(const MeasurementReport&, const MeasurementReport&) = default;
};

struct KPrimeAnnouncement {
  std::vector<int> k_primes;

  friend bool operator==(const KPrimeAnnouncement&, const KPrimeAnnouncement&) = default;
};

struct OrderingAnnouncement {
  Ranking ranking;

  friend bool operator==(const OrderingAnnouncement&, const OrderingAnnouncement&) = default;
};

struct AbortMessage {
  std::string step;
  int party;

  friend bool operator==(const AbortMessage&, const AbortMessage&) = default;
};

using ClassicalMessage =
    std::variant<DecoyDisclosure, MeasurementReport, KPrimeAnnouncement, OrderingAnnouncement, AbortMessage>;

std::string_view message_kind(const ClassicalMessage& msg);
Json to_json(const ClassicalMessage& msg);

struct Event {
  std::size_t seq = 0;
  std::string step;
  Role actor;
  bool is_public = false;
  std::vector<Role> audience;  // ignored when is_public
  std::string kind;
  Json data;

  bool visible_to(const Role& role) const;
  friend bool operator==(const Event&, const Event&) = default;
};

Json to_json(const Event& event);
Json to_json(std::span<const Event> events);

// Append-only record of a single protocol run.
class Transcript {
 public:
  // Private event, seen by `actor` and any extra roles in `also_seen_by`.
  void record(std::string step, Role actor, std::string kind, Json data, std::vector<Role> also_seen_by = {});
  void record_public(std::string step, Role actor, std::string kind, Json data);

  const std::vector<Event>& events() const { return events_; }

  // Events the given role(s) observe, in order.
  std::vector<Event> view(const Role& role) const;
  std::vector<Event> view(std::span<const Role> roles) const;
  std::vector<Event> public_log() const;

  Json to_json() const;

 private:
  std::vector<Event> events_;
};

// Authenticated classical channel. Messages arrive unmodified and every
// role, eavesdroppers included, can read the whole log.
class ClassicalBus {
 public:
  struct Posted {
    Role sender;
    std::string step;
    ClassicalMessage message;
  };

  explicit ClassicalBus(Transcript& transcript) : transcript_(&transcript) {}

  void broadcast(Role sender, std::string step, ClassicalMessage message);
  const std::vector<Posted>& log() const { return log_; }

 private:
  Transcript* transcript_;
  std::vector<Posted> log_;
};

struct QuantumLink;

struct TapContext {
  const QuantumLink& link;
  std::size_t position;
  std::string_view step;
  Transcript& transcript;
};

// Adversary hook: receives each qudit in flight and returns what continues
// down the link.
using Tap = std::function<QuditState(QuditState, const TapContext&, Rng&)>;

struct QuantumLink {
  Role sender;
  Role receiver;
  Tap tap;  // empty: identity channel
};

// Sends `sequence` over `link`. Each qudit passes through the tap exactly
// once, in sequence order. Records send and receive events.
TransmissionSequence transmit(const QuantumLink& link, TransmissionSequence&& sequence, Rng& rng,
                              Transcript& transcript, std::string_view step);

}  // namespace qpc
