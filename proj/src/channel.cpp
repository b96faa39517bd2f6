#include "qpc/channel.hpp"

#include <algorithm>

namespace qpc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json disclosed_to_json(const std::vector<DisclosedDecoy>& decoys) {
  Json out = Json::array();
  for (const auto& d : decoys) out.push_back({{"position", d.position}, {"basis", to_string(d.basis)}});
  return out;
}

}  // namespace

std::string_view to_string(CheckPhase phase) {
  switch (phase) {
    case CheckPhase::All: return "all";
    case CheckPhase::Fourier: return "fourier";
    case CheckPhase::Computational: return "computational";
  }
  return "?";
}

std::string_view message_kind(const ClassicalMessage& msg) {
  return std::visit(Overloaded{
                        [](const DecoyDisclosure&) { return std::string_view("DecoyDisclosure"); },
                        [](const MeasurementReport&) { return std::string_view("MeasurementReport"); },
                        [](const KPrimeAnnouncement&) { return std::string_view("KPrimeAnnouncement"); },
                        [](const OrderingAnnouncement&) { return std::string_view("OrderingAnnouncement"); },
                        [](const AbortMessage&) { return std::string_view("Abort"); },
                    },
                    msg);
}

Json to_json(const ClassicalMessage& msg) {
  return std::visit(
      Overloaded{
          [](const DecoyDisclosure& m) {
            return Json{{"party", m.party}, {"phase", to_string(m.phase)}, {"decoys", disclosed_to_json(m.decoys)}};
          },
          [](const MeasurementReport& m) {
            return Json{{"party", m.party}, {"phase", to_string(m.phase)}, {"outcomes", m.outcomes}};
          },
          [](const KPrimeAnnouncement& m) { return Json{{"k_primes", m.k_primes}}; },
          [](const OrderingAnnouncement& m) { return Json{{"ranking", to_string(m.ranking)}}; },
          [](const AbortMessage& m) { return Json{{"step", m.step}, {"party", m.party}}; },
      },
      msg);
}

bool Event::visible_to(const Role& role) const {
  return is_public || actor == role || std::find(audience.begin(), audience.end(), role) != audience.end();
}

Json to_json(const Event& event) {
  Json out{{"seq", event.seq},       {"step", event.step}, {"actor", to_string(event.actor)},
           {"public", event.is_public}, {"kind", event.kind}, {"data", event.data}};
  if (!event.is_public) {
    Json audience = Json::array();
    for (const auto& r : event.audience) audience.push_back(to_string(r));
    out["audience"] = std::move(audience);
  }
  return out;
}

Json to_json(std::span<const Event> events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(to_json(e));
  return out;
}

void Transcript::record(std::string step, Role actor, std::string kind, Json data, std::vector<Role> also_seen_by) {
  events_.push_back(Event{events_.size(), std::move(step), actor, false, std::move(also_seen_by), std::move(kind),
                          std::move(data)});
}

void Transcript::record_public(std::string step, Role actor, std::string kind, Json data) {
  events_.push_back(Event{events_.size(), std::move(step), actor, true, {}, std::move(kind), std::move(data)});
}

std::vector<Event> Transcript::view(const Role& role) const { return view(std::span<const Role>(&role, 1)); }

std::vector<Event> Transcript::view(std::span<const Role> roles) const {
  std::vector<Event> out;
  for (const auto& e : events_) {
    if (std::any_of(roles.begin(), roles.end(), [&](const Role& r) { return e.visible_to(r); })) out.push_back(e);
  }
  return out;
}

std::vector<Event> Transcript::public_log() const {
  std::vector<Event> out;
  std::copy_if(events_.begin(), events_.end(), std::back_inserter(out), [](const Event& e) { return e.is_public; });
  return out;
}

Json Transcript::to_json() const { return qpc::to_json(std::span<const Event>(events_)); }

void ClassicalBus::broadcast(Role sender, std::string step, ClassicalMessage message) {
  transcript_->record_public(step, sender, std::string(message_kind(message)), to_json(message));
  log_.push_back(Posted{sender, std::move(step), std::move(message)});
}

TransmissionSequence transmit(const QuantumLink& link, TransmissionSequence&& sequence, Rng& rng,
                              Transcript& transcript, std::string_view step) {
  TransmissionSequence in_flight = std::move(sequence);
  const Json header{{"from", to_string(link.sender)}, {"to", to_string(link.receiver)}, {"length", in_flight.size()}};
  transcript.record(std::string(step), link.sender, "sequence_sent", header);
  if (link.tap) {
    for (const std::size_t pos : in_flight.occupied_positions()) {
      TapContext ctx{link, pos, step, transcript};
      in_flight.put(pos, link.tap(in_flight.take(pos), ctx, rng));
    }
  }
  transcript.record(std::string(step), link.receiver, "sequence_received", header);
  return in_flight;
}

}  // namespace qpc
