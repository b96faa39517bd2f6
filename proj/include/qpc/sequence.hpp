#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpc/qudit.hpp"

namespace qpc {

struct DecoyEntry {
  std::size_t position;
  Basis basis;
  int index;  // prepared basis index j

  friend bool operator==(const DecoyEntry&, const DecoyEntry&) = default;
};

// Everything the sender knows about a sequence it built: where each decoy
// sits and how it was prepared, plus the slot holding the carrier.
struct DecoySpec {
  std::vector<DecoyEntry> entries;
  std::size_t carrier_position = 0;

  std::size_t length() const { return entries.size() + 1; }

  friend bool operator==(const DecoySpec&, const DecoySpec&) = default;
};

// Ordered qudits in flight or held by a receiver. Move-only: a sequence is
// either kept or forwarded, never both. Slots become empty once their
// qudit has been taken (measured or processed).
class TransmissionSequence {
 public:
  TransmissionSequence() = default;
  explicit TransmissionSequence(std::vector<QuditState> qudits);

  TransmissionSequence(TransmissionSequence&&) = default;
  TransmissionSequence& operator=(TransmissionSequence&&) = default;
  TransmissionSequence(const TransmissionSequence&) = delete;
  TransmissionSequence& operator=(const TransmissionSequence&) = delete;

  std::size_t size() const { return slots_.size(); }
  bool occupied(std::size_t position) const;

  // Throws ParameterError if the slot is out of range or already empty.
  const QuditState& at(std::size_t position) const;
  QuditState take(std::size_t position);
  void put(std::size_t position, QuditState state);

  std::vector<std::size_t> occupied_positions() const;

  // Simulator-only peek at all occupied slots, in order. Not available to
  // any protocol role.
  std::vector<QuditState> snapshot() const;

 private:
  std::vector<std::optional<QuditState>> slots_;
};

}  // namespace qpc
