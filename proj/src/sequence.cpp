#include "qpc/sequence.hpp"

#include <string>

#include "qpc/errors.hpp"

namespace qpc {

TransmissionSequence::TransmissionSequence(std::vector<QuditState> qudits) {
  slots_.reserve(qudits.size());
  for (auto& q : qudits) {
    if (!slots_.empty() && q.dim() != slots_.front()->dim()) {
      throw ParameterError("all qudits in a sequence must share one dimension");
    }
    slots_.emplace_back(std::move(q));
  }
}

bool TransmissionSequence::occupied(std::size_t position) const {
  return position < slots_.size() && slots_[position].has_value();
}

const QuditState& TransmissionSequence::at(std::size_t position) const {
  if (!occupied(position)) {
    throw ParameterError("sequence slot " + std::to_string(position) + " is empty or out of range");
  }
  return *slots_[position];
}

QuditState TransmissionSequence::take(std::size_t position) {
  if (!occupied(position)) {
    throw ParameterError("sequence slot " + std::to_string(position) + " is empty or out of range");
  }
  QuditState out = std::move(*slots_[position]);
  slots_[position].reset();
  return out;
}

void TransmissionSequence::put(std::size_t position, QuditState state) {
  if (position >= slots_.size()) {
    throw ParameterError("sequence slot " + std::to_string(position) + " out of range");
  }
  slots_[position] = std::move(state);
}

std::vector<std::size_t> TransmissionSequence::occupied_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i]) out.push_back(i);
  }
  return out;
}

std::vector<QuditState> TransmissionSequence::snapshot() const {
  std::vector<QuditState> out;
  for (const auto& slot : slots_) {
    if (slot) out.push_back(*slot);
  }
  return out;
}

}  // namespace qpc
