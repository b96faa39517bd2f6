#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace qpc {

// A protocol participant. Parties are indexed from 0 internally and
// rendered 1-based ("P1", "P2", ...).
struct Role {
  enum class Kind { TP1, TP2, TP, Party, Outsider };

  Kind kind = Kind::Outsider;
  int party = -1;

  static constexpr Role tp1() { return {Kind::TP1, -1}; }
  static constexpr Role tp2() { return {Kind::TP2, -1}; }
  static constexpr Role tp() { return {Kind::TP, -1}; }
  static constexpr Role outsider() { return {Kind::Outsider, -1}; }
  static constexpr Role participant(int index) { return {Kind::Party, index}; }

  bool is_party() const { return kind == Kind::Party; }
  bool is_third_party() const { return kind == Kind::TP1 || kind == Kind::TP2 || kind == Kind::TP; }

  friend auto operator<=>(const Role&, const Role&) = default;
};

std::string to_string(const Role& role);

// Inverse of to_string. Throws ParameterError on unknown names.
Role role_from_string(std::string_view text);

}  // namespace qpc
