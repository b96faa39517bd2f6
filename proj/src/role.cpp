#include "qpc/role.hpp"

#include <charconv>

#include "qpc/errors.hpp"

namespace qpc {

std::string to_string(const Role& role) {
  switch (role.kind) {
    case Role::Kind::TP1: return "TP1";
    case Role::Kind::TP2: return "TP2";
    case Role::Kind::TP: return "TP";
    case Role::Kind::Party: return "P" + std::to_string(role.party + 1);
    case Role::Kind::Outsider: return "Outsider";
  }
  return "?";
}

Role role_from_string(std::string_view text) {
  if (text == "TP1") return Role::tp1();
  if (text == "TP2") return Role::tp2();
  if (text == "TP") return Role::tp();
  if (text == "Outsider") return Role::outsider();
  if (text.size() > 1 && text.front() == 'P') {
    int label = 0;
    const auto* first = text.data() + 1;
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, label);
    if (ec == std::errc() && ptr == last && label >= 1) return Role::participant(label - 1);
  }
  throw ParameterError("unknown role '" + std::string(text) + "'");
}

}  // namespace qpc
