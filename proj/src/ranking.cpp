#include "qpc/ranking.hpp"

#include <algorithm>
#include <numeric>

#include "qpc/errors.hpp"
#include "qpc/role.hpp"

namespace qpc {
namespace {

template <typename T>
Ranking rank_impl(std::span<const T> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)];
  });
  Ranking ranking;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int idx = order[pos];
    if (pos > 0 && values[static_cast<std::size_t>(idx)] == values[static_cast<std::size_t>(order[pos - 1])]) {
      ranking.back().push_back(idx);
    } else {
      ranking.push_back({idx});
    }
  }
  for (auto& group : ranking) std::sort(group.begin(), group.end());
  return ranking;
}

}  // namespace

Ranking rank_by_value(std::span<const long long> values) { return rank_impl(values); }
Ranking rank_by_value(std::span<const int> values) { return rank_impl(values); }

std::string to_string(const Ranking& ranking) {
  std::string out;
  for (std::size_t g = 0; g < ranking.size(); ++g) {
    if (g > 0) out += '>';
    for (std::size_t m = 0; m < ranking[g].size(); ++m) {
      if (m > 0) out += '=';
      out += to_string(Role::participant(ranking[g][m]));
    }
  }
  return out;
}

Ranking ranking_from_string(std::string_view text) {
  Ranking ranking;
  if (text.empty()) return ranking;
  ranking.emplace_back();
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '>' || text[i] == '=') {
      const Role role = role_from_string(text.substr(start, i - start));
      if (!role.is_party()) throw ParameterError("ranking entries must be parties");
      ranking.back().push_back(role.party);
      if (i < text.size() && text[i] == '>') ranking.emplace_back();
      start = i + 1;
    }
  }
  return ranking;
}

}  // namespace qpc
