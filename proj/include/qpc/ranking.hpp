#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

// Total preorder over party indices: groups in descending order of value,
// each group holding the (ascending) indices that tie.
using Ranking = std::vector<std::vector<int>>;

// Ranking induced by `values` (larger value ranks first).
Ranking rank_by_value(std::span<const long long> values);
Ranking rank_by_value(std::span<const int> values);

// "P2>P1=P3" style rendering, 1-based party labels.
std::string to_string(const Ranking& ranking);
Ranking ranking_from_string(std::string_view text);

}  // namespace qpc
