#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qpc {

enum class Variant {
  TwoTP,  // TP1 prepares carriers, TP2 measures and ranks
  OneTP,  // a single TP does both; parties add a pre-shared key C
};

std::string_view to_string(Variant variant);
Variant variant_from_string(std::string_view text);

struct ProtocolParams {
  Variant variant = Variant::TwoTP;
  int n = 2;  // parties
  int d = 3;  // qudit dimension
  int r = 2;  // every secret (and C) is < r
  int l = 8;  // decoys per transmission
  double error_threshold = 0.0;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

// Smallest admissible d: 2r - 1 (two TPs) or 3r - 1 (one TP), never below 2.
int minimum_dimension(Variant variant, int r);

// Throws ConfigError naming the violated constraint.
void validate(const ProtocolParams& params);

struct SecretVector {
  std::vector<int> values;

  friend bool operator==(const SecretVector&, const SecretVector&) = default;
};

void validate(const ProtocolParams& params, const SecretVector& secrets);

// Key shared by all parties in the one-TP variant.
struct SharedKeyC {
  int value = 0;

  friend bool operator==(const SharedKeyC&, const SharedKeyC&) = default;
};

void validate(const ProtocolParams& params, const SharedKeyC& key);

}  // namespace qpc
