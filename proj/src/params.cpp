#include "qpc/params.hpp"

#include <algorithm>

#include "qpc/errors.hpp"

namespace qpc {

std::string_view to_string(Variant variant) { return variant == Variant::TwoTP ? "two-tp" : "one-tp"; }

Variant variant_from_string(std::string_view text) {
  if (text == "two-tp") return Variant::TwoTP;
  if (text == "one-tp") return Variant::OneTP;
  throw ConfigError("unknown variant '" + std::string(text) + "' (expected two-tp or one-tp)");
}

int minimum_dimension(Variant variant, int r) {
  const int bound = variant == Variant::TwoTP ? 2 * r - 1 : 3 * r - 1;
  return std::max(2, bound);
}

void validate(const ProtocolParams& p) {
  if (p.n < 2) throw ConfigError("n must be >= 2, got " + std::to_string(p.n));
  if (p.r < 1) throw ConfigError("r must be >= 1, got " + std::to_string(p.r));
  if (p.l < 1) throw ConfigError("l must be >= 1, got " + std::to_string(p.l));
  if (p.d < 2) throw ConfigError("d must be >= 2, got " + std::to_string(p.d));
  if (!(p.error_threshold >= 0.0 && p.error_threshold <= 1.0)) {
    throw ConfigError("error threshold must lie in [0, 1]");
  }
  if (p.variant == Variant::TwoTP && p.d < 2 * p.r - 1) {
    throw ConfigError("TwoTP requires d >= 2r-1 (d=" + std::to_string(p.d) + ", r=" + std::to_string(p.r) + ")");
  }
  if (p.variant == Variant::OneTP && p.d < 3 * p.r - 1) {
    throw ConfigError("OneTP requires d >= 3r-1 (d=" + std::to_string(p.d) + ", r=" + std::to_string(p.r) + ")");
  }
}

void validate(const ProtocolParams& p, const SecretVector& secrets) {
  if (static_cast<int>(secrets.values.size()) != p.n) {
    throw ConfigError("expected " + std::to_string(p.n) + " secrets, got " + std::to_string(secrets.values.size()));
  }
  for (const int s : secrets.values) {
    if (s < 0 || s >= p.r) {
      throw ConfigError("secret " + std::to_string(s) + " violates 0 <= s < r (r=" + std::to_string(p.r) + ")");
    }
  }
}

void validate(const ProtocolParams& p, const SharedKeyC& key) {
  if (key.value < 0 || key.value >= p.r) {
    throw ConfigError("key C=" + std::to_string(key.value) + " violates 0 <= C < r (r=" + std::to_string(p.r) + ")");
  }
}

}  // namespace qpc
