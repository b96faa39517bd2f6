#include "qpc/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qpc/errors.hpp"

namespace qpc {
namespace {

void require_dim(int d) {
  if (d < 2) throw ParameterError("qudit dimension must be >= 2, got " + std::to_string(d));
}

// exp(2 pi i * num / d), with num reduced mod d first so large products
// don't lose phase precision.
Amplitude root_of_unity(long long num, int d) {
  const long long reduced = ((num % d) + d) % d;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduced) / d;
  return {std::cos(angle), std::sin(angle)};
}

// sign = +1 applies F, sign = -1 applies F^dagger.
std::vector<Amplitude> fourier(std::span<const Amplitude> in, int sign) {
  const int d = static_cast<int>(in.size());
  std::vector<Amplitude> roots(in.size());
  for (int t = 0; t < d; ++t) roots[static_cast<std::size_t>(t)] = root_of_unity(static_cast<long long>(sign) * t, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Amplitude> out(in.size());
  for (int k = 0; k < d; ++k) {
    Amplitude acc{0.0, 0.0};
    for (int j = 0; j < d; ++j) {
      acc += in[static_cast<std::size_t>(j)] * roots[static_cast<std::size_t>((j * k) % d)];
    }
    out[static_cast<std::size_t>(k)] = acc * norm;
  }
  return out;
}

}  // namespace

std::string_view to_string(Basis basis) {
  return basis == Basis::Computational ? "computational" : "fourier";
}

Basis basis_from_string(std::string_view text) {
  if (text == "computational" || text == "T1") return Basis::Computational;
  if (text == "fourier" || text == "T2") return Basis::Fourier;
  throw ParameterError("unknown basis '" + std::string(text) + "'");
}

QuditState::QuditState(std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {
  require_dim(dim());
  double norm = 0.0;
  for (const auto& a : amplitudes_) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kTolerance) {
    throw ParameterError("amplitudes are not normalized (sum |a|^2 = " + std::to_string(norm) + ")");
  }
}

QuditState basis_state(int d, Basis basis, int j) {
  require_dim(d);
  if (j < 0 || j >= d) {
    throw ParameterError("basis index " + std::to_string(j) + " out of range for d=" + std::to_string(d));
  }
  std::vector<Amplitude> amps(static_cast<std::size_t>(d));
  if (basis == Basis::Computational) {
    amps[static_cast<std::size_t>(j)] = 1.0;
  } else {
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
      amps[static_cast<std::size_t>(k)] = root_of_unity(static_cast<long long>(j) * k, d) * norm;
    }
  }
  return QuditState(std::move(amps));
}

QuditState apply_shift(const QuditState& state, int m) {
  const int d = state.dim();
  if (m < 0 || m >= d) {
    throw ParameterError("shift " + std::to_string(m) + " out of range for d=" + std::to_string(d));
  }
  std::vector<Amplitude> out(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) out[static_cast<std::size_t>((k + m) % d)] = state[k];
  return QuditState(std::move(out));
}

QuditState qft(const QuditState& state) { return QuditState(fourier(state.amplitudes(), +1)); }

QuditState iqft(const QuditState& state) { return QuditState(fourier(state.amplitudes(), -1)); }

std::vector<double> outcome_probabilities(const QuditState& state, Basis basis) {
  // <F_j|psi> is the j-th component of F^dagger psi.
  const std::vector<Amplitude> coeffs =
      basis == Basis::Computational
          ? std::vector<Amplitude>(state.amplitudes().begin(), state.amplitudes().end())
          : fourier(state.amplitudes(), -1);
  std::vector<double> probs;
  probs.reserve(coeffs.size());
  for (const auto& c : coeffs) probs.push_back(std::norm(c));
  return probs;
}

MeasurementOutcome measure(const QuditState& state, Basis basis, Rng& rng) {
  const auto probs = outcome_probabilities(state, basis);
  const double u = rng.uniform_real();
  double cumulative = 0.0;
  int chosen = -1;
  int last_nonzero = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] > 0.0) last_nonzero = static_cast<int>(j);
    cumulative += probs[j];
    if (chosen < 0 && u < cumulative && probs[j] > 0.0) chosen = static_cast<int>(j);
  }
  // Rounding can leave the cumulative sum a hair under 1.
  if (chosen < 0) chosen = last_nonzero;
  return {chosen, basis_state(state.dim(), basis, chosen)};
}

double overlap(const QuditState& a, const QuditState& b) {
  if (a.dim() != b.dim()) {
    throw ParameterError("overlap of states with different dimensions (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
  Amplitude inner{0.0, 0.0};
  for (int k = 0; k < a.dim(); ++k) inner += std::conj(a[k]) * b[k];
  return std::min(1.0, std::norm(inner));
}

bool same_state(const QuditState& a, const QuditState& b, double tol) {
  return a.dim() == b.dim() && overlap(a, b) >= 1.0 - tol;
}

}  // namespace qpc
