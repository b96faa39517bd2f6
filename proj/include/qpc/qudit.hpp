#pragma once

// Exact state-vector simulation of a single d-level particle.
//
// Two mutually unbiased bases are supported:
//   Computational  {|j>}
//   Fourier        {F|j>},  F|j> = d^{-1/2} sum_k exp(2 pi i j k / d) |k>
// together with the cyclic shift U_m |k> = |k + m mod d> and projective
// measurement in either basis.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qpc/rng.hpp"

namespace qpc {

using Amplitude = std::complex<double>;

// Tolerance used for every norm / overlap assertion.
inline constexpr double kTolerance = 1e-9;

enum class Basis { Computational, Fourier };

std::string_view to_string(Basis basis);
Basis basis_from_string(std::string_view text);

// Immutable normalized amplitude vector of length d >= 2.
class QuditState {
 public:
  // Throws ParameterError if d < 2 or the vector is not normalized.
  explicit QuditState(std::vector<Amplitude> amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](int k) const { return amplitudes_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<Amplitude> amplitudes_;
};

struct MeasurementOutcome {
  int value;
  QuditState post_state;
};

QuditState basis_state(int d, Basis basis, int j);

// U_m, cyclic modulo d. Requires 0 <= m < d.
QuditState apply_shift(const QuditState& state, int m);

QuditState qft(const QuditState& state);
QuditState iqft(const QuditState& state);

// Probability of each outcome when measuring in `basis`.
std::vector<double> outcome_probabilities(const QuditState& state, Basis basis);

// Projective measurement. Consumes exactly one uniform draw from `rng`
// regardless of the state, so the stream position never depends on data.
MeasurementOutcome measure(const QuditState& state, Basis basis, Rng& rng);

// |<a|b>|^2. Throws ParameterError on dimension mismatch.
double overlap(const QuditState& a, const QuditState& b);

// Equality up to global phase.
bool same_state(const QuditState& a, const QuditState& b, double tol = kTolerance);

}  // namespace qpc
