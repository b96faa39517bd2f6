#pragma once

// Independent oracles shared by the unit and acceptance suites. Nothing in
// here calls into the simulator's state-manipulation code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace qpc::testing {

using Vec = std::vector<std::complex<double>>;
using Matrix = std::vector<Vec>;  // row-major

// Shift operator as an explicit d x d matrix, sum_k |k+m mod d><k|.
inline Matrix shift_matrix(int d, int m) {
  Matrix u(static_cast<std::size_t>(d), Vec(static_cast<std::size_t>(d)));
  for (int k = 0; k < d; ++k) u[static_cast<std::size_t>((k + m) % d)][static_cast<std::size_t>(k)] = 1.0;
  return u;
}

// Fourier matrix F[k][j] = exp(2 pi i j k / d) / sqrt(d), evaluated directly.
inline Matrix fourier_matrix(int d) {
  Matrix f(static_cast<std::size_t>(d), Vec(static_cast<std::size_t>(d)));
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      f[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * std::numbers::pi * j * k / d);
    }
  }
  return f;
}

inline Vec mat_vec(const Matrix& m, std::span<const std::complex<double>> v) {
  Vec out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

inline Vec random_amplitudes(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> gauss;
  Vec v(static_cast<std::size_t>(d));
  double norm = 0.0;
  for (auto& a : v) {
    a = {gauss(gen), gauss(gen)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

// Pearson chi-square goodness-of-fit p-value. Cells with an expected count
// below 5 are pooled into one extra bin; zero-probability cells must be empty.
inline double chi_square_p_value(std::span<const std::size_t> observed, std::span<const double> probabilities) {
  std::size_t total = 0;
  for (auto o : observed) total += o;
  double stat = 0.0;
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = probabilities[i] * static_cast<double>(total);
    if (expected < 5.0) {
      if (probabilities[i] == 0.0 && observed[i] != 0) return 0.0;
      pooled_expected += expected;
      pooled_observed += static_cast<double>(observed[i]);
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
    ++cells;
  }
  if (pooled_expected > 0.0) {
    const double diff = pooled_observed - pooled_expected;
    stat += diff * diff / pooled_expected;
    ++cells;
  }
  if (cells < 2) return 1.0;
  boost::math::chi_squared dist(cells - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace qpc::testing
