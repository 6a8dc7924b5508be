#pragma once

#include <cmath>
#include <numbers>

namespace jladder {

inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kLnTwoPi = 1.8378770664093454836;

/// Coefficients of the asymptotic statements about the disconnected set.
struct AsymptoticConstants {
  double one_minus_c = 1.0 - kEulerGamma;
  double gap_lower = 0.18;   // coefficient of T / ln T
  double dist_lower = 0.17;  // coefficient of pi(T)

  /// Upper coefficient of the component length, 1 / (2n + 5).
  [[nodiscard]] static constexpr double len_upper_coeff(int n) { return 1.0 / (2.0 * n + 5.0); }
};

/// Mean distance between consecutive zeros of Z near t, 2 pi / ln(t / 2 pi).
[[nodiscard]] inline double mean_zero_gap(double t) {
  const double lt = std::log(t) - kLnTwoPi;
  return kTwoPi / (lt > 1.0 ? lt : 1.0);
}

}  // namespace jladder
