#pragma once

#include <cstddef>

namespace jladder::detail {

// Cody-Waite split of 2 pi. k * hi is exact for |k| < 2^20; above that the
// reduction error stays below the rounding error already present in x.
inline constexpr double kTwoPiHi = 6.28318530693650245667e+00;
inline constexpr double kTwoPiLo = 2.43084020260247689973e-10;
inline constexpr double kInvTwoPi = 0.15915494309189533577;
inline constexpr double kRoundMagic = 6755399441055744.0;  // 1.5 * 2^52

// cos on [-pi, pi] by its Taylor series through r^30; truncation < 1e-19.
inline double cos_reduced(double r) {
  const double r2 = r * r;
  double p = -3.7699876288159054e-33;
  p = p * r2 + 3.279889237069838e-30;
  p = p * r2 + -2.4795962632247976e-27;
  p = p * r2 + 1.6117375710961184e-24;
  p = p * r2 + -8.896791392450574e-22;
  p = p * r2 + 4.110317623312165e-19;
  p = p * r2 + -1.5619206968586225e-16;
  p = p * r2 + 4.779477332387385e-14;
  p = p * r2 + -1.1470745597729725e-11;
  p = p * r2 + 2.08767569878681e-09;
  p = p * r2 + -2.755731922398589e-07;
  p = p * r2 + 2.48015873015873e-05;
  p = p * r2 + -0.001388888888888889;
  p = p * r2 + 0.041666666666666664;
  p = p * r2 + -0.5;
  p = p * r2 + 1.0;
  return p;
}

/// cos(x) for |x| < 2^20 * 2 pi. The loop form vectorizes under
/// `#pragma omp simd`; the reduction is branch free.
inline double fast_cos(double x) {
  const double k = (x * kInvTwoPi + kRoundMagic) - kRoundMagic;
  const double r = (x - k * kTwoPiHi) - k * kTwoPiLo;
  return cos_reduced(r);
}

/// sum_i weight[i] * cos(phase - t * freq[i]) over the first n entries.
inline double cos_sum(double phase, double t, const double* freq, const double* weight,
                      std::size_t n) {
  double acc = 0.0;
#pragma omp simd reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) {
    const double x = phase - t * freq[i];
    const double k = (x * kInvTwoPi + kRoundMagic) - kRoundMagic;
    const double r = (x - k * kTwoPiHi) - k * kTwoPiLo;
    acc += weight[i] * cos_reduced(r);
  }
  return acc;
}

}  // namespace jladder::detail
