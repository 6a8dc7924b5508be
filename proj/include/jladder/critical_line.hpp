#pragma once

// Hardy's Z-function on the critical line.
//
//   Z(t) = exp(i theta(t)) zeta(1/2 + it),   Z(t)^2 = |zeta(1/2 + it)|^2
//
// Two evaluators are provided. The Euler-Maclaurin summation in extended
// precision is slow (O(t) terms) but has a rigorous tail bound and serves as
// the reference. The Riemann-Siegel formula with the corrections C0..C4 costs
// O(sqrt t) and is used from kRiemannSiegelFrom upwards, where its truncation
// error is below 3e-11.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "constants.hpp"
#include "detail/fast_cos.hpp"
#include "detail/rs_coefficients.hpp"
#include "errors.hpp"
#include "roots.hpp"

#include <boost/math/tools/minima.hpp>

namespace jladder {

enum class ZetaBackend { euler_maclaurin, riemann_siegel };

/// hardy_z switches from Euler-Maclaurin to Riemann-Siegel at this ordinate.
inline constexpr double kRiemannSiegelFrom = 1000.0;

/// Largest ordinate supported by the Riemann-Siegel tables.
inline constexpr double kMaxOrdinate = 1.0e9;

struct ZValue {
  double value = 0.0;
  double remainder_estimate = 0.0;  // size of the first omitted term
  bool precision_warning = false;   // remainder_estimate above kZTolerance
  ZetaBackend backend = ZetaBackend::euler_maclaurin;
};

inline constexpr double kZTolerance = 1e-8;

struct CriticalPoint {
  double t = 0.0;
  double z = 0.0;
  double zeta_sq = 0.0;
};

struct ZeroPair {
  double gamma = 0.0;
  double gamma_prime = 0.0;
  double refinement_residual = 0.0;  // max |Z| at the two refined zeros
};

namespace detail {

// B_{2k} / (2k)! for k = 1..30, from B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
inline const std::array<long double, 31>& bernoulli_over_factorial() {
  static const std::array<long double, 31> table = [] {
    std::array<long double, 31> b{};
    const long double two_pi = 6.283185307179586476925286766559L;
    for (int k = 1; k <= 30; ++k) {
      long double z = 0.0L;
      if (k == 1) {
        z = 1.644934066848226436472415166646L;
      } else if (k == 2) {
        z = 1.082323233711138191516003696541L;
      } else {
        for (int n = 3000; n >= 1; --n) z += std::pow(static_cast<long double>(n), -2.0L * k);
      }
      const long double mag = 2.0L * z / std::pow(two_pi, 2.0L * k);
      b[k] = (k % 2 == 1) ? mag : -mag;
    }
    return b;
  }();
  return table;
}

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi via a shifted Stirling
// series; valid for every t >= 0.
inline long double theta_log_gamma(long double t) {
  using cld = std::complex<long double>;
  constexpr int kShift = 16;
  const cld z(0.25L, 0.5L * t);
  const cld w = z + static_cast<long double>(kShift);
  const auto& b = bernoulli_over_factorial();
  cld series = (w - 0.5L) * std::log(w) - w + 0.5L * 1.837877066409345483560659472811L;
  cld wpow = w;
  const cld w2 = w * w;
  long double fact = 2.0L;  // (2k)!
  for (int k = 1; k <= 12; ++k) {
    if (k > 1) fact *= (2.0L * k - 1.0L) * (2.0L * k);
    const long double b2k = b[k] * fact;
    series += b2k / ((2.0L * k) * (2.0L * k - 1.0L) * wpow);
    wpow *= w2;
  }
  long double im = series.imag();
  for (int j = 0; j < kShift; ++j) im -= std::arg(z + static_cast<long double>(j));
  return im - 0.5L * t * 1.144729885849400174143427351353L;
}

inline long double theta_asymptotic(long double t) {
  const long double ti = 1.0L / t;
  const long double ti2 = ti * ti;
  const long double tail =
      ti * (1.0L / 48.0L +
            ti2 * (7.0L / 5760.0L +
                   ti2 * (31.0L / 80640.0L + ti2 * (127.0L / 430080.0L + ti2 * (511.0L / 1216512.0L)))));
  return 0.5L * t * std::log(t / 6.283185307179586476925286766559L) - 0.5L * t -
         0.392699081698724154807830422909L + tail;
}

inline double theta_unchecked(double t) {
  return static_cast<double>(t < 50.0 ? theta_log_gamma(t) : theta_asymptotic(t));
}

// zeta(1/2 + it) by Euler-Maclaurin summation in extended precision.
// Returns the value and a bound on the truncated tail.
inline std::complex<long double> zeta_euler_maclaurin(long double t, long double* tail_bound = nullptr) {
  using cld = std::complex<long double>;
  const cld s(0.5L, t);
  const long double big = std::max(t, 60.0L);
  const long n_terms = static_cast<long>(std::ceil(big / 3.141592653589793238462643383280L)) + 10;
  const long double big_n = static_cast<long double>(n_terms);

  long double re = 0.0L;
  long double im = 0.0L;
  for (long n = n_terms - 1; n >= 1; --n) {
    const long double ln = std::log(static_cast<long double>(n));
    const long double mag = 1.0L / std::sqrt(static_cast<long double>(n));
    re += mag * std::cos(t * ln);
    im -= mag * std::sin(t * ln);
  }
  cld sum(re, im);
  const long double ln_n = std::log(big_n);
  const cld n_pow = std::exp(-s * ln_n);  // N^{-s}
  sum += big_n * n_pow / (s - 1.0L) + 0.5L * n_pow;

  const auto& b = bernoulli_over_factorial();
  cld rising = s / big_n;  // s (s+1) ... (s+2k-2) / N^{2k-1}
  cld corr(0.0L, 0.0L);
  long double last = 0.0L;
  for (int k = 1; k <= 30; ++k) {
    const cld term = b[k] * rising;
    corr += term;
    last = std::abs(term);
    if (last < 1e-24L) break;
    rising *= (s + (2.0L * k - 1.0L)) * (s + 2.0L * k) / (big_n * big_n);
  }
  sum += n_pow * corr;
  if (tail_bound) *tail_bound = last * std::abs(n_pow);
  return sum;
}

inline double z_euler_maclaurin(double t) {
  const long double th = t < 50.0 ? theta_log_gamma(t) : theta_asymptotic(t);
  const std::complex<long double> zeta = zeta_euler_maclaurin(t);
  const std::complex<long double> rot(std::cos(th), std::sin(th));
  return static_cast<double>((rot * zeta).real());
}

struct RsTable {
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
};

inline const RsTable& rs_table() {
  static const RsTable table = [] {
    const auto n_max = static_cast<std::size_t>(std::sqrt(kMaxOrdinate / kTwoPi)) + 2;
    RsTable tab;
    tab.log_n.resize(n_max);
    tab.inv_sqrt_n.resize(n_max);
    for (std::size_t i = 0; i < n_max; ++i) {
      const auto n = static_cast<double>(i + 1);
      tab.log_n[i] = std::log(n);
      tab.inv_sqrt_n[i] = 1.0 / std::sqrt(n);
    }
    return tab;
  }();
  return table;
}

template <std::size_t N>
inline double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline ZValue z_riemann_siegel(double t) {
  const double a = std::sqrt(t / kTwoPi);
  const auto n = static_cast<std::size_t>(a);
  const double p = a - static_cast<double>(n);
  const auto& tab = rs_table();
  const double theta = static_cast<double>(theta_asymptotic(t));
  const double main = 2.0 * cos_sum(theta, t, tab.log_n.data(), tab.inv_sqrt_n.data(), n);

  const double x = p - 0.5;
  const double ia = 1.0 / a;
  const double c4 = horner(kRsC4, x) * ia * ia * ia * ia;
  const double corr = horner(kRsC0, x) + ia * (horner(kRsC1, x) + ia * (horner(kRsC2, x) + ia * horner(kRsC3, x))) + c4;
  const double scale = 1.0 / std::sqrt(a);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}

  ZValue out;
  out.value = main + sign * scale * corr;
  out.remainder_estimate = std::abs(c4) * scale * ia;
  out.precision_warning = out.remainder_estimate > kZTolerance;
  out.backend = ZetaBackend::riemann_siegel;
  return out;
}

// Z(t) for any t >= 0 without domain checks; used by integrals from 0.
inline double z_unchecked(double t) {
  return t < kRiemannSiegelFrom ? z_euler_maclaurin(t) : z_riemann_siegel(t).value;
}

inline double zeta_sq_unchecked(double t) {
  const double z = z_unchecked(t);
  return z * z;
}

inline void require_ordinate(double t, const char* what) {
  if (!(t >= 2.0)) throw DomainError(std::string(what) + ": ordinate must be >= 2, got " + std::to_string(t));
  if (t > kMaxOrdinate) throw DomainError(std::string(what) + ": ordinate above supported range");
}

}  // namespace detail

/// Riemann-Siegel phase theta(t), t >= 2.
inline double rs_theta(double t) {
  detail::require_ordinate(t, "rs_theta");
  return detail::theta_unchecked(t);
}

/// Z(t) with backend and remainder diagnostics.
inline ZValue hardy_z_eval(double t) {
  detail::require_ordinate(t, "hardy_z");
  if (t < kRiemannSiegelFrom) {
    ZValue out;
    out.value = detail::z_euler_maclaurin(t);
    out.backend = ZetaBackend::euler_maclaurin;
    return out;
  }
  return detail::z_riemann_siegel(t);
}

inline double hardy_z(double t) { return hardy_z_eval(t).value; }

/// |zeta(1/2 + it)|^2 through the fast evaluator.
inline double zeta_sq(double t) {
  const double z = hardy_z(t);
  return z * z;
}

/// zeta(1/2 + it) by Euler-Maclaurin summation; reference quality, O(t) cost.
inline std::complex<double> euler_maclaurin_zeta(double t) {
  detail::require_ordinate(t, "euler_maclaurin_zeta");
  const auto v = detail::zeta_euler_maclaurin(t);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

/// |zeta(1/2 + it)|^2 by Euler-Maclaurin summation; reference quality.
inline double euler_maclaurin_zeta_sq(double t) {
  detail::require_ordinate(t, "euler_maclaurin_zeta_sq");
  return static_cast<double>(std::norm(detail::zeta_euler_maclaurin(t)));
}

inline CriticalPoint critical_point(double t) {
  const double z = hardy_z(t);
  return {t, z, z * z};
}

/// Riemann-von Mangoldt main term for the number of zeros with 0 < gamma <= T.
inline double riemann_von_mangoldt(double big_t) {
  const double x = big_t / kTwoPi;
  return x * std::log(x) - x + 0.875;
}

struct ZeroScanConfig {
  double step_factor = 0.5;  // scan step = step_factor * pi / ln t
  double max_span = 1000.0;  // search-exhausted beyond t_start + max_span
  double residual_tol = 1e-9;
};

namespace detail {

struct SignChange {
  double zero = 0.0;
  double residual = 0.0;
  double resume_at = 0.0;  // right end of the bracket
  double resume_value = 0.0;
};

// First sign change of Z strictly after (t, zt), or at t if zt == 0.
inline SignChange next_sign_change(double t, double zt, double limit, const ZeroScanConfig& cfg) {
  if (zt == 0.0) return {t, 0.0, t, 0.0};
  auto z = [](double x) { return hardy_z(x); };
  double p = t;
  double fp = 0.0;  // no previous sample yet
  double a = t;
  double fa = zt;
  while (a < limit) {
    const double step = cfg.step_factor * kPi / std::log(a);
    const double b = std::min(a + step, limit);
    const double fb = hardy_z(b);
    if (fb == 0.0 || (fb > 0.0) != (fa > 0.0)) {
      const RootResult r = refine_sign_change(z, a, fa, b, fb, cfg.residual_tol);
      // resume scanning past the root with the sign it leaves behind
      return {r.x, std::abs(r.fx), b, fb};
    }
    // Three samples of one sign with a dip in the middle: a close pair of
    // zeros can hide inside. Minimize s Z over the dip; if it crosses zero,
    // take the first root and resume from the minimum.
    if (fp != 0.0 && std::abs(fa) < std::abs(fp) && std::abs(fa) < std::abs(fb)) {
      const double sgn = fa > 0.0 ? 1.0 : -1.0;
      const auto m = boost::math::tools::brent_find_minima([&](double x) { return sgn * hardy_z(x); }, p, b, 40);
      if (m.second <= 0.0) {
        const double fm = hardy_z(m.first);
        const RootResult r = refine_sign_change(z, p, fp, m.first, fm, cfg.residual_tol);
        return {r.x, std::abs(r.fx), m.first, fm};
      }
    }
    p = a;
    fp = fa;
    a = b;
    fa = fb;
  }
  throw SearchExhaustedError("zero scan: no sign change of Z before t = " + std::to_string(limit));
}

}  // namespace detail

/// First pair of consecutive zeros of Z at or after t_start.
///
/// Zeros are detected as sign changes on a scan grid of step at most
/// pi / ln t and refined to |Z| <= residual_tol. Pairs closer than a step are
/// caught by minimizing |Z| wherever the samples dip without changing sign.
inline ZeroPair find_zero_pair(double t_start, const ZeroScanConfig& cfg = {}) {
  if (!(t_start >= 10.0)) throw DomainError("find_zero_pair: t_start must be >= 10");
  const double limit = t_start + cfg.max_span;
  const auto first = detail::next_sign_change(t_start, hardy_z(t_start), limit, cfg);
  double resume = first.resume_at;
  double resume_value = first.resume_value;
  if (resume_value == 0.0) {
    // the bracket end is itself a zero; step off it
    resume = std::nextafter(resume + 1e-9 * resume, INFINITY);
    resume_value = hardy_z(resume);
  }
  if (resume <= first.zero) resume = first.zero;
  const auto second = detail::next_sign_change(resume, resume_value, limit, cfg);
  return {first.zero, second.zero, std::max(first.residual, second.residual)};
}

/// All sign changes of Z on [t_from, t_to], refined; t_from >= 10.
inline std::vector<double> scan_zeros(double t_from, double t_to, const ZeroScanConfig& cfg = {}) {
  if (!(t_from >= 10.0)) throw DomainError("scan_zeros: t_from must be >= 10");
  std::vector<double> zeros;
  double t = t_from;
  double zt = hardy_z(t);
  while (t < t_to) {
    detail::SignChange sc;
    try {
      sc = detail::next_sign_change(t, zt, t_to, cfg);
    } catch (const SearchExhaustedError&) {
      break;
    }
    if (sc.zero > t_to) break;
    zeros.push_back(sc.zero);
    t = sc.resume_at;
    zt = sc.resume_value;
    if (zt == 0.0) {
      t = std::nextafter(t + 1e-9 * t, INFINITY);
      zt = hardy_z(t);
    }
  }
  return zeros;
}

}  // namespace jladder
