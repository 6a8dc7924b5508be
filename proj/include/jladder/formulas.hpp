#pragma once

// Product integrals over the ladder iterates and the verification of the
// identities, transformation formulas and mean-value statements built on them.
//
// Every operation refines the model (see LadderModel::refined) around the
// iterate images it touches before integrating; callers that run many checks
// on the same window can refine once up front and the per-call refinement
// becomes a no-op.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "constants.hpp"
#include "critical_line.hpp"
#include "errors.hpp"
#include "ladder.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "roots.hpp"

namespace jladder {

namespace detail {

// Local phase rate of prod_{k<levels} Z^2(phi^k(t)): factor k oscillates like
// exp(2 i theta(phi^k(t))), i.e. at rate ln(phi^k / 2 pi) (phi^k)'(t), and
// (phi^k)' is a product of Z~^2 values that gets large wherever the factors
// above it are large.
struct ChainRate {
  double rate = 0.0;   // total phase rate of the product, per unit t
  double noise = 0.0;  // relative integrand noise from window interpolation
};

// Errors e_k in the iterates grow as e_k = delta_k + phi_1'(x_{k-1}) e_{k-1};
// each moves the phase of its factor by ln(x_k / 2 pi) e_k.
inline ChainRate chain_phase_rate(const LadderModel& model, double t, int levels) {
  double x = t;
  double jac = 1.0;
  double err = 0.0;
  ChainRate out;
  for (int k = 0; k < levels; ++k) {
    const double log_rate = std::max(std::log(x / kTwoPi), 1.0);
    out.rate += jac * log_rate;
    out.noise += log_rate * err;
    if (k + 1 < levels) {
      const double next = model.value(x);
      const double slope = zeta_sq_unchecked(x) / ladder_defining_slope(next);
      err = model.interpolation_error(x) + slope * err;
      jac *= slope;
      x = next;
    }
  }
  return out;
}

struct ChainPanels {
  std::vector<double> breaks;
  std::vector<double> noise;  // relative noise of the integrand per panel
};

// Breakpoints on [a, b] such that no panel spans more than ~4 pi / density of
// phase in any factor. Uniform zero-gap panels miss the narrow spikes of the
// deeper factors entirely, and an aliased 15-point sample gives a meaningless
// error estimate.
//
// The rounding of t itself (one ulp) moves the phase by rate * ulp(t); on the
// spikes this is far above the Z^2 evaluation noise, and bisecting below it
// only chases rounding. Likewise the window interpolation error, amplified
// down the chain, bounds how well the integrand is known at all.
inline ChainPanels chain_breakpoints(const LadderModel& model, double a, double b, int levels,
                                     const QuadratureConfig& quad) {
  const double quantum = kTwoPi / quad.oscillation_density;
  const double h_max = mean_zero_gap(b) / quad.oscillation_density;
  const double ulp_b = b * std::numeric_limits<double>::epsilon();
  ChainPanels out;
  auto& breaks = out.breaks;
  breaks.push_back(a);
  double t = a;
  ChainRate c = chain_phase_rate(model, t, levels);
  double r = c.rate;
  while (t < b) {
    double h = std::min(h_max, quantum / r);
    double t1 = 0.0;
    double r1 = 0.0;
    ChainRate c1;
    for (;;) {
      t1 = std::min(b, t + h);
      c1 = chain_phase_rate(model, t1, levels);
      r1 = c1.rate;
      if (h * std::max(r, r1) <= 2.0 * quantum || !(t + 0.5 * h > t)) break;
      h *= 0.5;
    }
    breaks.push_back(t1);
    out.noise.push_back(8.0 * std::max(r, r1) * ulp_b + 2.0 * std::max(c.noise, c1.noise));
    if (breaks.size() > quad.max_panels) {
      throw ConvergenceError("product_integral: more than max_panels panels needed on [" + std::to_string(a) +
                             ", " + std::to_string(b) + "]");
    }
    t = t1;
    r = r1;
    c = c1;
  }
  return out;
}

// prod_{k=0}^{count-1} Z^2(phi^k(t)), or with Tilde the factors
// Z~^2(phi^k(t)) = Z^2(phi^k(t)) / F'(phi^{k+1}(t)).
template <bool Tilde>
QuadResult product_integral_impl(const LadderModel& model, double a, double b, int count,
                                 const QuadratureConfig& quad) {
  quad.validate();
  if (count < 0) throw DomainError("product_integral: k_count must be >= 0");
  if (a == b) return {};
  if (b < a) {
    QuadResult r = product_integral_impl<Tilde>(model, b, a, count, quad);
    r.value = -r.value;
    return r;
  }
  if (count == 0) return {b - a, 0.0, 0};  // empty product
  // deep zero-gap images shrink to a few ulp; the samples then sit on a handful
  // of representable points and the chain below them is not resolved at all
  if (b - a < 0x1p20 * std::numeric_limits<double>::epsilon() * std::abs(b)) {
    throw ConvergenceError("product_integral: [" + std::to_string(a) + ", " + std::to_string(b) + "] spans " +
                           std::to_string(static_cast<long long>((b - a) / (std::numeric_limits<double>::epsilon() * std::abs(b)))) +
                           " ulp, below double resolution");
  }
  // range errors surface here, before any quadrature work
  (void)model.iterate(a, Tilde ? count : count - 1);
  (void)model.iterate(b, Tilde ? count : count - 1);
  auto f = [&model, count](double t) {
    double x = t;
    double p = 1.0;
    for (int k = 0; k < count; ++k) {
      const double z2 = zeta_sq_unchecked(x);
      if constexpr (Tilde) {
        const double next = model.value(x);
        p *= z2 / ladder_defining_slope(next);
        x = next;
      } else {
        p *= z2;
        if (k + 1 < count) x = model.value(x);
      }
    }
    return p;
  };
  const auto panels = chain_breakpoints(model, a, b, count, quad);
  return integrate_breakpoints(f, panels.breaks, quad.rel_tol, 0.0, quad.max_panels, quad.noise_rel, &panels.noise);
}

inline double rel_error(const QuadResult& r) { return r.value != 0.0 ? std::abs(r.error / r.value) : r.error; }

}  // namespace detail

/// int_a^b prod_{k=0}^{k_count-1} |zeta(1/2 + i phi_1^k(t))|^2 dt.
inline QuadResult product_integral(const LadderModel& model, double a, double b, int k_count,
                                   const QuadratureConfig& quad = {}) {
  return detail::product_integral_impl<false>(model, a, b, k_count, quad);
}

/// int_a^b prod_{k=0}^{k_count-1} Z~^2(phi_1^k(t)) dt.
inline QuadResult product_integral_ztilde(const LadderModel& model, double a, double b, int k_count,
                                          const QuadratureConfig& quad = {}) {
  return detail::product_integral_impl<true>(model, a, b, k_count, quad);
}

/// phi_1^k(T + U) - phi_1^k(T).
///
/// Normally the plain difference of iterates. When the images have collapsed
/// (a zero-gap window several levels down spans 1e-11 and less), the difference
/// is below what the windows resolve and the span is taken as the integral of
/// the chain derivative, prod Z~^2(phi^j(t)), which telescopes to the same thing.
inline double iterate_span(const LadderModel& model, double big_t, double u, int k) {
  const double a = model.iterate(big_t, k);
  const double b = model.iterate(big_t + u, k);
  const double diff = b - a;
  if (k == 0) return diff;
  double noise = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  for (int j = 1; j <= k; ++j) {
    noise += model.interpolation_error(model.iterate(big_t, j)) + model.interpolation_error(model.iterate(big_t + u, j));
  }
  if (noise <= 1e-6 * std::abs(diff)) return diff;
  QuadratureConfig quad;
  quad.rel_tol = 1e-10;
  return product_integral_ztilde(model, big_t, big_t + u, k, quad).value;
}

/// Change of variables through l ladder steps:
///   int_T^{T+U} prod_0^n Z~^2(phi^k(t)) dt
///     = int_{phi^l(T)}^{phi^l(T+U)} prod_0^{n-l} Z~^2(phi^k(u)) du.
inline RatioRecord verify_identity_61(const LadderModel& model, double big_t, double u, int n, int l,
                                      const QuadratureConfig& quad = {}) {
  if (!(l >= 1 && l <= n)) throw DomainError("verify_identity: need 1 <= l <= n");
  if (!(u > 0.0)) throw DomainError("verify_identity: U must be positive");
  const auto m = model.refined(big_t, big_t + u, n + 1);
  const auto lhs = product_integral_ztilde(m, big_t, big_t + u, n + 1, quad);
  const auto rhs = product_integral_ztilde(m, m.iterate(big_t, l), m.iterate(big_t + u, l), n - l + 1, quad);
  return make_record("identity-6.1", big_t, u, l, n, lhs.value, rhs.value,
                     detail::rel_error(lhs) + detail::rel_error(rhs));
}

namespace detail {

inline RatioRecord conjugate_record(const LadderModel& model, std::string label, double big_t, double u, int l,
                                    const QuadratureConfig& quad) {
  const auto m = model.refined(big_t, big_t + u, 2 * l);
  const auto lhs = product_integral(m, m.iterate(big_t, l), m.iterate(big_t + u, l), l, quad);
  const auto base = product_integral(m, big_t, big_t + u, l, quad);
  const double coeff = iterate_span(m, big_t, u, 2 * l) / iterate_span(m, big_t, u, l);
  return make_record(std::move(label), big_t, u, l, 2 * l, lhs.value, coeff * base.value,
                     rel_error(lhs) + rel_error(base));
}

}  // namespace detail

/// Conjugate integrals: the integral over [phi^l(T), phi^l(T+U)] against
/// (span_{2l} / span_l) times the integral over [T, T+U], l factors each.
inline RatioRecord conjugate_ratio(const LadderModel& model, double big_t, double u, int l,
                                   const QuadratureConfig& quad = {}) {
  if (l < 1) throw DomainError("conjugate_ratio: l must be >= 1");
  require_admissible_u(big_t, u, "conjugate_ratio");
  return detail::conjugate_record(model, "thm-2.1", big_t, u, l, quad);
}

/// Conjugate ratio on the window between two consecutive zeros of Z found at
/// or after gamma_seed.
inline RatioRecord zero_gap_experiment(const LadderModel& model, double gamma_seed, int l = 7,
                                       const QuadratureConfig& quad = {}, ZeroPair* pair_out = nullptr) {
  if (l < 1) throw DomainError("zero_gap_experiment: l must be >= 1");
  const ZeroPair pair = find_zero_pair(gamma_seed);
  if (pair_out) *pair_out = pair;
  const double u = pair.gamma_prime - pair.gamma;
  require_admissible_u(pair.gamma, u, "zero_gap_experiment");
  return detail::conjugate_record(model, "zero-gap-2.2", pair.gamma, u, l, quad);
}

/// Factorization of the (n+1)-fold mean value over [T, T+U] into the means of
/// a proper partition n + 1 = a_1 + ... + a_s, each weighted by
/// g = U / span_a. Parts are sorted first, so any ordering gives the same
/// right-hand side bit for bit.
inline RatioRecord factorization_ratio(const LadderModel& model, double big_t, double u, int n,
                                       std::vector<int> partition, const QuadratureConfig& quad = {}) {
  if (n < 1) throw DomainError("factorization_ratio: n must be >= 1");
  require_admissible_u(big_t, u, "factorization_ratio");
  if (partition.size() < 2) throw DomainError("factorization_ratio: the partition n+1 = n+1 is excluded");
  int sum = 0;
  for (const int a : partition) {
    if (a < 1 || a > n) throw DomainError("factorization_ratio: parts must lie in [1, n]");
    sum += a;
  }
  if (sum != n + 1) throw DomainError("factorization_ratio: parts must sum to n + 1");
  std::sort(partition.begin(), partition.end());

  const auto m = model.refined(big_t, big_t + u, n + 1);
  auto g = [&](int a) { return u / iterate_span(m, big_t, u, a); };
  const auto full = product_integral(m, big_t, big_t + u, n + 1, quad);
  const double lhs = g(n + 1) * full.value / u;
  double rhs = 1.0;
  double err = detail::rel_error(full);
  int prev = 0;
  QuadResult part{};
  for (const int a : partition) {
    if (a != prev) {
      part = product_integral(m, big_t, big_t + u, a, quad);
      prev = a;
    }
    rhs *= g(a) * part.value / u;
    err += detail::rel_error(part);
  }
  std::string label = "fact-1.7[";
  for (std::size_t i = 0; i < partition.size(); ++i) label += (i ? "+" : "") + std::to_string(partition[i]);
  label += "]";
  return make_record(std::move(label), big_t, u, static_cast<int>(partition.size()), n, lhs, rhs, err);
}

// ---------------------------------------------------------------------------
// External mean values

enum class MeanValueVariant { cor1, cor2 };

inline const char* to_string(MeanValueVariant v) { return v == MeanValueVariant::cor1 ? "cor1" : "cor2"; }

struct HostedTau {
  int k = 0;
  double tau = 0.0;
  double lo = 0.0;  // phi^k(T)
  double hi = 0.0;  // phi^k(T+U)
  [[nodiscard]] bool inside() const { return tau > lo && tau < hi; }
};

struct MeanValueWitness {
  int l = 0;
  MeanValueVariant variant = MeanValueVariant::cor1;
  double T = 0.0;
  double U = 0.0;
  double t_l = 0.0;      // point of (T, T+U) whose iterates are the taus
  double alpha_l = 0.0;  // phi^l(t_l)
  double integral = 0.0;
  double target = 0.0;  // value the product of |zeta(tau_k)|^2 has to take
  double achieved = 0.0;
  double residual = 0.0;  // |achieved - target| / target
  std::vector<HostedTau> taus;

  [[nodiscard]] bool all_inside() const {
    return std::all_of(taus.begin(), taus.end(), [](const HostedTau& h) { return h.inside(); });
  }
};

inline constexpr int kMeanValueProfilePoints = 512;

/// |zeta| at or below this counts as a zero (root-finder residual of the scanner).
inline constexpr double kZeroResidual = 1e-9;

/// Product of |zeta(1/2 + i phi^k(t))|^2 over k = first .. first+count-1.
inline double iterate_zeta_product(const LadderModel& model, double t, int first, int count) {
  double x = model.iterate(t, first);
  double p = 1.0;
  for (int k = 0; k < count; ++k) {
    p *= detail::zeta_sq_unchecked(x);
    if (k + 1 < count) x = model.value(x);
  }
  return p;
}

/// Finds the points tau_k of the external mean-value statements.
///
/// cor1: tau_k, k = l..2l-1, with
///   (1/U) int_T^{T+U} prod_0^{l-1} = span_l^2 / (span_{2l} U) prod_{k=l}^{2l-1} |zeta(tau_k)|^2
/// cor2: tau_k, k = 0..l-1, with
///   (1/span_l) int_{phi^l(T)}^{phi^l(T+U)} prod_0^{l-1} = span_{2l} U / span_l^2 prod_{k=0}^{l-1} |zeta(tau_k)|^2
///
/// The taus are taken as tau_k = phi^k(t_l) for one t_l in (T, T+U): a 512
/// point profile of the product locates a crossing of the target, which is
/// then refined to a root.
inline MeanValueWitness external_mean_value(const LadderModel& model, double big_t, double u, int l,
                                            MeanValueVariant variant, const QuadratureConfig& quad = {}) {
  if (l < 1) throw DomainError("external_mean_value: l must be >= 1");
  require_admissible_u(big_t, u, "external_mean_value");
  const auto m = model.refined(big_t, big_t + u, 2 * l);
  const double span_l = iterate_span(m, big_t, u, l);
  const double span_2l = iterate_span(m, big_t, u, 2 * l);

  MeanValueWitness w;
  w.l = l;
  w.variant = variant;
  w.T = big_t;
  w.U = u;
  int first = 0;
  if (variant == MeanValueVariant::cor1) {
    w.integral = product_integral(m, big_t, big_t + u, l, quad).value;
    w.target = (w.integral / u) * span_2l * u / (span_l * span_l);
    first = l;
  } else {
    w.integral = product_integral(m, m.iterate(big_t, l), m.iterate(big_t + u, l), l, quad).value;
    w.target = (w.integral / span_l) * span_l * span_l / (span_2l * u);
    first = 0;
  }
  if (!(w.target > 0.0)) throw ConvergenceError("external_mean_value: non-positive target");

  auto g = [&](double t) { return iterate_zeta_product(m, t, first, l) - w.target; };
  std::vector<double> ts(kMeanValueProfilePoints);
  std::vector<double> gs(kMeanValueProfilePoints);
  for (int i = 0; i < kMeanValueProfilePoints; ++i) {
    ts[i] = big_t + u * (i + 0.5) / kMeanValueProfilePoints;
    gs[i] = g(ts[i]);
  }
  int hit = -1;
  for (int i = 0; i + 1 < kMeanValueProfilePoints; ++i) {
    if ((gs[i] > 0.0) != (gs[i + 1] > 0.0) || gs[i] == 0.0) {
      hit = i;
      break;
    }
  }
  if (hit < 0) {
    const auto [lo, hi] = std::minmax_element(gs.begin(), gs.end());
    throw ConvergenceError("external_mean_value: target " + std::to_string(w.target) +
                           " not bracketed by the profile (range " + std::to_string(*lo + w.target) + " .. " +
                           std::to_string(*hi + w.target) + ")");
  }
  const auto root = refine_sign_change(g, ts[hit], gs[hit], ts[hit + 1], gs[hit + 1], 1e-13 * w.target);
  w.t_l = root.x;
  w.alpha_l = m.iterate(w.t_l, l);
  w.achieved = iterate_zeta_product(m, w.t_l, first, l);
  w.residual = std::abs(w.achieved - w.target) / w.target;
  for (int k = first; k < first + l; ++k) {
    w.taus.push_back({k, m.iterate(w.t_l, k), m.iterate(big_t, k), m.iterate(big_t + u, k)});
  }
  return w;
}

/// Replays a witness: recomputes the product at its taus and the target from
/// fresh quadratures; returns |product - target| / target.
inline double replay_witness(const LadderModel& model, const MeanValueWitness& w, const QuadratureConfig& quad = {}) {
  double prod = 1.0;
  for (const auto& h : w.taus) prod *= detail::zeta_sq_unchecked(h.tau);
  const auto m = model.refined(w.T, w.T + w.U, 2 * w.l);
  const double span_l = iterate_span(m, w.T, w.U, w.l);
  const double span_2l = iterate_span(m, w.T, w.U, 2 * w.l);
  double target = 0.0;
  if (w.variant == MeanValueVariant::cor1) {
    target = product_integral(m, w.T, w.T + w.U, w.l, quad).value * span_2l / (span_l * span_l);
  } else {
    const double integral =
        product_integral(m, m.iterate(w.T, w.l), m.iterate(w.T + w.U, w.l), w.l, quad).value;
    target = integral * span_l / (span_2l * w.U);
  }
  return std::abs(prod - target) / target;
}

// ---------------------------------------------------------------------------
// Geometric means

struct AmGmInequality {
  int m = 0;              // 1 .. (l!)^2
  double arithmetic = 0;  // (1/l) sum_k |zeta(tau_k)| / |zeta(tau_{k+l})| for this ordering
  double margin = 0;      // (arithmetic - geometric) / geometric
  bool conditional = false;  // arithmetic > (1 - eps) Omega_l
};

struct GeoMeanReport {
  int l = 0;
  double epsilon = 0.1;
  double g_low = 0.0;   // (prod_{k<l} |zeta(tau_k)|)^{1/l}
  double g_high = 0.0;  // (prod_{k=l}^{2l-1} |zeta(tau_k)|)^{1/l}
  double g_bar = 0.0;   // g_low / g_high, the geometric mean of the ratios
  double omega = 0.0;
  std::vector<AmGmInequality> inequalities;

  [[nodiscard]] double min_margin() const {
    double m = INFINITY;
    for (const auto& q : inequalities) m = std::min(m, q.margin);
    return m;
  }
  [[nodiscard]] bool all_conditional() const {
    return std::all_of(inequalities.begin(), inequalities.end(), [](const auto& q) { return q.conditional; });
  }
  /// g_bar / Omega_l within [1 - eps, 1 + eps].
  [[nodiscard]] bool ratio_within_epsilon() const {
    const double r = g_bar / omega;
    return r >= 1.0 - epsilon && r <= 1.0 + epsilon;
  }
};

/// Omega_l = {span_l / sqrt(span_{2l} U)}^{1/l}.
inline double omega_l(const LadderModel& model, double big_t, double u, int l) {
  const double span_l = iterate_span(model, big_t, u, l);
  const double span_2l = iterate_span(model, big_t, u, 2 * l);
  return std::pow(span_l / std::sqrt(span_2l * u), 1.0 / l);
}

/// taus holds tau_0 .. tau_{2l-1}.
inline GeoMeanReport geometric_mean_report(const LadderModel& model, double big_t, double u, int l,
                                           const std::vector<double>& taus, double epsilon = 0.1) {
  if (l < 1) throw DomainError("geometric_mean_report: l must be >= 1");
  if (taus.size() != static_cast<std::size_t>(2 * l)) throw DomainError("geometric_mean_report: need 2l taus");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("geometric_mean_report: epsilon must be in (0, 1)");
  std::vector<double> absz(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) absz[i] = std::sqrt(detail::zeta_sq_unchecked(taus[i]));
  // a refined zero leaves |Z| at the root-finder residual, not at 0
  for (int k = l; k < 2 * l; ++k) {
    if (absz[k] <= kZeroResidual) throw DomainError("geometric_mean_report: zero divide, tau is a zero of zeta");
  }
  GeoMeanReport r;
  r.l = l;
  r.epsilon = epsilon;
  // summed in sorted order so that reordering the taus changes no bit
  auto log_sum = [&](int first) {
    std::vector<double> logs;
    for (int k = first; k < first + l; ++k) logs.push_back(std::log(absz[k]));
    std::sort(logs.begin(), logs.end());
    double acc = 0.0;
    for (const double v : logs) acc += v;
    return acc;
  };
  const double log_low = log_sum(0);
  const double log_high = log_sum(l);
  r.g_low = std::exp(log_low / l);
  r.g_high = std::exp(log_high / l);
  r.g_bar = std::exp((log_low - log_high) / l);
  const auto m = model.refined(big_t, big_t + u, 2 * l);
  r.omega = omega_l(m, big_t, u, l);

  std::vector<int> low(l);
  std::vector<int> high(l);
  std::iota(low.begin(), low.end(), 0);
  int count = 0;
  do {
    std::iota(high.begin(), high.end(), l);
    do {
      double sum = 0.0;
      for (int k = 0; k < l; ++k) sum += absz[low[k]] / absz[high[k]];
      const double am = sum / l;
      r.inequalities.push_back({++count, am, (am - r.g_bar) / r.g_bar, am > (1.0 - epsilon) * r.omega});
    } while (std::next_permutation(high.begin(), high.end()));
  } while (std::next_permutation(low.begin(), low.end()));
  return r;
}

/// tau_k at the midpoints of the host intervals, k = 0..2l-1.
inline std::vector<double> midpoint_taus(const LadderModel& model, double big_t, double u, int l) {
  std::vector<double> taus;
  for (int k = 0; k < 2 * l; ++k) taus.push_back(0.5 * (model.iterate(big_t, k) + model.iterate(big_t + u, k)));
  return taus;
}

/// tau_0 .. tau_{2l-1} from a cor2 witness (k < l) and a cor1 witness (k >= l).
inline std::vector<double> witness_taus(const MeanValueWitness& cor2, const MeanValueWitness& cor1) {
  if (cor2.variant != MeanValueVariant::cor2 || cor1.variant != MeanValueVariant::cor1 || cor1.l != cor2.l) {
    throw DomainError("witness_taus: need a cor2 and a cor1 witness of the same l");
  }
  std::vector<double> taus;
  for (const auto& h : cor2.taus) taus.push_back(h.tau);
  for (const auto& h : cor1.taus) taus.push_back(h.tau);
  return taus;
}

// ---------------------------------------------------------------------------
// Steps of the proof chain

inline std::vector<RatioRecord> proof_chain_check(const LadderModel& model, double big_t, double u, int n, int l,
                                                  const QuadratureConfig& quad = {}) {
  if (n < 0) throw DomainError("proof_chain_check: n must be >= 0");
  require_admissible_u(big_t, u, "proof_chain_check");
  const auto m = model.refined(big_t, big_t + u, std::max(n + 1, 2 * std::max(l, 0)));
  const double log_t = std::log(big_t);
  auto on_level = [&](int level, int factors) {
    return product_integral(m, m.iterate(big_t, level), m.iterate(big_t + u, level), factors, quad);
  };
  std::vector<RatioRecord> out;
  const auto full = product_integral(m, big_t, big_t + u, n + 1, quad);
  const double span_n1 = iterate_span(m, big_t, u, n + 1);
  if (l >= 1 && l <= n) {
    const auto shifted = on_level(l, n - l + 1);
    out.push_back(make_record("chain-6.3", big_t, u, l, n, full.value, std::pow(log_t, l) * shifted.value,
                              detail::rel_error(full) + detail::rel_error(shifted)));
  }
  out.push_back(make_record("chain-6.4", big_t, u, l, n, full.value, span_n1 * std::pow(log_t, n + 1),
                            detail::rel_error(full)));
  if (l >= 1 && l <= n) {
    const auto left = on_level(l, n - l + 1);
    const auto right = on_level(n + 1 - l, l);
    out.push_back(make_record("chain-6.5", big_t, u, l, n, span_n1 * full.value, left.value * right.value,
                              detail::rel_error(full) + detail::rel_error(left) + detail::rel_error(right)));
  }
  if (l >= 1 && n == 2 * l - 1) {
    const auto conj = on_level(l, l);
    out.push_back(make_record("chain-6.6", big_t, u, l, n, conj.value,
                              iterate_span(m, big_t, u, 2 * l) * std::pow(log_t, l), detail::rel_error(conj)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gap table for short windows

struct RhTableConfig {
  double epsilon0 = 1.0 / 12.0;  // U <= T^{1/3 - epsilon0}
  double a_const = 1.0;          // free constant in the per-level envelope
};

/// Spans phi^k(T+U) - phi^k(T), k = 1..L0, against the envelopes
///   rh-5.7: U T^{1/sqrt(ln ln T)}
///   rh-5.5: (U / ln^k T) T^{2kA / ln ln T}
/// and, for k = 1, rh-5.8: T^{1/3 - epsilon0}. Report only; the checks record
/// observations (span decreasing in k) as soft.
inline ExperimentReport rh_gap_table(const LadderModel& model, const std::vector<double>& t_list, double u, int l0,
                                     const RhTableConfig& cfg = {}) {
  if (l0 < 1) throw DomainError("rh_gap_table: L0 must be >= 1");
  ExperimentReport report;
  for (const double big_t : t_list) {
    const double cap = std::pow(big_t, 1.0 / 3.0 - cfg.epsilon0);
    if (!(u > 0.0) || u > cap * (1.0 + 1e-12)) {
      throw AdmissibilityError("rh_gap_table: U = " + std::to_string(u) + " outside (0, T^{1/3-eps0}] for T = " +
                               std::to_string(big_t));
    }
    const double lnt = std::log(big_t);
    const double lnlnt = std::log(lnt);
    const double envelope = u * std::pow(big_t, 1.0 / std::sqrt(lnlnt));
    const auto m = model.refined(big_t, big_t + u, l0);
    double prev = INFINITY;
    bool decreasing = true;
    for (int k = 1; k <= l0; ++k) {
      const double span = iterate_span(m, big_t, u, k);
      report.records.push_back(make_record("rh-5.7", big_t, u, k, l0, span, envelope, 0.0));
      report.records.push_back(make_record("rh-5.5", big_t, u, k, l0, span,
                                           u / std::pow(lnt, k) * std::pow(big_t, 2.0 * k * cfg.a_const / lnlnt),
                                           0.0));
      if (k == 1) report.records.push_back(make_record("rh-5.8", big_t, u, k, l0, span, cap, 0.0));
      decreasing = decreasing && span < prev;
      prev = span;
    }
    report.check("span decreasing in k at T=" + detail::format_real(big_t), "rh-table", false, decreasing);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Trends

/// |ratio - 1| non-increasing along the sequence (ordered by increasing T).
inline bool trend_non_increasing(const std::vector<double>& ratios) {
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (!(std::abs(ratios[i] - 1.0) <= std::abs(ratios[i - 1] - 1.0))) return false;
  }
  return true;
}

}  // namespace jladder
