#pragma once

// Panel quadrature for oscillatory integrands on the critical line.
//
// Every panel is integrated with the 15-point Gauss-Legendre rule. The error
// of a panel is estimated from the tail of the discrete Legendre expansion of
// the sampled integrand: the coefficients of degree 11..14 are computed from
// the same 15 samples and their decay is extrapolated to degree 30, the first
// degree the rule does not integrate exactly. Panels whose estimate exceeds
// their share of the tolerance are bisected.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace jladder {

struct QuadratureConfig {
  double rel_tol = 1e-6;
  std::size_t max_panels = 20'000'000;
  double oscillation_density = 4.0;  // panels per mean zero gap 2 pi / ln t
  // Relative evaluation noise of the integrand: panel estimates below
  // noise_rel * max |f| are accepted. Z^2 from the Riemann-Siegel sum carries
  // ~1e-9 relative phase-rounding noise at t ~ 1e6.
  double noise_rel = 1e-8;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw DomainError("QuadratureConfig: rel_tol must lie in (0, 1e-2]");
    if (!(oscillation_density >= 4.0)) throw DomainError("QuadratureConfig: oscillation_density must be >= 4");
    if (max_panels == 0) throw DomainError("QuadratureConfig: max_panels must be positive");
    if (!(noise_rel >= 0.0 && noise_rel < 1e-4)) throw DomainError("QuadratureConfig: noise_rel must be in [0, 1e-4)");
  }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

struct GaussLegendre15 {
  static constexpr int kPoints = 15;
  std::array<double, kPoints> node{};
  std::array<double, kPoints> weight{};
  // tail[j][i] = (2j+1)/2 * w_i * P_j(x_i) for j = 11..14
  std::array<std::array<double, kPoints>, 4> tail{};

  GaussLegendre15() {
    const int n = kPoints;
    for (int i = 0; i < n; ++i) {
      long double x = std::cos(3.14159265358979323846264338327950L * (i + 0.75L) / (n + 0.5L));
      long double dp = 0.0L;
      for (int it = 0; it < 100; ++it) {
        long double p0 = 1.0L;
        long double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0L);
        const long double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-19L) break;
      }
      node[i] = static_cast<double>(x);
      weight[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    }
    for (int i = 0; i < n; ++i) {
      long double p0 = 1.0L;
      long double p1 = node[i];
      std::array<long double, kPoints> p{};
      p[0] = p0;
      p[1] = p1;
      for (int k = 2; k < n; ++k) {
        p[k] = ((2.0L * k - 1.0L) * node[i] * p[k - 1] - (k - 1.0L) * p[k - 2]) / k;
      }
      for (int j = 11; j <= 14; ++j) tail[j - 11][i] = static_cast<double>((2.0L * j + 1.0L) / 2.0L * weight[i] * p[j]);
    }
  }
};

inline const GaussLegendre15& gl15() {
  static const GaussLegendre15 rule;
  return rule;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool noise_limited = false;  // estimate at the integrand's noise level
};

template <class F>
Panel gl15_panel(F& f, double a, double b, double noise_rel) {
  const auto& rule = gl15();
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  std::array<double, GaussLegendre15::kPoints> fx{};
  double sum = 0.0;
  double abs_sum = 0.0;
  double max_abs = 0.0;
  for (int i = 0; i < GaussLegendre15::kPoints; ++i) {
    fx[i] = f(mid + hw * rule.node[i]);
    sum += rule.weight[i] * fx[i];
    abs_sum += rule.weight[i] * std::abs(fx[i]);
    max_abs = std::max(max_abs, std::abs(fx[i]));
  }
  std::array<double, 4> coef{};
  for (int j = 0; j < 4; ++j) {
    double c = 0.0;
    for (int i = 0; i < GaussLegendre15::kPoints; ++i) c += rule.tail[j][i] * fx[i];
    coef[j] = std::abs(c);
  }
  const double head = std::max(coef[0], coef[1]);
  const double last = std::max(coef[2], coef[3]);
  double err = 2.0 * last;
  if (last <= 1e-14 * max_abs) {
    err = 0.0;  // tail at rounding level: the samples resolve f
  } else if (head > 0.0) {
    const double ratio = last / head;
    if (ratio < 0.5) err = 2.0 * last * std::pow(ratio, 8);
  } else if (last == 0.0) {
    err = 0.0;
  }
  err = std::max(err, 4e-16 * abs_sum);
  const bool noise = err <= 2.0 * noise_rel * max_abs;
  return {a, b, hw * sum, hw * err, noise};
}

// Compensated running sum; fixed evaluation order keeps results reproducible.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

template <class F>
void refine_panel(F& f, const Panel& p, double tol_density, double noise_rel, int depth, std::size_t& panels,
                  std::size_t max_panels, NeumaierSum& value, NeumaierSum& error) {
  const double width = p.b - p.a;
  if (!std::isfinite(p.value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature: non-finite integrand on panel [" << p.a << ", " << p.b << "]";
    throw ConvergenceError(msg.str());
  }
  if (p.error <= tol_density * width || p.noise_limited) {
    value.add(p.value);
    error.add(p.error);
    return;
  }
  const double mid = 0.5 * (p.a + p.b);
  if (depth >= 40 || panels + 2 > max_panels || !(mid > p.a && mid < p.b)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature did not converge on panel [" << p.a << ", " << p.b << "]: estimate " << p.error
        << " exceeds " << tol_density * width;
    throw ConvergenceError(msg.str());
  }
  panels += 2;
  const Panel left = gl15_panel(f, p.a, mid, noise_rel);
  const Panel right = gl15_panel(f, mid, p.b, noise_rel);
  refine_panel(f, left, tol_density, noise_rel, depth + 1, panels, max_panels, value, error);
  refine_panel(f, right, tol_density, noise_rel, depth + 1, panels, max_panels, value, error);
}

}  // namespace detail

/// Adaptive GL15 quadrature of f over the panels between consecutive
/// (increasing) breakpoints. The tolerance rel_tol * sum |panel| + abs_tol is
/// shared among panels in proportion to their width; panels whose estimate is
/// at the integrand's noise level (noise_rel, see QuadratureConfig) are
/// accepted. panel_noise optionally raises that level per breakpoint panel.
template <class F>
QuadResult integrate_breakpoints(F&& f, const std::vector<double>& breaks, double rel_tol, double abs_tol = 0.0,
                                 std::size_t max_panels = 20'000'000, double noise_rel = 0.0,
                                 const std::vector<double>* panel_noise = nullptr) {
  if (breaks.size() < 2) return {};
  const std::size_t count = breaks.size() - 1;
  if (count > max_panels) throw ConvergenceError("integrate_panels: interval needs more than max_panels panels");
  if (panel_noise && panel_noise->size() != count) throw DomainError("integrate_breakpoints: panel_noise size");
  auto noise_of = [&](std::size_t i) { return panel_noise ? std::max(noise_rel, (*panel_noise)[i]) : noise_rel; };
  std::vector<detail::Panel> base;
  base.reserve(count);
  double scale = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(breaks[i + 1] > breaks[i])) throw DomainError("integrate_breakpoints: breakpoints must increase");
    base.push_back(detail::gl15_panel(f, breaks[i], breaks[i + 1], noise_of(i)));
    scale += std::abs(base.back().value);
  }
  const double tol_density = (rel_tol * scale + abs_tol) / (breaks.back() - breaks.front());
  std::size_t panels = count;
  detail::NeumaierSum value;
  detail::NeumaierSum error;
  for (std::size_t i = 0; i < count; ++i) {
    detail::refine_panel(f, base[i], tol_density, noise_of(i), 0, panels, max_panels, value, error);
  }
  return {value.value(), error.value(), panels};
}

/// integrate_breakpoints over [a, b] cut into equal panels no wider than
/// max_width.
template <class F>
QuadResult integrate_panels(F&& f, double a, double b, double max_width, double rel_tol, double abs_tol = 0.0,
                            std::size_t max_panels = 20'000'000, double noise_rel = 0.0) {
  if (a == b) return {};
  if (b < a) {
    QuadResult r = integrate_panels(f, b, a, max_width, rel_tol, abs_tol, max_panels, noise_rel);
    r.value = -r.value;
    return r;
  }
  if (!(max_width > 0.0)) throw DomainError("integrate_panels: panel width must be positive");
  const double len = b - a;
  const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(len / max_width)));
  if (count > max_panels) throw ConvergenceError("integrate_panels: interval needs more than max_panels panels");
  std::vector<double> breaks(count + 1);
  for (std::size_t i = 0; i < count; ++i) breaks[i] = a + len * static_cast<double>(i) / static_cast<double>(count);
  breaks[count] = b;
  return integrate_breakpoints(f, breaks, rel_tol, abs_tol, max_panels, noise_rel);
}

/// Five-point Gauss-Lobatto rule on [a, b] given the endpoint samples.
/// Exact for polynomials of degree 7.
template <class F>
double lobatto5(F& f, double a, double b, double fa, double fb) {
  constexpr double kNode = 0.65465367070797714380;  // sqrt(3/7)
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double inner = f(mid - hw * kNode) + f(mid + hw * kNode);
  return hw * (0.1 * (fa + fb) + (49.0 / 90.0) * inner + (32.0 / 45.0) * f(mid));
}

}  // namespace jladder
