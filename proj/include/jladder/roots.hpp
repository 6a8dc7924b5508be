#pragma once

#include <cmath>

#include "errors.hpp"

namespace jladder {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Refines a sign change of f on [a, b] (f(a), f(b) of opposite sign or zero)
/// with Illinois regula falsi, falling back to bisection whenever the secant
/// step makes poor progress. Stops once |f| <= f_tol or the bracket is a few
/// ulps wide.
template <class F>
RootResult refine_sign_change(F&& f, double a, double fa, double b, double fb, double f_tol,
                              int max_iter = 200) {
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if ((fa > 0.0) == (fb > 0.0)) throw ConvergenceError("refine_sign_change: root not bracketed");
  int side = 0;
  RootResult best = std::abs(fa) < std::abs(fb) ? RootResult{a, fa, 0} : RootResult{b, fb, 0};
  for (int it = 1; it <= max_iter; ++it) {
    const double width = b - a;
    double x = (a * fb - b * fa) / (fb - fa);
    // keep the secant step away from the bracket ends; bisect every third step
    if (!(x > a + 0.01 * width && x < b - 0.01 * width) || it % 3 == 0) x = 0.5 * (a + b);
    if (x <= a || x >= b) return best;
    const double fx = f(x);
    if (std::abs(fx) < std::abs(best.fx)) best = {x, fx, it};
    best.iterations = it;
    if (std::abs(fx) <= f_tol || fx == 0.0) return {x, fx, it};
    if ((fx > 0.0) == (fb > 0.0)) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    const double ulp = std::nextafter(std::abs(b), INFINITY) - std::abs(b);
    if (b - a <= 4.0 * ulp) return best;
  }
  return best;
}

}  // namespace jladder
