#pragma once

// Jacob's ladder phi_1 and the disconnected sets built from its iterates.
//
// phi_1(T) is defined here as the root y of
//
//     F(y) = y ln y + (c - ln 2 pi) y = H(T),    H(T) = int_0^T Z(u)^2 du,
//
// with c the Euler constant. F is increasing for y >= 2, so the root is unique
// and phi_1'(T) = Z(T)^2 / F'(phi_1(T)) with F'(y) = ln y + 1 + c - ln 2 pi.
//
// The model stores H at equally spaced checkpoints from 0 to t_max. phi_1 at
// an arbitrary ordinate is obtained exactly: integrate Z^2 from the nearest
// checkpoint, then Newton-invert F. Experiment windows can additionally be
// tabulated on a grid much finer than the zero spacing and evaluated by
// monotone cubic Hermite interpolation through (phi_1, phi_1'), which keeps
// phi_1 within ~1e-8 of the exact values at a fraction of the cost.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "constants.hpp"
#include "critical_line.hpp"
#include "detail/binary_io.hpp"
#include "errors.hpp"
#include "primes.hpp"
#include "quadrature.hpp"

namespace jladder {

struct LadderConfig {
  double t_min = 100.0;
  double t_max = 1.02e6;
  std::size_t grid_nodes = 10'000;  // geometric progression over [t_min, t_max]
  double checkpoint_step = 1.0;
  double hl_rel_tol = 1e-10;
  double hl_panels_per_gap = 1.0;
  double newton_rel_tol = 1e-13;
  double refine_density = 256.0;  // window nodes per mean zero gap
  double window_margin = 2.0;
  int l0 = 3;  // phi_1^{2 l0}(t_max) must stay >= t_min
  double epsilon = 0.1;

  void validate() const {
    if (!(t_min >= 100.0)) throw DomainError("LadderConfig: t_min must be >= 100");
    if (!(t_max > t_min)) throw DomainError("LadderConfig: t_max must exceed t_min");
    if (t_max > 1e8) throw DomainError("LadderConfig: t_max above 1e8 is not supported");
    if (grid_nodes < 2) throw DomainError("LadderConfig: grid needs at least two nodes");
    if (!(checkpoint_step > 0.0 && checkpoint_step <= 100.0)) throw DomainError("LadderConfig: bad checkpoint_step");
    if (!(hl_rel_tol > 0.0 && hl_rel_tol <= 1e-8)) throw DomainError("LadderConfig: hl_rel_tol must be in (0, 1e-8]");
    if (!(hl_panels_per_gap >= 1.0)) throw DomainError("LadderConfig: hl_panels_per_gap must be >= 1");
    if (!(newton_rel_tol > 0.0 && newton_rel_tol <= 1e-10)) throw DomainError("LadderConfig: bad newton_rel_tol");
    if (!(refine_density >= 4.0)) throw DomainError("LadderConfig: refine_density must be >= 4");
    if (l0 < 1) throw DomainError("LadderConfig: l0 must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("LadderConfig: epsilon must be in (0, 1)");
  }

  /// Identifies the persisted part of a model (window settings are runtime only).
  [[nodiscard]] std::string cache_key() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "v1|%.17g|%.17g|%zu|%.17g|%.17g|%.17g|%.17g", t_min, t_max, grid_nodes,
                  checkpoint_step, hl_rel_tol, hl_panels_per_gap, newton_rel_tol);
    return buf;
  }
};

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// F(y) = y ln y + (c - ln 2 pi) y.
inline double ladder_defining_function(double y) { return y * std::log(y) + (kEulerGamma - kLnTwoPi) * y; }

/// F'(y) = ln y + 1 + c - ln 2 pi.
inline double ladder_defining_slope(double y) { return std::log(y) + 1.0 + kEulerGamma - kLnTwoPi; }

class LadderModel {
 public:
  LadderModel() = default;

  [[nodiscard]] const LadderConfig& config() const { return core().config; }
  [[nodiscard]] double t_min() const { return core().config.t_min; }
  [[nodiscard]] double t_max() const { return core().config.t_max; }
  [[nodiscard]] double euler_c() const { return kEulerGamma; }
  [[nodiscard]] const std::vector<double>& grid() const { return core().grid; }
  [[nodiscard]] const std::vector<double>& phi1() const { return core().phi; }
  [[nodiscard]] const std::vector<double>& hl_checkpoints() const { return core().grid_hl; }
  [[nodiscard]] double calibration_residual() const { return core().residual; }
  [[nodiscard]] std::size_t window_count() const { return windows_.size(); }
  [[nodiscard]] bool empty() const { return !core_; }

  /// H(t) = int_0^t Z^2, 0 <= t <= t_max.
  [[nodiscard]] double hl_integral(double t) const {
    const Core& c = core();
    if (!(t >= 0.0 && t <= c.config.t_max)) throw RangeError("hl_integral: ordinate outside [0, t_max]");
    const double step = c.config.checkpoint_step;
    auto i = static_cast<std::size_t>(t / step);
    if (i >= c.checkpoints.size()) i = c.checkpoints.size() - 1;
    const double base = static_cast<double>(i) * step;
    return c.checkpoints[i] + hl_piece(c.config, base, t);
  }

  /// Root y of F(y) = h, started from guess.
  [[nodiscard]] double invert(double h, double guess) const { return invert_defining(h, guess, core().config.newton_rel_tol); }

  /// phi_1(t) without window interpolation.
  [[nodiscard]] double value_exact(double t) const {
    check_range(t, "ladder_value");
    const auto& g = core().grid;
    const auto it = std::lower_bound(g.begin(), g.end(), t);
    if (it != g.end() && *it == t) return core().phi[static_cast<std::size_t>(it - g.begin())];
    return invert(hl_integral(t), initial_guess(t));
  }

  /// phi_1(t): Hermite interpolation inside refined windows, exact elsewhere.
  [[nodiscard]] double value(double t) const {
    check_range(t, "ladder_value");
    for (const auto& w : windows_) {
      if (t >= w->lo && t <= w->hi) return w->value(t);
    }
    return value_exact(t);
  }

  /// phi_1^k(t); k = 0 returns t.
  [[nodiscard]] double iterate(double t, int k) const {
    if (k < 0) throw DomainError("ladder_iterate: k must be >= 0");
    for (int j = 1; j <= k; ++j) {
      if (t < t_min() || t > t_max()) {
        throw RangeError("ladder_iterate: iterate of depth " + std::to_string(j - 1) + " left the ladder range (" +
                         std::to_string(t) + ")");
      }
      t = value(t);
    }
    return t;
  }

  /// Z~^2(t) = Z(t)^2 / F'(phi_1(t)), the derivative of phi_1.
  [[nodiscard]] double derivative(double t) const {
    check_range(t, "ladder_derivative");
    return detail::zeta_sq_unchecked(t) / ladder_defining_slope(value(t));
  }

  /// Copy of the model with tabulated windows around phi_1^k([a, b]) for
  /// k = 0..depth. Windows already covering a level are reused.
  [[nodiscard]] LadderModel refined(double a, double b, int depth) const {
    if (!(b >= a)) throw DomainError("refined: need a <= b");
    LadderModel out = *this;
    const double margin = config().window_margin;
    double lo = a;
    double hi = b;
    for (int k = 0; k <= depth; ++k) {
      check_range(lo, "refined");
      check_range(hi, "refined");
      const double wlo = std::max(t_min(), lo - margin);
      const double whi = std::min(t_max(), hi + margin);
      const bool covered = std::any_of(out.windows_.begin(), out.windows_.end(),
                                       [&](const auto& w) { return w->lo <= wlo && w->hi >= whi; });
      if (!covered) out.windows_.push_back(std::make_shared<const Window>(build_window(wlo, whi)));
      if (k < depth) {
        lo = value_exact(lo);
        hi = value_exact(hi);
      }
    }
    return out;
  }

  /// Bound on the interpolation error of value(t); 0 outside windows.
  [[nodiscard]] double interpolation_error(double t) const {
    for (const auto& w : windows_) {
      if (t >= w->lo && t <= w->hi) return w->max_error;
    }
    return 0.0;
  }

  [[nodiscard]] bool in_window(double t) const {
    return std::any_of(windows_.begin(), windows_.end(), [&](const auto& w) { return t >= w->lo && t <= w->hi; });
  }

  // Binary cache, little endian:
  //   "JLAD", uint32 version, then float64 t_min, t_max, checkpoint_step,
  //   hl_rel_tol, hl_panels_per_gap, newton_rel_tol, calibration_residual;
  //   uint64 grid_nodes followed by that many rows (t, phi_1(t), H(t));
  //   uint64 checkpoint count followed by H(i * checkpoint_step).
  void save(const std::filesystem::path& path) const {
    const Core& c = core();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("LadderModel::save: cannot open " + path.string());
    out.write("JLAD", 4);
    detail::write_le<std::uint32_t>(out, kFormatVersion);
    for (const double v : {c.config.t_min, c.config.t_max, c.config.checkpoint_step, c.config.hl_rel_tol,
                           c.config.hl_panels_per_gap, c.config.newton_rel_tol, c.residual}) {
      detail::write_f64(out, v);
    }
    detail::write_le<std::uint64_t>(out, c.grid.size());
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      detail::write_f64(out, c.grid[i]);
      detail::write_f64(out, c.phi[i]);
      detail::write_f64(out, c.grid_hl[i]);
    }
    detail::write_le<std::uint64_t>(out, c.checkpoints.size());
    for (const double h : c.checkpoints) detail::write_f64(out, h);
    if (!out) throw FormatError("LadderModel::save: write failed for " + path.string());
  }

  /// Loads a cache file; runtime settings (windows, l0, epsilon) come from
  /// `runtime`, the persisted ones must match it.
  static LadderModel load(const std::filesystem::path& path, const LadderConfig& runtime) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("LadderModel::load: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "JLAD") throw FormatError("LadderModel::load: bad magic");
    if (detail::read_le<std::uint32_t>(in) != kFormatVersion) throw FormatError("LadderModel::load: bad version");
    auto c = std::make_shared<Core>();
    c->config = runtime;
    c->config.t_min = detail::read_f64(in);
    c->config.t_max = detail::read_f64(in);
    c->config.checkpoint_step = detail::read_f64(in);
    c->config.hl_rel_tol = detail::read_f64(in);
    c->config.hl_panels_per_gap = detail::read_f64(in);
    c->config.newton_rel_tol = detail::read_f64(in);
    c->residual = detail::read_f64(in);
    const auto nodes = detail::read_le<std::uint64_t>(in);
    if (!in || nodes < 2 || nodes > 100'000'000) throw FormatError("LadderModel::load: bad grid size");
    c->config.grid_nodes = nodes;
    c->grid.resize(nodes);
    c->phi.resize(nodes);
    c->grid_hl.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      c->grid[i] = detail::read_f64(in);
      c->phi[i] = detail::read_f64(in);
      c->grid_hl[i] = detail::read_f64(in);
    }
    const auto count = detail::read_le<std::uint64_t>(in);
    if (!in || count < 2 || count > 1'000'000'000) throw FormatError("LadderModel::load: bad checkpoint count");
    c->checkpoints.resize(count);
    for (auto& h : c->checkpoints) h = detail::read_f64(in);
    if (!in) throw FormatError("LadderModel::load: truncated file " + path.string());
    if (c->config.cache_key() != runtime.cache_key()) throw FormatError("LadderModel::load: cache key mismatch");
    LadderModel m;
    m.core_ = std::move(c);
    return m;
  }

  friend LadderModel build_ladder(const LadderConfig& config, std::ostream* log);

  static constexpr std::uint32_t kFormatVersion = 1;

 private:
  struct Core {
    LadderConfig config;
    std::vector<double> checkpoints;  // H(i * checkpoint_step)
    std::vector<double> grid;
    std::vector<double> phi;
    std::vector<double> grid_hl;
    double residual = 0.0;
  };

  struct Window {
    double lo = 0.0;
    double hi = 0.0;
    double h = 0.0;
    std::vector<double> phi;
    std::vector<double> slope;
    double max_error = 0.0;  // sampled bound on |value - exact|

    [[nodiscard]] double value(double t) const {
      const std::size_t last = phi.size() - 1;
      auto i = static_cast<std::size_t>((t - lo) / h);
      if (i >= last) i = last - 1;
      const double x0 = lo + static_cast<double>(i) * h;
      const double s = (t - x0) / h;
      if (s == 0.0) return phi[i];
      const double u = 1.0 - s;
      const double h00 = (1.0 + 2.0 * s) * u * u;
      const double h10 = s * u * u;
      const double h01 = s * s * (3.0 - 2.0 * s);
      const double h11 = -s * s * u;
      return h00 * phi[i] + h01 * phi[i + 1] + h * (h10 * slope[i] + h11 * slope[i + 1]);
    }
  };

  [[nodiscard]] const Core& core() const {
    if (!core_) throw Error("LadderModel: empty model");
    return *core_;
  }

  void check_range(double t, const char* what) const {
    if (!(t >= t_min() && t <= t_max())) {
      throw RangeError(std::string(what) + ": ordinate " + std::to_string(t) + " outside ladder range [" +
                       std::to_string(t_min()) + ", " + std::to_string(t_max()) + "]");
    }
  }

  static double initial_guess(double t) {
    const double slope = ladder_defining_slope(t);
    return slope > 1.0 ? t * (1.0 - (1.0 - kEulerGamma) / slope) : 0.9 * t;
  }

  static double hl_piece(const LadderConfig& cfg, double a, double b) {
    if (b <= a) return 0.0;
    const double width = mean_zero_gap(b) / cfg.hl_panels_per_gap;
    // measured against the mean density of Z^2, so that short pieces next to
    // a zero of Z do not chase evaluation noise
    const double abs_tol = cfg.hl_rel_tol * (b - a) * std::max(std::log(b / kTwoPi), 1.0);
    return integrate_panels([](double u) { return detail::zeta_sq_unchecked(u); }, a, b, width, cfg.hl_rel_tol, abs_tol,
                            20'000'000, QuadratureConfig{}.noise_rel)
        .value;
  }

  static double invert_defining(double h, double guess, double rel_tol) {
    constexpr double kLow = 2.0;  // F is increasing above 2 pi e^{-1-c} ~ 1.33
    if (h < ladder_defining_function(kLow)) throw DomainError("ladder inversion: target below F(2)");
    double lo = kLow;
    double hi = std::max(guess, kLow) * 1.5 + 10.0;
    while (ladder_defining_function(hi) < h) hi *= 2.0;
    double y = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    const double tol = rel_tol * std::max(std::abs(h), 1.0);
    for (int it = 0; it < 200; ++it) {
      const double f = ladder_defining_function(y) - h;
      if (std::abs(f) <= tol) return y;
      if (f > 0.0) {
        hi = y;
      } else {
        lo = y;
      }
      double next = y - f / ladder_defining_slope(y);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
      if (next == y) return y;
      y = next;
    }
    throw ConvergenceError("ladder inversion: Newton iteration did not converge for H = " + std::to_string(h));
  }

  [[nodiscard]] Window build_window(double lo, double hi) const {
    const LadderConfig& cfg = core().config;
    Window w;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) * cfg.refine_density / mean_zero_gap(hi))) + 1;
    w.lo = lo;
    w.h = (hi - lo) / static_cast<double>(n);
    w.phi.resize(n + 1);
    w.slope.resize(n + 1);
    auto zsq = [](double u) { return detail::zeta_sq_unchecked(u); };
    double h_acc = hl_integral(lo);
    double z_prev = zsq(lo);
    w.phi[0] = invert(h_acc, initial_guess(lo));
    w.slope[0] = z_prev / ladder_defining_slope(w.phi[0]);
    for (std::size_t i = 0; i < n; ++i) {
      const double x0 = lo + static_cast<double>(i) * w.h;
      const double x1 = lo + static_cast<double>(i + 1) * w.h;
      const double z_next = zsq(x1);
      h_acc += lobatto5(zsq, x0, x1, z_prev, z_next);
      w.phi[i + 1] = invert(h_acc, w.phi[i] + w.h * w.slope[i]);
      w.slope[i + 1] = z_next / ladder_defining_slope(w.phi[i + 1]);
      z_prev = z_next;
    }
    w.hi = lo + static_cast<double>(n) * w.h;
    // Fritsch-Carlson limiter keeps every Hermite piece monotone
    for (std::size_t i = 0; i < n; ++i) {
      const double secant = (w.phi[i + 1] - w.phi[i]) / w.h;
      if (secant <= 0.0) {
        w.slope[i] = 0.0;
        w.slope[i + 1] = 0.0;
        continue;
      }
      const double alpha = w.slope[i] / secant;
      const double beta = w.slope[i + 1] / secant;
      const double r2 = alpha * alpha + beta * beta;
      if (r2 > 9.0) {
        const double tau = 3.0 / std::sqrt(r2);
        w.slope[i] = tau * alpha * secant;
        w.slope[i + 1] = tau * beta * secant;
      }
    }
    // Sampled at cell midpoints (where the Hermite error peaks), doubled
    // for the cells in between.
    const std::size_t stride = std::max<std::size_t>(1, n / 256);
    for (std::size_t i = stride / 2; i < n; i += stride) {
      const double t = lo + (static_cast<double>(i) + 0.5) * w.h;
      w.max_error = std::max(w.max_error, std::abs(w.value(t) - value_exact(t)));
    }
    w.max_error *= 2.0;
    return w;
  }

  std::shared_ptr<const Core> core_;
  std::vector<std::shared_ptr<const Window>> windows_;
};

/// Builds phi_1 over [config.t_min, config.t_max]: H at every checkpoint,
/// then phi_1 on the geometric grid by Newton inversion.
inline LadderModel build_ladder(const LadderConfig& config, std::ostream* log = nullptr) {
  config.validate();
  auto c = std::make_shared<LadderModel::Core>();
  c->config = config;
  const double step = config.checkpoint_step;
  const auto count = static_cast<std::size_t>(std::ceil(config.t_max / step)) + 1;
  c->checkpoints.resize(count);
  detail::NeumaierSum acc;
  c->checkpoints[0] = 0.0;
  std::size_t next_report = count / 10;
  for (std::size_t i = 1; i < count; ++i) {
    const double a = static_cast<double>(i - 1) * step;
    const double b = static_cast<double>(i) * step;
    acc.add(LadderModel::hl_piece(config, a, b));
    c->checkpoints[i] = acc.value();
    if (log && i == next_report) {
      *log << "  hl checkpoints: " << (100 * i) / count << "% (t = " << b << ")\n" << std::flush;
      next_report += count / 10;
    }
  }

  LadderModel model;
  model.core_ = c;
  const std::size_t nodes = config.grid_nodes;
  c->grid.resize(nodes);
  c->phi.resize(nodes);
  c->grid_hl.resize(nodes);
  const double ratio = std::log(config.t_max / config.t_min);
  double worst = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    double t = config.t_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(nodes - 1));
    if (i == 0) t = config.t_min;
    if (i + 1 == nodes) t = config.t_max;
    const double h = model.hl_integral(t);
    const double y = model.invert(h, LadderModel::initial_guess(t));
    c->grid[i] = t;
    c->phi[i] = y;
    c->grid_hl[i] = h;
    worst = std::max(worst, std::abs(ladder_defining_function(y) - h) / h);
  }
  c->residual = worst;

  // the 2 l0-fold iterate of t_max has to stay on the ladder
  double t = config.t_max;
  for (int k = 1; k <= 2 * config.l0; ++k) {
    t = model.value_exact(t);
    if (t < config.t_min) {
      throw RangeError("build_ladder: phi_1^" + std::to_string(k) + "(t_max) = " + std::to_string(t) +
                       " falls below t_min");
    }
  }
  return model;
}

/// Cache file name for a configuration.
inline std::filesystem::path ladder_cache_path(const std::filesystem::path& dir, const LadderConfig& config) {
  return dir / ("ladder_" + fnv1a_hex(config.cache_key()) + ".bin");
}

/// Loads the cached model for `config` from dir, or builds and stores it.
inline LadderModel load_or_build_ladder(const LadderConfig& config, const std::filesystem::path& dir,
                                        std::ostream* log = nullptr, bool* cache_hit = nullptr) {
  config.validate();
  const auto path = ladder_cache_path(dir, config);
  if (std::filesystem::exists(path)) {
    try {
      auto model = LadderModel::load(path, config);
      if (log) *log << "ladder cache hit: " << path.string() << "\n";
      if (cache_hit) *cache_hit = true;
      return model;
    } catch (const FormatError& e) {
      if (log) *log << "ladder cache unusable (" << e.what() << "), rebuilding\n";
    }
  }
  if (cache_hit) *cache_hit = false;
  if (log) *log << "building ladder over [" << config.t_min << ", " << config.t_max << "]\n";
  auto model = build_ladder(config, log);
  std::filesystem::create_directories(dir);
  const auto tmp = detail::temp_sibling(path);
  model.save(tmp);
  std::filesystem::rename(tmp, path);
  if (log) *log << "ladder cached: " << path.string() << "\n";
  return model;
}

inline double hl_integral(const LadderModel& model, double t) {
  if (!(t >= 2.0)) throw DomainError("hl_integral: T must be >= 2");
  return model.hl_integral(t);
}
inline double ladder_value(const LadderModel& model, double t) { return model.value(t); }
inline double ladder_iterate(const LadderModel& model, double t, int k) { return model.iterate(t, k); }
inline double ladder_derivative(const LadderModel& model, double t) { return model.derivative(t); }

// ---------------------------------------------------------------------------
// Disconnected sets

/// [phi_1^k(T), phi_1^k(T + U)].
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  int k = 0;
  [[nodiscard]] double length() const { return hi - lo; }
};

/// Union of the segments k = 0..n+1, stored right to left (k ascending).
struct DisconnectedSet {
  double T = 0.0;
  double U = 0.0;
  int n = 0;
  std::vector<Segment> segments;
};

/// Largest admissible U, T / ln^2 T.
inline double max_admissible_u(double big_t) {
  const double l = std::log(big_t);
  return big_t / (l * l);
}

inline void require_admissible_u(double big_t, double u, const char* what) {
  if (!(u > 0.0) || u > max_admissible_u(big_t) * (1.0 + 1e-12)) {
    throw AdmissibilityError(std::string(what) + ": U = " + std::to_string(u) + " outside (0, T/ln^2 T] for T = " +
                             std::to_string(big_t));
  }
}

inline DisconnectedSet disconnected_set(const LadderModel& model, double big_t, double u, int n) {
  if (n < 0) throw DomainError("disconnected_set: n must be >= 0");
  require_admissible_u(big_t, u, "disconnected_set");
  DisconnectedSet set{big_t, u, n, {}};
  double lo = big_t;
  double hi = big_t + u;
  for (int k = 0; k <= n + 1; ++k) {
    if (k > 0) {
      lo = model.iterate(lo, 1);
      hi = model.iterate(hi, 1);
    }
    set.segments.push_back({lo, hi, k});
  }
  return set;
}

struct BoundCheck {
  std::string name;
  int k = 0;
  double measured = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct SetPropertyReport {
  double T = 0.0;
  double U = 0.0;
  int n = 0;
  std::vector<BoundCheck> lengths;    // k = 1..n+1: length < T / ((2n+5) ln T)
  std::vector<BoundCheck> gaps;       // k = 0..n: phi^k(T) - phi^{k+1}(T+U) > 0.18 T / ln T
  std::vector<BoundCheck> distances;  // k = 0..n: same gap > 0.17 pi(T)
  bool disjoint_ordered = false;
  bool macroscopic = false;           // U in [T^{1/3+eps}, T / ln^2 T]
  std::vector<double> length_over_u;  // k = 1..n+1
  std::vector<double> gap_over_asymptotic;  // k = 0..n, gap / ((1-c) T / ln T)

  [[nodiscard]] bool all_hold() const {
    auto ok = [](const std::vector<BoundCheck>& v) {
      return std::all_of(v.begin(), v.end(), [](const BoundCheck& b) { return b.holds; });
    };
    return disjoint_ordered && ok(lengths) && ok(gaps) && ok(distances);
  }
};

inline SetPropertyReport check_set_properties(const DisconnectedSet& set, const PrimeCounter& counter,
                                              double macro_epsilon = 0.01) {
  const AsymptoticConstants constants;
  SetPropertyReport r;
  r.T = set.T;
  r.U = set.U;
  r.n = set.n;
  const double big_t = set.T;
  const double t_over_log = big_t / std::log(big_t);
  const double len_bound = AsymptoticConstants::len_upper_coeff(set.n) * t_over_log;
  const double gap_bound = constants.gap_lower * t_over_log;
  const double dist_bound = constants.dist_lower * static_cast<double>(pi_exact(big_t, counter));
  const auto& seg = set.segments;
  r.disjoint_ordered = true;
  for (std::size_t k = 0; k < seg.size(); ++k) {
    if (!(seg[k].lo < seg[k].hi)) r.disjoint_ordered = false;
    if (k + 1 < seg.size() && !(seg[k + 1].hi < seg[k].lo)) r.disjoint_ordered = false;
  }
  r.macroscopic = set.U >= std::pow(big_t, 1.0 / 3.0 + macro_epsilon) && set.U <= max_admissible_u(big_t) * (1 + 1e-12);
  for (std::size_t k = 1; k < seg.size(); ++k) {
    const double len = seg[k].length();
    r.lengths.push_back({"length", static_cast<int>(k), len, len_bound, len < len_bound});
    r.length_over_u.push_back(len / set.U);
  }
  for (std::size_t k = 0; k + 1 < seg.size(); ++k) {
    const double gap = seg[k].lo - seg[k + 1].hi;
    r.gaps.push_back({"gap", static_cast<int>(k), gap, gap_bound, gap > gap_bound});
    r.distances.push_back({"distance", static_cast<int>(k), gap, dist_bound, gap > dist_bound});
    r.gap_over_asymptotic.push_back(gap / (constants.one_minus_c * t_over_log));
  }
  return r;
}

}  // namespace jladder
