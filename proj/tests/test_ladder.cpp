#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include <jladder/ladder.hpp>

#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace jladder;
using testing_support::ladder;
using testing_support::primes;

namespace {

double deficit_ratio(double t) {
  return (t - ladder().value(t)) * std::log(t) / ((1.0 - kEulerGamma) * t);
}

}  // namespace

TEST(LadderConfig, ValidateAndKey) {
  LadderConfig c;
  EXPECT_NO_THROW(c.validate());
  auto bad = c;
  bad.t_min = 50;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = c;
  bad.t_max = c.t_min;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = c;
  bad.epsilon = 1.0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = c;
  bad.refine_density = 1.0;
  EXPECT_THROW(bad.validate(), DomainError);
  // window settings are not part of the persisted identity
  auto runtime = c;
  runtime.refine_density = 64;
  runtime.l0 = 5;
  EXPECT_EQ(runtime.cache_key(), c.cache_key());
  runtime.grid_nodes = 500;
  EXPECT_NE(runtime.cache_key(), c.cache_key());
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Ladder, DefiningEquationResidual) {
  const auto& m = ladder();
  EXPECT_EQ(m.grid().size(), 10'000u);
  EXPECT_EQ(m.grid().front(), 100.0);
  EXPECT_EQ(m.grid().back(), 1.02e6);
  EXPECT_LE(m.calibration_residual(), 1e-10);
  for (std::size_t i = 0; i < m.grid().size(); i += 97) {
    const double y = m.phi1()[i];
    const double h = m.hl_checkpoints()[i];
    EXPECT_LE(std::abs(ladder_defining_function(y) - h), 1e-10 * h) << "t = " << m.grid()[i];
  }
}

TEST(Ladder, IncreasingAndBelowIdentity) {
  const auto& m = ladder();
  for (std::size_t i = 1; i < m.grid().size(); ++i) {
    ASSERT_GT(m.phi1()[i], m.phi1()[i - 1]) << "t = " << m.grid()[i];
    ASSERT_LT(m.phi1()[i], m.grid()[i]);
  }
}

TEST(Ladder, EpsilonBandAwayFromTheBottom) {
  // (1 - eps) t <= phi_1(t) <= t; at eps = 0.1 this starts near t ~ 200
  const auto& m = ladder();
  for (std::size_t i = 0; i < m.grid().size(); ++i) {
    const double t = m.grid()[i];
    if (t < 1e3) continue;
    ASSERT_GE(m.phi1()[i], 0.9 * t) << "t = " << t;
  }
  // below ~200 the Z^2 mass of single gaps still moves phi_1 / t around
  double lowest = 1.0;
  for (double t = 100.0; t < 200.0; t += 0.25) lowest = std::min(lowest, m.value(t) / t);
  EXPECT_LT(lowest, 0.9);
}

TEST(Ladder, DeficitTable) {
  const double r4 = deficit_ratio(1e4);
  const double r5 = deficit_ratio(1e5);
  const double r6 = deficit_ratio(1e6);
  for (const double r : {r4, r5, r6}) {
    EXPECT_GE(r, 0.8);
    EXPECT_LE(r, 1.25);
  }
  EXPECT_LT(std::abs(r6 - 1), std::abs(r4 - 1));
  EXPECT_LT(std::abs(r5 - 1), std::abs(r4 - 1));
}

TEST(Ladder, HardyLittlewoodIntegralMatchesOracle) {
  for (const auto& row : oracle::kHardyLittlewood) {
    EXPECT_NEAR(hl_integral(ladder(), row[0]), row[1], 1e-9 * row[1]) << "T = " << row[0];
    EXPECT_NEAR(ladder().value(row[0]), row[2], 1e-9 * row[2]) << "T = " << row[0];
  }
  EXPECT_THROW(hl_integral(ladder(), 1.0), DomainError);
  EXPECT_THROW((void)ladder().hl_integral(2e6), RangeError);
}

TEST(Ladder, HardyLittlewoodAsymptotic) {
  // H(T) ~ T ln(T / 2 pi) + (2c - 1) T: within a few percent already at 1e3
  for (const double t : {1e3, 1e4, 1e5, 1e6}) {
    const double h = hl_integral(ladder(), t);
    const double asym = t * std::log(t / kTwoPi) + (2 * kEulerGamma - 1) * t;
    EXPECT_NEAR(h / asym, 1.0, t < 1e4 ? 0.05 : 0.01) << "T = " << t;
  }
  // increment over one span: int_T^{T+U} Z^2 ~ U (ln(T / 2 pi) + 2c)
  const double t = 1e5;
  const double u = max_admissible_u(t);
  const double inc = hl_integral(ladder(), t + u) - hl_integral(ladder(), t);
  EXPECT_NEAR(inc / (u * (std::log(t / kTwoPi) + 2 * kEulerGamma)), 1.0, 0.1);
}

TEST(Ladder, ValueAtNodesIsTabulated) {
  const auto& m = ladder();
  for (std::size_t i = 0; i < m.grid().size(); i += 501) EXPECT_EQ(m.value(m.grid()[i]), m.phi1()[i]);
  const double t = 123456.789;
  const double y = m.value(t);
  EXPECT_LE(std::abs(ladder_defining_function(y) - m.hl_integral(t)), 1e-12 * m.hl_integral(t));
}

TEST(Ladder, Iterates) {
  const auto& m = ladder();
  EXPECT_EQ(m.iterate(5e4, 0), 5e4);
  EXPECT_EQ(m.iterate(5e4, 1), m.value(5e4));
  EXPECT_EQ(m.iterate(5e4, 3), m.iterate(m.iterate(5e4, 1), 2));
  EXPECT_THROW((void)m.iterate(5e4, -1), DomainError);
  EXPECT_THROW((void)m.iterate(150.0, 40), RangeError);
  EXPECT_THROW((void)m.value(50.0), RangeError);
  // two steps shorten t by about 2 (1 - c) t / ln t, i.e. 2(1-c) pi(t) in size
  const double t = 1e6;
  const double drop = t - m.iterate(t, 2);
  EXPECT_NEAR(drop / (2 * (1 - kEulerGamma) * t / std::log(t)), 1.0, 0.1);
  EXPECT_NEAR(drop / (2 * (1 - kEulerGamma) * static_cast<double>(primes().count(t))), 1.0, 0.25);
}

TEST(Ladder, DerivativeIsZTildeSquared) {
  const auto& m = ladder();
  // vanishes at a zero of Z
  const auto p = find_zero_pair(1e4);
  EXPECT_LE(m.derivative(p.gamma), 1e-15);
  // on average phi_1' ~ ln(t / 2 pi) / ln(phi_1(t) / 2 pi) ~ 1
  double mean = 0.0;
  const double t0 = 2e5;
  const int kSamples = 4000;
  for (int i = 0; i < kSamples; ++i) mean += m.derivative(t0 + 0.25 * i);
  mean /= kSamples;
  EXPECT_NEAR(mean, 1.0, 0.1);
}

TEST(Ladder, DerivativeMatchesFiniteDifferences) {
  const auto& m = ladder();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1e3, 1e6);
  const double h = 1e-4;
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    const double t = dist(rng);
    const double fd = (m.value_exact(t + h) - m.value_exact(t - h)) / (2 * h);
    const double d = m.derivative(t);
    // near a double zero of Z both sides are tiny; compare against the mean slope
    EXPECT_NEAR(fd, d, 0.01 * std::max(d, 1e-1)) << "t = " << t;
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(Ladder, WindowsAgreeWithExactValues) {
  const double a = 1e5;
  const double b = a + 500.0;
  const auto r = ladder().refined(a, b, 3);
  EXPECT_GE(r.window_count(), 4u);
  EXPECT_FALSE(ladder().in_window(a + 1));
  EXPECT_EQ(ladder().interpolation_error(a + 1), 0.0);
  double lo = a;
  double hi = b;
  for (int k = 0; k <= 3; ++k) {
    ASSERT_TRUE(r.in_window(lo) && r.in_window(hi)) << "level " << k;
    EXPECT_LT(r.interpolation_error(lo), 1e-6);
    for (int i = 0; i <= 40; ++i) {
      const double t = lo + (hi - lo) * i / 40.0 + 0.013;
      if (t > hi) continue;
      EXPECT_NEAR(r.value(t), r.value_exact(t), std::max(1e-7, r.interpolation_error(t))) << "t = " << t;
    }
    // monotone through the window
    double prev = r.value(lo);
    for (double t = lo + 0.05; t <= hi; t += 0.05) {
      const double v = r.value(t);
      ASSERT_GE(v, prev) << "t = " << t;
      prev = v;
    }
    lo = r.value_exact(lo);
    hi = r.value_exact(hi);
  }
  EXPECT_THROW(ladder().refined(b, a, 1), DomainError);
  // refining again reuses the windows
  EXPECT_EQ(r.refined(a, b, 3).window_count(), r.window_count());
}

TEST(LadderCache, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "jladder-ladder-cache-test";
  std::filesystem::remove_all(dir);
  LadderConfig cfg;
  cfg.t_min = 100;
  cfg.t_max = 2000;
  cfg.grid_nodes = 200;
  cfg.l0 = 1;
  bool hit = true;
  const auto built = load_or_build_ladder(cfg, dir, nullptr, &hit);
  EXPECT_FALSE(hit);
  const auto loaded = load_or_build_ladder(cfg, dir, nullptr, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(loaded.grid(), built.grid());
  EXPECT_EQ(loaded.phi1(), built.phi1());
  EXPECT_EQ(loaded.calibration_residual(), built.calibration_residual());
  EXPECT_EQ(loaded.hl_integral(1234.5), built.hl_integral(1234.5));

  auto other = cfg;
  other.grid_nodes = 300;
  EXPECT_THROW(LadderModel::load(ladder_cache_path(dir, cfg), other), FormatError);
  // a corrupt cache is rebuilt, not trusted
  std::filesystem::resize_file(ladder_cache_path(dir, cfg), 100);
  EXPECT_THROW(LadderModel::load(ladder_cache_path(dir, cfg), cfg), FormatError);
  const auto rebuilt = load_or_build_ladder(cfg, dir, nullptr, &hit);
  EXPECT_FALSE(hit);
  EXPECT_EQ(rebuilt.phi1(), built.phi1());
}

TEST(LadderCache, RangeTooShortForDepth) {
  LadderConfig cfg;
  cfg.t_min = 9000;
  cfg.t_max = 1e4;
  cfg.grid_nodes = 50;
  cfg.l0 = 5;
  EXPECT_THROW(build_ladder(cfg), RangeError);
  EXPECT_THROW((void)LadderModel{}.value(1e3), Error);
}

TEST(DisconnectedSet, SingleStep) {
  const double t = 1e5;
  const double u = max_admissible_u(t);
  const auto set = disconnected_set(ladder(), t, u, 0);
  ASSERT_EQ(set.segments.size(), 2u);
  EXPECT_EQ(set.segments[0].lo, t);
  EXPECT_EQ(set.segments[0].hi, t + u);
  EXPECT_EQ(set.segments[1].lo, ladder().value(t));
}

TEST(DisconnectedSet, ComponentsDisjointAndOrdered) {
  const double t = 1e5;
  const auto set = disconnected_set(ladder(), t, max_admissible_u(t), 4);
  ASSERT_EQ(set.segments.size(), 6u);
  for (std::size_t k = 0; k + 1 < set.segments.size(); ++k) {
    EXPECT_LT(set.segments[k + 1].hi, set.segments[k].lo);
    EXPECT_EQ(set.segments[k].k, static_cast<int>(k));
  }
}

TEST(DisconnectedSet, Admissibility) {
  EXPECT_THROW(disconnected_set(ladder(), 1e5, 2 * max_admissible_u(1e5), 1), AdmissibilityError);
  EXPECT_THROW(disconnected_set(ladder(), 1e5, 0.0, 1), AdmissibilityError);
  EXPECT_THROW(disconnected_set(ladder(), 1e5, 10.0, -1), DomainError);
  EXPECT_NEAR(max_admissible_u(1e5), 1e5 / std::pow(std::log(1e5), 2), 1e-9);
}

TEST(DisconnectedSet, BoundsAtModerateDepth) {
  const double t = 1e5;
  const auto rep = check_set_properties(disconnected_set(ladder(), t, max_admissible_u(t), 3), primes());
  EXPECT_TRUE(rep.disjoint_ordered);
  EXPECT_EQ(rep.lengths.size(), 4u);
  EXPECT_EQ(rep.gaps.size(), 4u);
  for (const auto& g : rep.gaps) {
    EXPECT_TRUE(g.holds) << "gap k=" << g.k;
    EXPECT_GT(g.measured, 0.17 * static_cast<double>(primes().count(t)));
  }
  for (const auto& d : rep.distances) EXPECT_TRUE(d.holds) << "distance k=" << d.k;
  for (const auto& l : rep.lengths) EXPECT_TRUE(l.holds) << "length k=" << l.k;
  // gap k = deficit at phi^k(T) minus the next component, ~U; at U = T / ln^2 T
  // the window alone takes ~20% off (1 - c) T / ln T
  const double scale = (1.0 - kEulerGamma) * t / std::log(t);
  for (std::size_t k = 0; k < rep.gap_over_asymptotic.size(); ++k) {
    const double x = ladder().iterate(t, static_cast<int>(k));
    const double expected = ((1.0 - kEulerGamma) * x / std::log(x) - max_admissible_u(t)) / scale;
    EXPECT_NEAR(rep.gap_over_asymptotic[k], expected, 0.1) << "k = " << k;
  }
  EXPECT_TRUE(rep.all_hold());
}

// Lengths are not ~U at desk scale (0.7..0.95 U at 1e6): each step maps a
// component through F(phi) = H, so F-length k equals the Z^2 mass of
// component k-1.
TEST(DisconnectedSet, MacroscopicLengthsFollowDefiningEquation) {
  const double t = 1e6;
  const double u = std::pow(t, 0.4);
  const auto set = disconnected_set(ladder(), t, u, 6);
  const auto rep = check_set_properties(set, primes());
  EXPECT_TRUE(rep.macroscopic);
  ASSERT_EQ(rep.length_over_u.size(), 7u);
  for (std::size_t k = 1; k < set.segments.size(); ++k) {
    const auto& prev = set.segments[k - 1];
    const auto& cur = set.segments[k];
    const double mass = hl_integral(ladder(), prev.hi) - hl_integral(ladder(), prev.lo);
    const double f_len = ladder_defining_function(cur.hi) - ladder_defining_function(cur.lo);
    EXPECT_NEAR(f_len / mass, 1.0, 1e-9) << "k = " << k;
    EXPECT_NEAR(cur.length(), mass / ladder_defining_slope(0.5 * (cur.lo + cur.hi)), 1e-4 * cur.length());
    EXPECT_GT(rep.length_over_u[k - 1], 0.5);
    EXPECT_LT(rep.length_over_u[k - 1], 1.5);
  }
  const auto narrow = check_set_properties(disconnected_set(ladder(), t, 10.0, 1), primes());
  EXPECT_FALSE(narrow.macroscopic);
}

TEST(Constants, AsymptoticCoefficients) {
  const AsymptoticConstants c;
  EXPECT_DOUBLE_EQ(c.gap_lower, 0.18);
  EXPECT_DOUBLE_EQ(c.dist_lower, 0.17);
  EXPECT_DOUBLE_EQ(AsymptoticConstants::len_upper_coeff(0), 0.2);
  EXPECT_DOUBLE_EQ(AsymptoticConstants::len_upper_coeff(6), 1.0 / 17);
  EXPECT_NEAR(c.one_minus_c, 0.4227843351, 1e-10);
  EXPECT_NEAR(mean_zero_gap(1e6), kTwoPi / std::log(1e6 / kTwoPi), 1e-15);
}
