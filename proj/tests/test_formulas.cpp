#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include <jladder/formulas.hpp>

#include "test_support.hpp"

using namespace jladder;
using testing_support::ladder;

namespace {

constexpr double kT = 1e5;
const double kU = max_admissible_u(kT);

}  // namespace

TEST(ProductIntegral, EmptyAndDegenerate) {
  EXPECT_EQ(product_integral(ladder(), 1e4, 1e4, 3).value, 0.0);
  EXPECT_EQ(product_integral(ladder(), 1e4, 1e4 + 7, 0).value, 7.0);
  EXPECT_THROW(product_integral(ladder(), 1e4, 1e4 + 1, -1), DomainError);
  EXPECT_THROW(product_integral(ladder(), 150.0, 160.0, 8), RangeError);
  QuadratureConfig bad;
  bad.rel_tol = 0.5;
  EXPECT_THROW(product_integral(ladder(), 1e4, 1e4 + 1, 1, bad), DomainError);
}

TEST(ProductIntegral, OneFactorIsHardyLittlewoodIncrement) {
  const double a = 54321.0, b = a + 400.0;
  const auto r = product_integral(ladder(), a, b, 1);
  EXPECT_NEAR(r.value, ladder().hl_integral(b) - ladder().hl_integral(a), 1e-8 * r.value);
  const auto rev = product_integral(ladder(), b, a, 1);
  EXPECT_EQ(rev.value, -r.value);
}

TEST(ProductIntegral, TwoFactorsAgainstBruteForceSimpson) {
  const double a = 1e4, b = a + 5.0;
  const int n = 20'000;  // even
  const double h = (b - a) / n;
  auto f = [&](double t) { return zeta_sq(t) * zeta_sq(ladder().value_exact(t)); };
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  const double simpson = s * h / 3.0;
  const auto r = product_integral(ladder(), a, b, 2);
  EXPECT_NEAR(r.value, simpson, 1e-7 * simpson);
}

TEST(ProductIntegral, ZTildeTelescopes) {
  // Z~^2 is phi_1', so one factor integrates to the span of phi_1 and two
  // factors to the span of phi_1^2
  const double a = 2e5, b = a + 300.0;
  const auto m = ladder().refined(a, b, 2);
  const auto one = product_integral_ztilde(m, a, b, 1);
  EXPECT_NEAR(one.value, m.value_exact(b) - m.value_exact(a), 1e-8 * one.value);
  const auto two = product_integral_ztilde(m, a, b, 2);
  const double span2 = m.value_exact(m.value_exact(b)) - m.value_exact(m.value_exact(a));
  EXPECT_NEAR(two.value, span2, 1e-7 * two.value);
}

TEST(Identity, ExactAtSmallDepth) {
  for (const auto& [n, l] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    const auto r = verify_identity_61(ladder(), 1e4, max_admissible_u(1e4), n, l);
    EXPECT_EQ(r.label, "identity-6.1");
    EXPECT_NEAR(r.ratio, 1.0, 1e-5) << "n=" << n << " l=" << l;
    EXPECT_LT(r.est_error, 1e-6);
  }
}

TEST(Identity, FullShiftTelescopesToSpan) {
  const int n = 2;
  const auto r = verify_identity_61(ladder(), kT, kU, n, n);
  const double span = iterate_span(ladder(), kT, kU, n + 1);
  EXPECT_NEAR(r.rhs, span, 1e-7 * span);
  EXPECT_NEAR(r.lhs, span, 1e-5 * span);
}

TEST(Identity, BadArguments) {
  EXPECT_THROW(verify_identity_61(ladder(), kT, kU, 2, 3), DomainError);
  EXPECT_THROW(verify_identity_61(ladder(), kT, kU, 2, 0), DomainError);
  EXPECT_THROW(verify_identity_61(ladder(), kT, -1.0, 2, 1), DomainError);
}

TEST(Conjugate, RatioNearOne) {
  const auto r = conjugate_ratio(ladder(), kT, kU, 1);
  EXPECT_EQ(r.label, "thm-2.1");
  EXPECT_EQ(r.n, 2);
  EXPECT_GE(r.ratio, 0.7);
  EXPECT_LE(r.ratio, 1.3);
  EXPECT_THROW(conjugate_ratio(ladder(), kT, 2 * kU, 1), AdmissibilityError);
  EXPECT_THROW(conjugate_ratio(ladder(), kT, kU, 0), DomainError);
}

TEST(ZeroGap, LevelOneEqualsConjugateOnTheGap) {
  ZeroPair pair;
  const auto z = zero_gap_experiment(ladder(), 1e4, 1, {}, &pair);
  EXPECT_EQ(z.label, "zero-gap-2.2");
  EXPECT_EQ(z.T, pair.gamma);
  EXPECT_EQ(z.U, pair.gamma_prime - pair.gamma);
  const auto c = conjugate_ratio(ladder(), pair.gamma, pair.gamma_prime - pair.gamma, 1);
  EXPECT_EQ(z.lhs, c.lhs);
  EXPECT_EQ(z.rhs, c.rhs);
  EXPECT_TRUE(std::isfinite(z.ratio));
  EXPECT_GT(z.ratio, 0.0);
}

// The window at 1e4 collapses to ~5e-11 after five steps; deeper spans come
// from the derivative integral since the iterate difference reads 0.
TEST(ZeroGap, CollapsedSpansStayPositive) {
  ZeroPair pair;
  const auto z = zero_gap_experiment(ladder(), 1e4, 3, {}, &pair);
  EXPECT_GT(z.lhs, 0.0);
  EXPECT_GT(z.rhs, 0.0);
  const double u = pair.gamma_prime - pair.gamma;
  const auto m = ladder().refined(pair.gamma, pair.gamma + u, 6);
  double prev = u;
  for (int k = 1; k <= 6; ++k) {
    const double s = iterate_span(m, pair.gamma, u, k);
    EXPECT_GT(s, 0.0) << "k = " << k;
    EXPECT_LT(s, prev) << "k = " << k;
    prev = s;
  }
  const auto id = verify_identity_61(ladder(), pair.gamma, u, 5, 3);
  EXPECT_NEAR(id.ratio, 1.0, 1e-6);
  // five steps down the interval is a few dozen ulp wide
  EXPECT_THROW(zero_gap_experiment(ladder(), 1e4, 5), ConvergenceError);
}

TEST(Factorization, OrderInvariantAndBounded) {
  const auto a = factorization_ratio(ladder(), kT, kU, 2, {2, 1});
  const auto b = factorization_ratio(ladder(), kT, kU, 2, {1, 2});
  EXPECT_EQ(a.label, "fact-1.7[1+2]");
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
  EXPECT_GE(a.ratio, 0.5);
  EXPECT_LE(a.ratio, 2.0);
  const auto c = factorization_ratio(ladder(), kT, kU, 1, {1, 1});
  EXPECT_EQ(c.label, "fact-1.7[1+1]");
  EXPECT_EQ(c.l, 2);
  EXPECT_GE(c.ratio, 0.5);
  EXPECT_LE(c.ratio, 2.0);
}

TEST(Factorization, RejectsBadPartitions) {
  EXPECT_THROW(factorization_ratio(ladder(), kT, kU, 2, {3}), DomainError);
  EXPECT_THROW(factorization_ratio(ladder(), kT, kU, 2, {1, 1}), DomainError);
  EXPECT_THROW(factorization_ratio(ladder(), kT, kU, 2, {0, 3}), DomainError);
  EXPECT_THROW(factorization_ratio(ladder(), kT, kU, 0, {1, 0}), DomainError);
}

TEST(MeanValue, WitnessesInsideTheirIntervals) {
  for (const int l : {1, 2}) {
    for (const auto v : {MeanValueVariant::cor1, MeanValueVariant::cor2}) {
      const auto w = external_mean_value(ladder(), kT, kU, l, v);
      ASSERT_EQ(w.taus.size(), static_cast<std::size_t>(l));
      EXPECT_TRUE(w.all_inside()) << to_string(v) << " l=" << l;
      EXPECT_LE(w.residual, 1e-9);
      EXPECT_LE(replay_witness(ladder(), w), 1e-9);
      EXPECT_GT(w.t_l, kT);
      EXPECT_LT(w.t_l, kT + kU);
      EXPECT_EQ(w.taus.front().k, v == MeanValueVariant::cor1 ? l : 0);
    }
  }
  EXPECT_THROW(external_mean_value(ladder(), kT, kU, 0, MeanValueVariant::cor1), DomainError);
}

TEST(GeoMeans, SingleLevel) {
  const auto taus = midpoint_taus(ladder(), kT, kU, 1);
  const auto r = geometric_mean_report(ladder(), kT, kU, 1, taus, 0.3);
  ASSERT_EQ(r.inequalities.size(), 1u);
  // with one term the arithmetic and geometric means coincide
  EXPECT_NEAR(r.inequalities[0].margin, 0.0, 1e-15);
  EXPECT_NEAR(r.g_bar, r.g_low / r.g_high, 1e-14 * r.g_bar);
  // omega is taken on the windows refined around the chain
  EXPECT_EQ(r.omega, omega_l(ladder().refined(kT, kT + kU, 2), kT, kU, 1));
  EXPECT_NEAR(r.omega, omega_l(ladder(), kT, kU, 1), 1e-9 * r.omega);
}

TEST(GeoMeans, AllOrderingsDominateTheGeometricMean) {
  const int l = 3;
  const auto taus = midpoint_taus(ladder(), kT, kU, l);
  const auto r = geometric_mean_report(ladder(), kT, kU, l, taus);
  ASSERT_EQ(r.inequalities.size(), 36u);
  EXPECT_GE(r.min_margin(), -1e-12);
  for (std::size_t i = 0; i < r.inequalities.size(); ++i) EXPECT_EQ(r.inequalities[i].m, static_cast<int>(i) + 1);
}

TEST(GeoMeans, PermutingTausWithinAHalfChangesNoMean) {
  const int l = 3;
  auto taus = midpoint_taus(ladder(), kT, kU, l);
  const auto a = geometric_mean_report(ladder(), kT, kU, l, taus);
  std::swap(taus[0], taus[2]);
  std::swap(taus[3], taus[4]);
  const auto b = geometric_mean_report(ladder(), kT, kU, l, taus);
  EXPECT_EQ(a.g_bar, b.g_bar);
  EXPECT_EQ(a.g_low, b.g_low);
  EXPECT_EQ(a.g_high, b.g_high);
  EXPECT_EQ(a.min_margin(), b.min_margin());
}

TEST(GeoMeans, ZeroDivideAndBadArguments) {
  auto taus = midpoint_taus(ladder(), kT, kU, 1);
  taus[1] = find_zero_pair(taus[1]).gamma;
  EXPECT_THROW(geometric_mean_report(ladder(), kT, kU, 1, taus), DomainError);
  EXPECT_THROW(geometric_mean_report(ladder(), kT, kU, 1, {1e5}), DomainError);
  EXPECT_THROW(geometric_mean_report(ladder(), kT, kU, 1, midpoint_taus(ladder(), kT, kU, 1), 1.5), DomainError);
}

TEST(GeoMeans, WitnessTaus) {
  const auto c1 = external_mean_value(ladder(), kT, kU, 1, MeanValueVariant::cor1);
  const auto c2 = external_mean_value(ladder(), kT, kU, 1, MeanValueVariant::cor2);
  const auto taus = witness_taus(c2, c1);
  ASSERT_EQ(taus.size(), 2u);
  EXPECT_EQ(taus[0], c2.taus[0].tau);
  EXPECT_EQ(taus[1], c1.taus[0].tau);
  EXPECT_THROW(witness_taus(c1, c2), DomainError);
}

TEST(ProofChain, RecordSets) {
  auto labels = [](const std::vector<RatioRecord>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.label);
    return out;
  };
  using V = std::vector<std::string>;
  EXPECT_EQ(labels(proof_chain_check(ladder(), kT, kU, 0, 0)), V{"chain-6.4"});
  EXPECT_EQ(labels(proof_chain_check(ladder(), kT, kU, 1, 1)), (V{"chain-6.3", "chain-6.4", "chain-6.5", "chain-6.6"}));
  EXPECT_EQ(labels(proof_chain_check(ladder(), kT, kU, 2, 1)), (V{"chain-6.3", "chain-6.4", "chain-6.5"}));
  EXPECT_THROW(proof_chain_check(ladder(), kT, kU, -1, 0), DomainError);
}

TEST(ProofChain, SecondMomentIsClassical) {
  // n = 0: int_T^{T+U} Z^2 against span_1 ln T
  const auto r = proof_chain_check(ladder(), kT, kU, 0, 0).front();
  EXPECT_NEAR(r.ratio, 1.0, 0.1);
  EXPECT_NEAR(r.lhs, ladder().hl_integral(kT + kU) - ladder().hl_integral(kT), 1e-8 * r.lhs);
}

TEST(ProofChain, FirstLevelWithinDeskBand) {
  for (const auto& r : proof_chain_check(ladder(), kT, kU, 1, 1)) {
    EXPECT_TRUE(std::isfinite(r.ratio)) << r.label;
    EXPECT_GT(r.ratio, 0.5) << r.label;
    EXPECT_LT(r.ratio, 2.0) << r.label;
  }
}

TEST(RhTable, ColumnsAndAdmissibility) {
  const double t = 1e6;
  const auto rep = rh_gap_table(ladder(), {t}, 1.0, 5);
  // rh-5.7 and rh-5.5 per level, rh-5.8 once
  EXPECT_EQ(rep.records.size(), 11u);
  EXPECT_EQ(rep.checks.size(), 1u);
  EXPECT_TRUE(rep.checks[0].passed);
  for (const auto& r : rep.records) {
    EXPECT_TRUE(std::isfinite(r.lhs) && r.lhs > 0) << r.label;
    EXPECT_TRUE(std::isfinite(r.rhs) && r.rhs > 0) << r.label;
  }
  EXPECT_THROW(rh_gap_table(ladder(), {t}, 1000.0, 5), AdmissibilityError);
  EXPECT_THROW(rh_gap_table(ladder(), {t}, 1.0, 0), DomainError);
}

TEST(Trend, NonIncreasing) {
  EXPECT_TRUE(trend_non_increasing({1.1, 0.95, 1.01}));
  EXPECT_TRUE(trend_non_increasing({1.0}));
  EXPECT_FALSE(trend_non_increasing({1.01, 1.02}));
  EXPECT_FALSE(trend_non_increasing({1.0, std::nan("")}));
}

TEST(Determinism, ThreadsGiveBitIdenticalResults) {
  const auto serial = conjugate_ratio(ladder(), 1e4, max_admissible_u(1e4), 2);
  RatioRecord a, b;
  std::thread ta([&] { a = conjugate_ratio(ladder(), 1e4, max_admissible_u(1e4), 2); });
  std::thread tb([&] { b = conjugate_ratio(ladder(), 1e4, max_admissible_u(1e4), 2); });
  ta.join();
  tb.join();
  EXPECT_TRUE(same_values(a, serial));
  EXPECT_TRUE(same_values(b, serial));
}
