// Copyright 2026 The arqddf Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arqddf/mc.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace arqddf::mc {
namespace {

std::complex<double> c1(double re) { return {re, 0.0}; }

TEST(Rng, DeterministicSubstreams) {
  TrialRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
  }
  bool differs = false;
  TrialRng a2(42, 7);
  for (int i = 0; i < 100; ++i) differs |= a2.next_u64() != c.next_u64();
  EXPECT_TRUE(differs);
}

TEST(Rng, UnitVarianceAndIndependence) {
  TrialRng rng(1, 0);
  const int n = 1000000;
  double sum1 = 0, sum2 = 0, sum12 = 0, sq1 = 0, sq2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::norm(rng.complex_gain());
    const double y = std::norm(rng.complex_gain());
    sum1 += x;
    sum2 += y;
    sum12 += x * y;
    sq1 += x * x;
    sq2 += y * y;
  }
  const double m1 = sum1 / n, m2 = sum2 / n;
  EXPECT_NEAR(m1, 1.0, 0.01);
  EXPECT_NEAR(m2, 1.0, 0.01);
  const double cov = sum12 / n - m1 * m2;
  const double v1 = sq1 / n - m1 * m1, v2 = sq2 / n - m2 * m2;
  EXPECT_LT(std::fabs(cov / std::sqrt(v1 * v2)), 0.01);
}

TEST(ListenFraction, MarWorkedExample) {
  // r1=0.5, rho=1e3, c=1, |h1|^2=|h2|^2=1, T=100:
  // per-user ceil(249.14/9.967) = 25, sum-rate ceil(498.29/10.967) = 46.
  MarDraw d{};
  d.h1 = c1(1.0);
  d.h2 = c1(1.0);
  EXPECT_NEAR(relay_listen_fraction_mar(d, 0.5, 1e3, 1.0, 100), 0.46, 1e-12);
}

TEST(ListenFraction, DeadRelayLinkListensForever) {
  MarDraw m{};
  EXPECT_DOUBLE_EQ(relay_listen_fraction_mar(m, 0.5, 1e3, 1.0, 100), 1.0);
  CvmaDraw cv{};
  EXPECT_DOUBLE_EQ(relay_listen_fraction_cvma(cv, 0.5, 1e3, 1.0, 100), 1.0);
}

TEST(ListenFraction, StrongRelayLinkDecodesFast) {
  MarDraw d{};
  d.h1 = c1(31623.0);  // |h|^2 ~ 1e9
  d.h2 = c1(31623.0);
  const double f = relay_listen_fraction_mar(d, 0.5, 1e3, 1.0, 1000);
  EXPECT_LT(f, 0.15);
  // With unit gains the fraction approaches r1 instead.
  MarDraw unit{};
  unit.h1 = c1(1.0);
  unit.h2 = c1(1.0);
  EXPECT_NEAR(relay_listen_fraction_mar(unit, 0.5, 1e12, 1.0, 1000), 0.5, 0.02);
}

TEST(ListenFraction, SingleSymbolRoundsSaturate) {
  CvmaDraw d{};
  d.h = c1(2.0);
  EXPECT_DOUBLE_EQ(relay_listen_fraction_cvma(d, 0.5, 100.0, 1.0, 1), 1.0);
}

TEST(RoundOutage, RelayStructure) {
  RelayDraw strong{};
  strong.g_sd = c1(1e6);
  RelayDraw dead{};
  for (int ell = 1; ell <= 4; ++ell) {
    EXPECT_FALSE(round_outage_relay(strong, ell, 0.5, 100.0, 1.0, 100));
    EXPECT_TRUE(round_outage_relay(dead, ell, 0.5, 100.0, 1.0, 100));
  }
  // Outage is monotone non-increasing in the round index for a fixed draw.
  TrialRng rng(3, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const RelayDraw d = sample_relay(rng);
    bool prev = round_outage_relay(d, 1, 0.6, 50.0, 1.0, 100);
    for (int ell = 2; ell <= 4; ++ell) {
      const bool cur = round_outage_relay(d, ell, 0.6, 50.0, 1.0, 100);
      EXPECT_LE(cur, prev);
      prev = cur;
    }
  }
}

TEST(RoundOutage, MarUserSwapSymmetry) {
  TrialRng rng(5, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    MarDraw d = sample_mar(rng);
    MarDraw swapped = d;
    std::swap(swapped.g1, swapped.g2);
    std::swap(swapped.h1, swapped.h2);
    const MarOutageFlags a = round_outage_mar(d, 1, 0.5, 100.0, 1.0, 100);
    const MarOutageFlags b = round_outage_mar(swapped, 1, 0.5, 100.0, 1.0, 100);
    EXPECT_EQ(a.type1, b.type2);
    EXPECT_EQ(a.type2, b.type1);
    EXPECT_EQ(a.type12, b.type12);
  }
}

TEST(RoundOutage, MarFirstPhaseDominatesWhenRelayNeverDecodes) {
  // Dead source-relay links force f = 1; the huge relay-destination gain
  // then cannot save a weak direct link.
  MarDraw d{};
  d.gr = c1(1e9);
  d.g1 = c1(1e-6);
  d.g2 = c1(1.0);
  const MarOutageFlags flags = round_outage_mar(d, 1, 0.5, 100.0, 1.0, 100);
  EXPECT_TRUE(flags.type1);
}

TEST(Cvma, LabelingInvariant) {
  TrialRng rng(7, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const CvmaDraw d = sample_cvma(rng);
    const double rho = 100.0;
    const CvmaLabeling lab = label_cvma(d, rho);
    const double sinr_ss = lab.g_ss * rho / (lab.g_is * rho + 1.0);
    EXPECT_GE(sinr_ss, lab.g_si * rho / (lab.g_ii * rho + 1.0) - 1e-12);
    EXPECT_GE(sinr_ss, lab.g_is * rho / (lab.g_ss * rho + 1.0) - 1e-12);
    EXPECT_GE(sinr_ss, lab.g_ii * rho / (lab.g_si * rho + 1.0) - 1e-12);
  }
}

TEST(Cvma, TrialStructure) {
  ProtocolConfig proto{2, 0.5, 100};
  // Near-diagonal strong channel: joint decode succeeds in round one.
  CvmaDraw diag{};
  diag.gain[0][0] = c1(100.0);
  diag.gain[1][1] = c1(100.0);
  diag.gain[0][1] = c1(1e-3);
  diag.gain[1][0] = c1(1e-3);
  diag.h = c1(1.0);
  const ArqTrialOutcome ok = cvma_trial(diag, proto, 100.0, 1.0);
  EXPECT_EQ(ok.rounds_used, 1);
  EXPECT_FALSE(ok.error);

  // Dead channel: no acknowledgments, both users in error after L rounds.
  CvmaDraw dead{};
  const ArqTrialOutcome bad = cvma_trial(dead, proto, 100.0, 1.0);
  EXPECT_EQ(bad.rounds_used, 2);
  EXPECT_TRUE(bad.error);
  EXPECT_TRUE(bad.user_error[0]);
  EXPECT_TRUE(bad.user_error[1]);
  EXPECT_EQ(bad.accept_mask, 0u);
}

TEST(Cvma, UserRelabelingLeavesOutcomeInvariant) {
  ProtocolConfig proto{2, 0.7, 100};
  TrialRng rng(11, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    const CvmaDraw d = sample_cvma(rng);
    CvmaDraw swapped{};
    for (int a = 0; a < 2; ++a)
      for (int u = 0; u < 2; ++u) swapped.gain[a][u] = d.gain[a][1 - u];
    swapped.h = d.h;
    const ArqTrialOutcome x = cvma_trial(d, proto, 50.0, 1.0);
    const ArqTrialOutcome y = cvma_trial(swapped, proto, 50.0, 1.0);
    EXPECT_EQ(x.rounds_used, y.rounds_used);
    EXPECT_EQ(x.error, y.error);
    EXPECT_EQ(x.user_error[0], y.user_error[1]);
    EXPECT_EQ(x.user_error[1], y.user_error[0]);
  }
}

RunConfig base_config(Scenario s, int L, double r1, double snr_db, std::uint64_t n,
                      std::uint64_t seed = 99) {
  RunConfig cfg;
  cfg.scenario = s;
  cfg.proto = ProtocolConfig{L, r1, 100};
  cfg.snr_db = snr_db;
  cfg.n_trials = n;
  cfg.seed = seed;
  cfg.threads = 2;
  return cfg;
}

TEST(RunTrials, ZeroRateNeverFails) {
  const auto est = run_trials(base_config(Scenario::Relay, 2, 0.0, 20.0, 20000));
  EXPECT_EQ(est.errors, 0u);
  EXPECT_DOUBLE_EQ(est.pe, 0.0);
  EXPECT_DOUBLE_EQ(est.eta, 0.0);  // R1 = 0
  for (double p : est.p) EXPECT_DOUBLE_EQ(p, 0.0);
}

TEST(RunTrials, RequestProbabilitiesNonIncreasing) {
  const auto est = run_trials(base_config(Scenario::Relay, 4, 0.7, 12.0, 200000));
  ASSERT_EQ(est.p.size(), 3u);
  EXPECT_GE(est.p[0], est.p[1]);
  EXPECT_GE(est.p[1], est.p[2]);
  EXPECT_GT(est.p[0], 0.0);
}

TEST(RunTrials, ArqAccountingIdentityExact) {
  const auto cfg = base_config(Scenario::Mar, 3, 0.6, 14.0, 100000);
  const TrialCounts counts = run_trials_counts(cfg);
  std::uint64_t requests = 0;
  std::uint64_t beyond = counts.n;
  for (std::size_t ell = 1; ell < counts.rounds_hist.size(); ++ell) {
    beyond -= counts.rounds_hist[ell - 1];
    requests += beyond;
  }
  EXPECT_EQ(counts.rounds_sum, counts.n + requests);
}

TEST(RunTrials, DeterministicAndShardMergeable) {
  const auto cfg = base_config(Scenario::Cvma, 2, 0.5, 16.0, 50000);
  const TrialCounts a = run_trials_counts(cfg);
  const TrialCounts b = run_trials_counts(cfg);
  EXPECT_EQ(a.errors, b.errors);
  EXPECT_EQ(a.rounds_sum, b.rounds_sum);

  auto shard = cfg;
  shard.n_trials = 20000;
  shard.trial_offset = 0;
  TrialCounts merged = run_trials_counts(shard);
  shard.trial_offset = 20000;
  shard.n_trials = 30000;
  merged += run_trials_counts(shard);
  EXPECT_EQ(a.errors, merged.errors);
  EXPECT_EQ(a.rounds_sum, merged.rounds_sum);
  EXPECT_EQ(a.rounds_hist, merged.rounds_hist);

  auto single = cfg;
  single.threads = 1;
  const TrialCounts c = run_trials_counts(single);
  EXPECT_EQ(a.errors, c.errors);
  EXPECT_EQ(a.rounds_hist, c.rounds_hist);
}

TEST(RunTrials, ErrorRateDecreasesWithSnrAndL) {
  const std::uint64_t n = 200000;
  std::uint64_t prev_err = n;
  for (double snr : {8.0, 14.0, 20.0}) {
    const TrialCounts c = run_trials_counts(base_config(Scenario::Relay, 2, 0.5, snr, n));
    EXPECT_FALSE(significant_increase(prev_err, n, c.errors, n));
    prev_err = c.errors;
  }
  const TrialCounts l1 = run_trials_counts(base_config(Scenario::Relay, 1, 0.5, 10.0, n));
  const TrialCounts l2 = run_trials_counts(base_config(Scenario::Relay, 2, 0.5, 10.0, n));
  EXPECT_FALSE(significant_increase(l1.errors, n, l2.errors, n));
  EXPECT_LT(l2.errors, l1.errors);
}

TEST(RunTrials, ThroughputApproachesFirstRoundRate) {
  const auto cfg = base_config(Scenario::Relay, 2, 0.5, 30.0, 200000);
  const auto est = run_trials(cfg);
  const double R1 = cfg.first_round_rate_bits();
  EXPECT_GT(est.eta / R1, 0.95);
}

TEST(Slope, ExactPowerLaw) {
  std::vector<SlopePoint> pts;
  for (double rho : {100.0, 1000.0, 10000.0})
    pts.push_back({rho, std::pow(rho, -2.0), 1000000000000ull, 1000});
  const auto est = estimate_slope(pts);
  EXPECT_NEAR(est.slope, -2.0, 1e-9);
  ASSERT_EQ(est.points.size(), 3u);
}

TEST(Slope, NoisyPowerLaw) {
  std::vector<SlopePoint> pts;
  TrialRng rng(13, 0);
  for (double rho : {100.0, 316.0, 1000.0, 3160.0, 10000.0}) {
    const double noise = 1.0 + 0.01 * (2.0 * rng.uniform() - 1.0);
    pts.push_back({rho, 3.0 * std::pow(rho, -1.5) * noise, 100000000000ull, 100000});
  }
  const auto est = estimate_slope(pts);
  EXPECT_NEAR(est.slope, -1.5, 0.05);
}

TEST(Slope, InsufficientEventsRejected) {
  std::vector<SlopePoint> pts{{100.0, 1e-3, 1000, 1}, {1000.0, 1e-4, 10000, 1},
                              {10000.0, 1e-5, 100000, 1}};
  EXPECT_THROW(estimate_slope(pts), InsufficientEventsError);
}

TEST(Slope, RelaySmokeAgainstAnalytic) {
  // Low-SNR smoke check; the acceptance suite runs the calibrated version.
  std::vector<SlopePoint> pts;
  for (double snr : {14.0, 18.0, 22.0}) {
    auto cfg = base_config(Scenario::Relay, 2, 0.5, snr, 2000000);
    const TrialCounts c = run_trials_counts(cfg);
    pts.push_back({cfg.rho(), static_cast<double>(c.errors) / c.n, c.n, c.errors});
  }
  const auto est = estimate_slope(pts);
  const double d = analytic_diversity(Scenario::Relay, 2, 0.5);
  EXPECT_NEAR(-est.slope, d, 0.45);
}

TEST(Channel, SampleChannelVariantsAndDeterminism) {
  ChannelConfig cfg;
  cfg.scenario = Scenario::Mar;
  TrialRng r1(21, 5), r2(21, 5);
  const auto d1 = sample_channel(cfg, r1);
  const auto d2 = sample_channel(cfg, r2);
  const auto& m1 = std::get<MarDraw>(d1);
  const auto& m2 = std::get<MarDraw>(d2);
  EXPECT_EQ(m1.g1, m2.g1);
  EXPECT_EQ(m1.h2, m2.h2);
}

}  // namespace
}  // namespace arqddf::mc
