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

#pragma once

// Finite-SNR Monte Carlo of the ARQ-DDF protocols. A trial draws one
// quasi-static channel, runs the round-by-round accept/decode state machine,
// and records rounds used plus final error flags. Counts are plain integer
// sums, so shards merge exactly and results are independent of the thread
// count.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "arqddf/channel.hpp"
#include "arqddf/dmt.hpp"
#include "arqddf/rng.hpp"
#include "arqddf/stats.hpp"

namespace arqddf::mc {

struct ArqTrialOutcome {
  int rounds_used = 1;          // first fully-acknowledged round, or L
  std::uint32_t accept_mask = 0;  // bit ell-1: some ACK was sent at round ell
  bool error = false;             // any user in error at the final decode
  bool user_error[2] = {false, false};
};

// --- single-trial state machines -------------------------------------------

inline ArqTrialOutcome relay_trial(const RelayDraw& d, const ProtocolConfig& proto,
                                   double rho, double c) {
  ArqTrialOutcome out;
  for (int ell = 1; ell < proto.L; ++ell) {
    if (!round_outage_relay(d, ell, proto.r1, rho, c, proto.T)) {
      out.rounds_used = ell;
      out.accept_mask |= 1u << (ell - 1);
      return out;
    }
  }
  out.rounds_used = proto.L;
  out.error = round_outage_relay(d, proto.L, proto.r1, rho, c, proto.T);
  if (!out.error) out.accept_mask |= 1u << (proto.L - 1);
  out.user_error[0] = out.error;
  return out;
}

inline ArqTrialOutcome mar_trial(const MarDraw& d, const ProtocolConfig& proto, double rho,
                                 double c) {
  ArqTrialOutcome out;
  for (int ell = 1; ell < proto.L; ++ell) {
    if (!round_outage_mar(d, ell, proto.r1, rho, c, proto.T).any()) {
      out.rounds_used = ell;
      out.accept_mask |= 1u << (ell - 1);
      return out;
    }
  }
  out.rounds_used = proto.L;
  const MarOutageFlags flags = round_outage_mar(d, proto.L, proto.r1, rho, c, proto.T);
  out.error = flags.any();
  out.user_error[0] = flags.type1 || flags.type12;
  out.user_error[1] = flags.type2 || flags.type12;
  if (!out.error) out.accept_mask |= 1u << (proto.L - 1);
  return out;
}

/// CVMA round sequence: while nobody is acknowledged, try the joint decode,
/// then the superior-only decode (rounds before L). Once the superior
/// message is acknowledged it relays for the inferior one, which is decoded
/// with the two-phase accumulated information. The final round decodes
/// whatever is still pending.
inline ArqTrialOutcome cvma_trial(const CvmaDraw& d, const ProtocolConfig& proto,
                                  double rho, double c) {
  ArqTrialOutcome out;
  const double R1 = proto.r1 * std::log2(rho);
  const CvmaLabeling lab = label_cvma(d, rho);
  const double joint_info = cvma_joint_info(d, rho);
  const double sup_info = cvma_superior_info(lab, rho);
  const int sup_idx = lab.sup_user, inf_idx = 1 - lab.sup_user;

  int sup_round = 0;  // 0 = superior not yet acknowledged
  for (int ell = 1; ell <= proto.L; ++ell) {
    const bool final_round = ell == proto.L;
    if (sup_round == 0) {
      if (static_cast<double>(ell) * joint_info >= R1) {
        out.rounds_used = ell;
        out.accept_mask |= 1u << (ell - 1);
        return out;  // both decoded, no error by the outage proxy
      }
      if (final_round) {
        out.rounds_used = proto.L;
        out.error = true;  // joint decode fails at the last round
        out.user_error[0] = out.user_error[1] = true;
        return out;
      }
      if (static_cast<double>(ell) * sup_info >= R1 / 2.0) {
        sup_round = ell;
        out.accept_mask |= 1u << (ell - 1);
      }
    } else {
      const double inf_info =
          cvma_inferior_info_total(lab, ell, sup_round, R1, rho, c, proto.T);
      if (inf_info >= R1 / 2.0) {
        out.rounds_used = ell;
        out.accept_mask |= 1u << (ell - 1);
        return out;
      }
      if (final_round) {
        out.rounds_used = proto.L;
        out.error = true;
        out.user_error[inf_idx] = true;
        (void)sup_idx;
        return out;
      }
    }
  }
  out.rounds_used = proto.L;
  return out;
}

// --- aggregation -------------------------------------------------------------

struct RunConfig {
  Scenario scenario = Scenario::Relay;
  ProtocolConfig proto;
  double snr_db = 20.0;
  double noise_ratio_c = 1.0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 1;
  std::uint64_t trial_offset = 0;  // first trial index (shard support)
  int threads = 1;

  double rho() const { return std::pow(10.0, snr_db / 10.0); }
  double first_round_rate_bits() const { return proto.r1 * std::log2(rho()); }
};

struct TrialCounts {
  std::uint64_t n = 0;
  std::uint64_t errors = 0;
  std::uint64_t user_errors[2] = {0, 0};
  std::uint64_t rounds_sum = 0;
  std::vector<std::uint64_t> rounds_hist;  // index ell-1: trials with rounds_used == ell

  TrialCounts() = default;
  explicit TrialCounts(int L) : rounds_hist(static_cast<std::size_t>(L), 0) {}

  TrialCounts& operator+=(const TrialCounts& o) {
    if (rounds_hist.size() != o.rounds_hist.size())
      throw std::invalid_argument("TrialCounts: incompatible shard shapes");
    n += o.n;
    errors += o.errors;
    user_errors[0] += o.user_errors[0];
    user_errors[1] += o.user_errors[1];
    rounds_sum += o.rounds_sum;
    for (std::size_t i = 0; i < rounds_hist.size(); ++i) rounds_hist[i] += o.rounds_hist[i];
    return *this;
  }

  void record(const ArqTrialOutcome& out) {
    ++n;
    errors += out.error ? 1 : 0;
    user_errors[0] += out.user_error[0] ? 1 : 0;
    user_errors[1] += out.user_error[1] ? 1 : 0;
    rounds_sum += static_cast<std::uint64_t>(out.rounds_used);
    rounds_hist.at(static_cast<std::size_t>(out.rounds_used - 1)) += 1;
  }

  /// P(rounds_used > ell) for ell = 1..L-1: the retransmission-request
  /// probabilities.
  std::vector<double> p_request() const {
    std::vector<double> p;
    if (rounds_hist.size() <= 1 || n == 0) return p;
    std::uint64_t beyond = n;
    for (std::size_t ell = 1; ell < rounds_hist.size(); ++ell) {
      beyond -= rounds_hist[ell - 1];
      p.push_back(static_cast<double>(beyond) / static_cast<double>(n));
    }
    return p;
  }
};

inline ArqTrialOutcome run_one_trial(const RunConfig& cfg, std::uint64_t trial_index) {
  TrialRng rng(cfg.seed, trial_index);
  const double rho = cfg.rho();
  switch (cfg.scenario) {
    case Scenario::Relay:
      return relay_trial(sample_relay(rng), cfg.proto, rho, cfg.noise_ratio_c);
    case Scenario::Mar:
      return mar_trial(sample_mar(rng), cfg.proto, rho, cfg.noise_ratio_c);
    case Scenario::Cvma:
      return cvma_trial(sample_cvma(rng), cfg.proto, rho, cfg.noise_ratio_c);
  }
  throw std::invalid_argument("run_one_trial: bad scenario");
}

/// Runs trials [trial_offset, trial_offset + n_trials). Thread blocks merge
/// in index order, so counts do not depend on the thread count.
inline TrialCounts run_trials_counts(const RunConfig& cfg) {
  if (cfg.scenario == Scenario::Cvma && cfg.proto.L < 2)
    throw std::invalid_argument("cvma needs L >= 2");
  const int nthreads = std::max(1, cfg.threads);
  std::vector<TrialCounts> parts(static_cast<std::size_t>(nthreads), TrialCounts(cfg.proto.L));
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (cfg.n_trials + nthreads - 1) / std::max<std::uint64_t>(nthreads, 1);
  for (int t = 0; t < nthreads; ++t) {
    const std::uint64_t begin = cfg.trial_offset + chunk * static_cast<std::uint64_t>(t);
    const std::uint64_t end =
        std::min(cfg.trial_offset + cfg.n_trials, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&cfg, &parts, t, begin, end] {
      TrialCounts local(cfg.proto.L);
      for (std::uint64_t i = begin; i < end; ++i) local.record(run_one_trial(cfg, i));
      parts[static_cast<std::size_t>(t)] = std::move(local);
    });
  }
  for (auto& w : workers) w.join();
  TrialCounts total(cfg.proto.L);
  for (const auto& p : parts) {
    if (p.rounds_hist.empty()) continue;
    total += p;
  }
  return total;
}

struct TrialEstimates {
  double pe = 0.0, pe_lo = 0.0, pe_hi = 0.0;
  double eta = 0.0;              // average throughput, bits per channel use
  std::vector<double> p;         // p(ell), ell = 1..L-1
  std::uint64_t n = 0, errors = 0;
};

inline TrialEstimates estimates_from(const TrialCounts& counts, const RunConfig& cfg) {
  TrialEstimates est;
  est.n = counts.n;
  est.errors = counts.errors;
  est.pe = counts.n ? static_cast<double>(counts.errors) / counts.n : 0.0;
  const Interval ci = wilson95(counts.errors, counts.n);
  est.pe_lo = ci.lo;
  est.pe_hi = ci.hi;
  est.p = counts.p_request();
  double denom = 1.0;
  for (double p : est.p) denom += p;
  const double R1 = cfg.first_round_rate_bits();
  est.eta = R1 / denom;
  return est;
}

inline TrialEstimates run_trials(const RunConfig& cfg) {
  return estimates_from(run_trials_counts(cfg), cfg);
}

/// Analytic diversity target for a simulated configuration (what the fitted
/// slope should approach as SNR grows).
inline double analytic_diversity(Scenario scenario, int L, double r1) {
  switch (scenario) {
    case Scenario::Relay:
      return L >= 2 ? dmt::relay_arq_dmt(r1, L) : dmt::ddf_relay_dmt(r1);
    case Scenario::Mar:
      return L >= 2 ? dmt::mar_arq_dmt(r1, L) : dmt::ddf_mar_lower(r1);
    case Scenario::Cvma:
      if (L >= 2 && L % 2 == 0)
        return L == 2 ? dmt::cvma_ddf_lower_two_rounds(r1)
                      : dmt::cvma_ddf_lower_general(r1, L);
      throw std::invalid_argument("no analytic CVMA bound for odd L");
  }
  throw std::invalid_argument("analytic_diversity: bad scenario");
}

}  // namespace arqddf::mc
