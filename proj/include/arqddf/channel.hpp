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

// Quasi-static Rayleigh channel draws and the finite-SNR decision rules of
// the ARQ-DDF protocols: relay listening times (at symbol granularity) and
// per-round mutual-information outage tests. All ARQ rounds of one message
// share one draw (long-term static operation).
//
// Error/accept events are outage proxies: a round is accepted exactly when
// the accumulated mutual information covers the accumulated rate. Undetected
// errors vanish for long blocks and are exercised literally in the codebook
// lab, not here. Pairwise-bound 1/2 factors are dropped (they do not move
// exponents).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <variant>

#include "arqddf/rng.hpp"

namespace arqddf::mc {

enum class Scenario { Relay, Mar, Cvma };

struct ChannelConfig {
  double snr_db = 20.0;
  double noise_ratio_c = 1.0;  // destination noise variance / relay noise variance
  Scenario scenario = Scenario::Relay;

  double rho() const { return std::pow(10.0, snr_db / 10.0); }
};

struct ProtocolConfig {
  int L = 1;        // maximum transmission rounds; 1 = no ARQ
  double r1 = 0.5;  // first-round multiplexing gain
  int T = 100;      // symbols per round (listening-time ceiling granularity)
};

struct RelayDraw {
  std::complex<double> g_sd, g_sr, g_rd;
};

struct MarDraw {
  std::complex<double> g1, g2, gr;  // source/relay to destination
  std::complex<double> h1, h2;      // sources to relay
};

struct CvmaDraw {
  // gain[antenna][user]; h is the inter-user channel.
  std::complex<double> gain[2][2];
  std::complex<double> h;
};

using ChannelDraw = std::variant<RelayDraw, MarDraw, CvmaDraw>;

inline RelayDraw sample_relay(TrialRng& rng) {
  return {rng.complex_gain(), rng.complex_gain(), rng.complex_gain()};
}
inline MarDraw sample_mar(TrialRng& rng) {
  return {rng.complex_gain(), rng.complex_gain(), rng.complex_gain(), rng.complex_gain(),
          rng.complex_gain()};
}
inline CvmaDraw sample_cvma(TrialRng& rng) {
  CvmaDraw d;
  for (auto& row : d.gain)
    for (auto& g : row) g = rng.complex_gain();
  d.h = rng.complex_gain();
  return d;
}

inline ChannelDraw sample_channel(const ChannelConfig& cfg, TrialRng& rng) {
  switch (cfg.scenario) {
    case Scenario::Relay:
      return sample_relay(rng);
    case Scenario::Mar:
      return sample_mar(rng);
    case Scenario::Cvma:
      return sample_cvma(rng);
  }
  throw std::invalid_argument("sample_channel: bad scenario");
}

inline double gain_sq(const std::complex<double>& g) { return std::norm(g); }

namespace detail {
/// ceil(bits / per_symbol_bits) as a symbol count; effectively unbounded
/// when the link supports no rate.
inline std::int64_t ceil_symbols(double bits, double per_symbol_bits) {
  if (bits <= 0.0) return 0;
  if (per_symbol_bits <= 0.0) return INT64_MAX / 4;
  const double s = std::ceil(bits / per_symbol_bits);
  return s > static_cast<double>(INT64_MAX / 4) ? INT64_MAX / 4
                                                : static_cast<std::int64_t>(s);
}
inline double log2_1p(double x) { return std::log2(1.0 + x); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Listening times. R1 denotes the total first-round rate in bits per symbol
// (r1 * log2 rho); one round carries T symbols, so the message needs R1*T
// bits at the relay before it can forward.
// ---------------------------------------------------------------------------

/// Relay channel: symbols (from codeword start) until the relay has decoded.
inline std::int64_t relay_listen_symbols(const RelayDraw& d, double R1, double rho,
                                         double c, int T) {
  return detail::ceil_symbols(R1 * T, detail::log2_1p(c * rho * gain_sq(d.g_sr)));
}

/// MAR: the relay must decode both messages; the binding constraint is the
/// worse of the per-user and sum-rate conditions.
inline std::int64_t mar_listen_symbols(const MarDraw& d, double R1, double rho, double c,
                                       int T) {
  const double h1 = gain_sq(d.h1), h2 = gain_sq(d.h2);
  const std::int64_t per_user = detail::ceil_symbols(
      R1 * T / 2.0, detail::log2_1p(std::min(h1, h2) * c * rho));
  const std::int64_t sum_rate =
      detail::ceil_symbols(R1 * T, detail::log2_1p((h1 + h2) * c * rho));
  return std::max(per_user, sum_rate);
}

/// CVMA: symbols the helping user listens before forwarding (it needs the
/// partner's R1*T/2 bits).
inline std::int64_t cvma_listen_symbols(double h_sq, double R1, double rho, double c,
                                        int T) {
  return detail::ceil_symbols(R1 * T / 2.0, 2.0 * detail::log2_1p(h_sq * c * rho));
}

/// Single-round listening fractions (f = T'/T, capped at one round).
inline double relay_listen_fraction_mar(const MarDraw& d, double r1, double rho, double c,
                                        int T) {
  const double R1 = r1 * std::log2(rho);
  return static_cast<double>(std::min<std::int64_t>(T, mar_listen_symbols(d, R1, rho, c, T))) /
         T;
}
inline double relay_listen_fraction_cvma(const CvmaDraw& d, double r1, double rho,
                                         double c, int T) {
  const double R1 = r1 * std::log2(rho);
  return static_cast<double>(
             std::min<std::int64_t>(T, cvma_listen_symbols(gain_sq(d.h), R1, rho, c, T))) /
         T;
}

// ---------------------------------------------------------------------------
// Per-round outage tests. After ell rounds a message of R1*T bits has used
// ell*T symbols, i.e. rate R1/ell per symbol.
// ---------------------------------------------------------------------------

/// Relay destination outage at the end of round ell.
inline bool round_outage_relay(const RelayDraw& d, int ell, double r1, double rho,
                               double c, int T) {
  if (ell < 1) throw std::invalid_argument("round_outage_relay: ell >= 1");
  const double R1 = r1 * std::log2(rho);
  const std::int64_t horizon = static_cast<std::int64_t>(ell) * T;
  const std::int64_t listen = std::min(relay_listen_symbols(d, R1, rho, c, T), horizon);
  const double f = static_cast<double>(listen) / static_cast<double>(horizon);
  const double direct = detail::log2_1p(rho * gain_sq(d.g_sd));
  const double coop = detail::log2_1p(rho * (gain_sq(d.g_sd) + gain_sq(d.g_rd)));
  return f * direct + (1.0 - f) * coop < R1 / ell;
}

struct MarOutageFlags {
  bool type1 = false;
  bool type2 = false;
  bool type12 = false;
  bool any() const { return type1 || type2 || type12; }
};

/// MAR destination outage flags at the end of round ell: per-user events at
/// half the per-symbol rate, joint event at the full rate.
inline MarOutageFlags round_outage_mar(const MarDraw& d, int ell, double r1, double rho,
                                       double c, int T) {
  if (ell < 1) throw std::invalid_argument("round_outage_mar: ell >= 1");
  const double R1 = r1 * std::log2(rho);
  const std::int64_t horizon = static_cast<std::int64_t>(ell) * T;
  const std::int64_t listen = std::min(mar_listen_symbols(d, R1, rho, c, T), horizon);
  const double f = static_cast<double>(listen) / static_cast<double>(horizon);
  const double rate = R1 / ell;

  const double g1 = gain_sq(d.g1), g2 = gain_sq(d.g2), gr = gain_sq(d.gr);
  auto two_phase = [&](double first, double second) {
    return f * detail::log2_1p(rho * first) + (1.0 - f) * detail::log2_1p(rho * second);
  };
  MarOutageFlags flags;
  flags.type1 = two_phase(g1, g1 + gr) < rate / 2.0;
  flags.type2 = two_phase(g2, g2 + gr) < rate / 2.0;
  flags.type12 = two_phase(g1 + g2, g1 + g2 + gr) < rate;
  return flags;
}

// ---------------------------------------------------------------------------
// CVMA decoder geometry.
// ---------------------------------------------------------------------------

/// Superior/inferior labeling: the (source, antenna) pair with the largest
/// signal-to-interference-and-noise ratio is superior. Gains are remapped so
/// that ss/is are at the superior antenna and si/ii at the other.
struct CvmaLabeling {
  int sup_user = 0, sup_antenna = 0;
  double g_ss = 0, g_is = 0, g_si = 0, g_ii = 0;  // squared magnitudes
  double h_sq = 0;
};

inline CvmaLabeling label_cvma(const CvmaDraw& d, double rho) {
  double best = -1.0;
  int bu = 0, ba = 0;
  for (int a = 0; a < 2; ++a) {
    for (int u = 0; u < 2; ++u) {
      const double sinr =
          gain_sq(d.gain[a][u]) * rho / (gain_sq(d.gain[a][1 - u]) * rho + 1.0);
      if (sinr > best) {
        best = sinr;
        bu = u;
        ba = a;
      }
    }
  }
  CvmaLabeling lab;
  lab.sup_user = bu;
  lab.sup_antenna = ba;
  lab.g_ss = gain_sq(d.gain[ba][bu]);
  lab.g_is = gain_sq(d.gain[ba][1 - bu]);
  lab.g_si = gain_sq(d.gain[1 - ba][bu]);
  lab.g_ii = gain_sq(d.gain[1 - ba][1 - bu]);
  lab.h_sq = gain_sq(d.h);
  return lab;
}

/// Joint two-user, two-antenna mutual information per symbol:
/// log2 det(I + rho G G^H).
inline double cvma_joint_info(const CvmaDraw& d, double rho) {
  const double m11 = gain_sq(d.gain[0][0]) + gain_sq(d.gain[0][1]);
  const double m22 = gain_sq(d.gain[1][0]) + gain_sq(d.gain[1][1]);
  const std::complex<double> m12 = d.gain[0][0] * std::conj(d.gain[1][0]) +
                                   d.gain[0][1] * std::conj(d.gain[1][1]);
  const double det =
      (1.0 + rho * m11) * (1.0 + rho * m22) - rho * rho * std::norm(m12);
  return std::log2(det);
}

/// Superior single-user info per symbol, inferior treated as interference.
inline double cvma_superior_info(const CvmaLabeling& lab, double rho) {
  return detail::log2_1p(rho * lab.g_ss / (1.0 + rho * lab.g_is));
}

/// Accumulated inferior-message information by the end of round ell, given
/// the superior message was acknowledged at sup_round and the helper started
/// listening then. Phase one (superior known or silent): the inferior is
/// received clean at both antennas; phase two (helper forwarding): all four
/// links contribute.
inline double cvma_inferior_info_total(const CvmaLabeling& lab, int ell, int sup_round,
                                       double R1, double rho, double c, int T) {
  const std::int64_t listen = cvma_listen_symbols(lab.h_sq, R1, rho, c, T);
  const std::int64_t since_ack = static_cast<std::int64_t>(ell - sup_round) * T;
  const std::int64_t helped = std::max<std::int64_t>(0, since_ack - listen);
  const std::int64_t alone = static_cast<std::int64_t>(ell) * T - helped;
  const double i_alone = detail::log2_1p(rho * (lab.g_is + lab.g_ii));
  const double i_all =
      detail::log2_1p(rho * (lab.g_ss + lab.g_si + lab.g_is + lab.g_ii));
  return (static_cast<double>(alone) * i_alone + static_cast<double>(helped) * i_all) / T;
}

}  // namespace arqddf::mc
