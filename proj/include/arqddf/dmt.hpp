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

// Closed-form diversity-multiplexing tradeoff (DMT) curves for the ARQ-DDF
// cooperative protocols: the single-relay channel, the two-user multiple
// access relay (MAR) channel, and the cooperative vector multiple access
// (CVMA) channel, plus the per-error-type component curves and the
// listening-fraction lambda functions they are built from.
//
// Conventions:
//  - r is the multiplexing gain; r_e the effective (ARQ) multiplexing gain.
//  - L is the maximum number of ARQ rounds; L = 1 means no ARQ.
//  - Formulas stated on half-open ranges keep them: evaluating at an
//    excluded right endpoint throws std::domain_error rather than
//    extrapolating.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "arqddf/curve.hpp"

namespace arqddf::dmt {

// ---------------------------------------------------------------------------
// Curve builders. All breakpoints are exact rationals.
// ---------------------------------------------------------------------------

/// Optimal DMT of an m x n Rayleigh MIMO channel: the piecewise-linear
/// curve through (k, (m-k)(n-k)), k = 0..min(m,n). Only antenna counts up
/// to 3 are needed here.
inline PiecewiseCurve mimo_dmt_curve(int m, int n) {
  if (m < 1 || m > 3 || n < 1 || n > 3)
    throw std::invalid_argument("mimo_dmt: antenna counts must be in {1,2,3}");
  const int kmax = std::min(m, n);
  std::vector<CurveSegment> segs;
  for (int k = 0; k < kmax; ++k) {
    const Rat d0((m - k) * (n - k));
    const Rat d1((m - k - 1) * (n - k - 1));
    const Rat slope = d1 - d0;
    segs.push_back(CurveSegment::affine(d0 - slope * Rat(k), slope, Rat(k), Rat(k + 1)));
  }
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// DDF relay-channel DMT (no ARQ): 2(1-r) for r <= 1/2, (1-r)/r for
/// 1/2 < r < 1. The r > 1/2 branch is the reference DDF curve; this
/// library's own results only evaluate it at r <= 1/2.
inline PiecewiseCurve ddf_relay_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(2), Rat(-2), Rat(0), Rat(1, 2)),
      CurveSegment{Rat(1), Rat(-1), Rat(0), Rat(1), Rat(1, 2), Rat(1)},
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/false);
}

/// Relay channel with L >= 2 ARQ rounds: d(r_e) = 2(1 - r_e/L) on [0, 1).
inline PiecewiseCurve relay_arq_curve(int L) {
  if (L < 2) throw std::domain_error("relay_arq: L must be >= 2");
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(2), Rat(-2, L), Rat(0), Rat(1))};
  return PiecewiseCurve(std::move(segs), /*right_closed=*/false);
}

/// Upper bound on the two-user MAR DMT (no ARQ): 2-r then 3(1-r), on [0,1].
inline PiecewiseCurve mar_upper_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(2), Rat(-1), Rat(0), Rat(1, 2)),
      CurveSegment::affine(Rat(3), Rat(-3), Rat(1, 2), Rat(1)),
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// Lower bound achieved by DDF in the two-user MAR channel (no ARQ):
/// 2-r on [0,1/2], 3(1-r) on [1/2,2/3], 2(1-r)/r on [2/3,1].
inline PiecewiseCurve ddf_mar_lower_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(2), Rat(-1), Rat(0), Rat(1, 2)),
      CurveSegment::affine(Rat(3), Rat(-3), Rat(1, 2), Rat(2, 3)),
      CurveSegment{Rat(2), Rat(-2), Rat(0), Rat(1), Rat(2, 3), Rat(1)},
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// Two-user MAR channel with L >= 2 ARQ rounds: d(r_e) = 2 - r_e/L on [0,1).
inline PiecewiseCurve mar_arq_curve(int L) {
  if (L < 2) throw std::domain_error("mar_arq: L must be >= 2");
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(2), Rat(-1, L), Rat(0), Rat(1))};
  return PiecewiseCurve(std::move(segs), /*right_closed=*/false);
}

/// Upper bound on the CVMA DMT with L ARQ rounds:
/// min{3(1 - r_e/(2L)), 4 - 3 r_e/L} on [0, 2). The curve form requires
/// L >= 2 (for L = 1 the second term goes negative past r_e = 4/3; use the
/// scalar cvma_upper for that case).
inline PiecewiseCurve cvma_upper_curve(int L) {
  if (L < 2) throw std::domain_error("cvma_upper_curve: L must be >= 2");
  PiecewiseCurve one(
      {CurveSegment::affine(Rat(3), Rat(-3, 2 * L), Rat(0), Rat(2))},
      /*right_closed=*/false);
  PiecewiseCurve two(
      {CurveSegment::affine(Rat(4), Rat(-3, L), Rat(0), Rat(2))},
      /*right_closed=*/false);
  return one.min_with(two);
}

/// DMT achieved by the ARQ-DDF CVMA protocol with two rounds:
/// 3-r_e, then 4-2r_e, then 2-r_e/2, on [0, 2).
inline PiecewiseCurve cvma_lower_two_rounds_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(3), Rat(-1), Rat(0), Rat(1)),
      CurveSegment::affine(Rat(4), Rat(-2), Rat(1), Rat(4, 3)),
      CurveSegment::affine(Rat(2), Rat(-1, 2), Rat(4, 3), Rat(2)),
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/false);
}

/// General even-L CVMA lower bound: the two-round curve evaluated at
/// 2 r_e / L, i.e. breakpoints scaled by L/2. Domain [0, L).
inline PiecewiseCurve cvma_lower_general_curve(int L) {
  if (L < 2 || L % 2 != 0)
    throw std::domain_error("cvma_lower_general: L must be even and >= 2");
  const Rat s(L, 2);  // r_e = s * r_two
  const PiecewiseCurve two = cvma_lower_two_rounds_curve();
  std::vector<CurveSegment> segs;
  for (const auto& seg : two.segments()) {
    segs.push_back(CurveSegment{seg.a, seg.b / s, seg.c, seg.e / s, seg.lo * s, seg.hi * s});
  }
  return PiecewiseCurve(std::move(segs), /*right_closed=*/false);
}

/// Component curve for single-user (type-{1}) MAR errors:
/// 2-r, (4-5r)/(2(1-r)), (2-r)/(2r) on [0,1].
inline PiecewiseCurve d_type1_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(2), Rat(-1), Rat(0), Rat(1, 2)),
      CurveSegment{Rat(4), Rat(-5), Rat(2), Rat(-2), Rat(1, 2), Rat(2, 3)},
      CurveSegment{Rat(2), Rat(-1), Rat(0), Rat(2), Rat(2, 3), Rat(1)},
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// Component curve for joint (type-{1,2}) MAR errors:
/// 3(1-r) on [0,2/3], 2(1-r)/r on [2/3,1].
inline PiecewiseCurve d_type12_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(3), Rat(-3), Rat(0), Rat(2, 3)),
      CurveSegment{Rat(2), Rat(-2), Rat(0), Rat(1), Rat(2, 3), Rat(1)},
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// CVMA inferior-message error exponent: 3-r1 on [0,1], 2(4-r1)/(2+r1) on
/// [1,2].
inline PiecewiseCurve d_inferior_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(3), Rat(-1), Rat(0), Rat(1)),
      CurveSegment{Rat(8), Rat(-2), Rat(2), Rat(1), Rat(1), Rat(2)},
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// CVMA superior-acknowledged, joint-inferior error exponent:
/// 4-2r1 on [0,4/3], 2-r1/2 on [4/3,2].
inline PiecewiseCurve d_superior_ji_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(4), Rat(-2), Rat(0), Rat(4, 3)),
      CurveSegment::affine(Rat(2), Rat(-1, 2), Rat(4, 3), Rat(2)),
  };
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

/// CVMA superior-acknowledged, joint-superior error exponent: 4-r1 on [0,2].
inline PiecewiseCurve d_superior_js_curve() {
  std::vector<CurveSegment> segs{
      CurveSegment::affine(Rat(4), Rat(-1), Rat(0), Rat(2))};
  return PiecewiseCurve(std::move(segs), /*right_closed=*/true);
}

// ---------------------------------------------------------------------------
// Scalar evaluation. These route through the curve builders so that the
// branch formulas live in exactly one place.
// ---------------------------------------------------------------------------

inline double mimo_dmt(int m, int n, double r) { return mimo_dmt_curve(m, n).value(r); }

inline double arq_mimo_dmt(int m, int n, double r_e, int L) {
  if (L < 1) throw std::domain_error("arq_mimo_dmt: L must be >= 1");
  return mimo_dmt(m, n, r_e / L);
}

inline double ddf_relay_dmt(double r) { return ddf_relay_curve().value(r); }

inline double relay_arq_dmt(double r_e, int L) { return relay_arq_curve(L).value(r_e); }

inline double mar_upper(double r) { return mar_upper_curve().value(r); }

inline double ddf_mar_lower(double r) { return ddf_mar_lower_curve().value(r); }

inline double mar_arq_dmt(double r_e, int L) { return mar_arq_curve(L).value(r_e); }

/// min{3(1 - r_e/(2L)), 4 - 3 r_e/L} for 0 <= r_e < 2, L >= 1. For L = 1
/// this is evaluated as stated even where the second term dips below zero.
inline double cvma_upper(double r_e, int L) {
  if (L < 1) throw std::domain_error("cvma_upper: L must be >= 1");
  if (r_e < 0 || r_e >= 2) throw std::domain_error("cvma_upper: r_e outside [0, 2)");
  return std::min(3.0 * (1.0 - r_e / (2.0 * L)), 4.0 - 3.0 * r_e / L);
}

inline double cvma_ddf_lower_two_rounds(double r_e) {
  return cvma_lower_two_rounds_curve().value(r_e);
}

inline double cvma_ddf_lower_general(double r_e, int L) {
  return cvma_lower_general_curve(L).value(r_e);
}

// ---------------------------------------------------------------------------
// Listening-fraction lambda functions (component infima as functions of the
// relay/helper listening fraction f). These are the closed forms; the
// outage optimizer re-derives them numerically.
// ---------------------------------------------------------------------------

namespace detail {
inline void check_unit(double x, const char* what) {
  if (x < 0 || x > 1) throw std::domain_error(std::string(what) + " outside [0, 1]");
}
}  // namespace detail

/// Source-order infimum for a type-{1} MAR outage at listening fraction f.
inline double lambda_type1(double f, double r) {
  detail::check_unit(f, "lambda_type1: f");
  detail::check_unit(r, "lambda_type1: r");
  if (f < 0.5) return 2.0 - r;
  if (f < 1.0 - r / 2.0) return 2.0 - r / (2.0 * (1.0 - f));
  return (2.0 - r) / (2.0 * f);
}

/// Source-order infimum for a type-{1,2} MAR outage at listening fraction f.
/// The middle branch exists only for r < 1/3.
inline double lambda_type12(double f, double r) {
  detail::check_unit(f, "lambda_type12: f");
  detail::check_unit(r, "lambda_type12: r");
  if (f < 2.0 / 3.0) return 3.0 * (1.0 - r);
  if (r < 1.0 / 3.0 && f < 1.0 - r) return 3.0 - r / (1.0 - f);
  return 2.0 * (1.0 - r) / f;
}

/// Infimum of u1+u2 over order pairs whose listening rule yields fraction f
/// (MAR). Defined for f >= r; the rule cannot produce smaller fractions.
inline double lambda_sources(double f, double r) {
  detail::check_unit(f, "lambda_sources: f");
  detail::check_unit(r, "lambda_sources: r");
  if (f < r) throw std::domain_error("lambda_sources: f < r");
  if (r == 0.0) return f == 0.0 ? 0.0 : 1.0;
  if (f < 1.5 * r) return 2.0 * (1.0 - r / f);
  return 1.0 - r / (2.0 * f);
}

/// CVMA inferior-outage source-order infimum at helper listening fraction f.
inline double lambda_cvma_inferior(double f, double r1) {
  detail::check_unit(f, "lambda_cvma_inferior: f");
  if (r1 < 0 || r1 > 2) throw std::domain_error("lambda_cvma_inferior: r1 outside [0, 2]");
  if (f < 1.0 - r1 / 2.0) return 4.0 - r1 / (1.0 - f);
  return (4.0 - r1) / (1.0 + f);
}

/// Infimum of the inter-user order u whose listening rule yields fraction f
/// (CVMA): 1 - r1/(2f) on f >= r1/2.
inline double lambda_cvma_listen(double f, double r1) {
  detail::check_unit(f, "lambda_cvma_listen: f");
  if (r1 < 0 || r1 > 2) throw std::domain_error("lambda_cvma_listen: r1 outside [0, 2]");
  if (f < r1 / 2.0) throw std::domain_error("lambda_cvma_listen: f < r1/2");
  if (r1 == 0.0) return f == 0.0 ? 0.0 : 1.0;
  return 1.0 - r1 / (2.0 * f);
}

inline double d_type1(double r) { return d_type1_curve().value(r); }
inline double d_type12(double r) { return d_type12_curve().value(r); }
inline double d_inferior(double r1) { return d_inferior_curve().value(r1); }
inline double d_superior_jointinferior(double r1) { return d_superior_ji_curve().value(r1); }
inline double d_superior_jointsuperior(double r1) { return d_superior_js_curve().value(r1); }

// ---------------------------------------------------------------------------
// Curve registry for exports. Ids ending in "-lower" are achievability
// lower bounds; "-upper" are converse bounds.
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& curve_ids() {
  static const std::vector<std::string> ids{
      "ddf-relay",      "relay-arq",     "mar-upper",      "ddf-mar-lower",
      "mar-arq",        "cvma-upper",    "ddf-cvma-lower", "d-type1",
      "d-type12",       "d-inferior",    "d-superior-ji",  "d-superior-js",
  };
  return ids;
}

/// Builds the curve for an export id. L is ignored by the non-ARQ curves.
/// Throws std::invalid_argument for unknown ids, std::domain_error for an L
/// the curve does not admit.
inline PiecewiseCurve curve_by_id(const std::string& id, int L) {
  if (id == "ddf-relay") return ddf_relay_curve();
  if (id == "relay-arq") return relay_arq_curve(L);
  if (id == "mar-upper") return mar_upper_curve();
  if (id == "ddf-mar-lower") return ddf_mar_lower_curve();
  if (id == "mar-arq") return mar_arq_curve(L);
  if (id == "cvma-upper") return cvma_upper_curve(L);
  if (id == "ddf-cvma-lower")
    return L == 2 ? cvma_lower_two_rounds_curve() : cvma_lower_general_curve(L);
  if (id == "d-type1") return d_type1_curve();
  if (id == "d-type12") return d_type12_curve();
  if (id == "d-inferior") return d_inferior_curve();
  if (id == "d-superior-ji") return d_superior_ji_curve();
  if (id == "d-superior-js") return d_superior_js_curve();
  throw std::invalid_argument("unknown curve id: " + id);
}

}  // namespace arqddf::dmt
