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

#include "arqddf/dmt.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace arqddf::dmt {
namespace {

constexpr double kExact = 1e-12;

TEST(MimoDmt, BreakpointInterpolation) {
  EXPECT_NEAR(mimo_dmt(2, 1, 0.0), 2.0, kExact);
  EXPECT_NEAR(mimo_dmt(2, 2, 1.0), 1.0, kExact);
  EXPECT_NEAR(mimo_dmt(1, 3, 0.5), 1.5, kExact);
  EXPECT_NEAR(mimo_dmt(2, 2, 0.5), 2.5, kExact);
  EXPECT_NEAR(mimo_dmt(3, 3, 1.5), 2.5, kExact);
  EXPECT_NEAR(mimo_dmt(3, 1, 1.0), 0.0, kExact);
  EXPECT_THROW(mimo_dmt(2, 2, -0.1), std::domain_error);
  EXPECT_THROW(mimo_dmt(2, 2, 2.1), std::domain_error);
  EXPECT_THROW(mimo_dmt(4, 1, 0.0), std::invalid_argument);
}

TEST(ArqMimoDmt, ScalesRate) {
  EXPECT_NEAR(arq_mimo_dmt(2, 1, 1.0, 2), 1.0, kExact);
  EXPECT_NEAR(arq_mimo_dmt(2, 2, 0.0, 4), 4.0, kExact);
  EXPECT_NEAR(arq_mimo_dmt(1, 3, 1.5, 3), 1.5, kExact);
}

TEST(DdfRelay, Branches) {
  EXPECT_NEAR(ddf_relay_dmt(0.0), 2.0, kExact);
  EXPECT_NEAR(ddf_relay_dmt(0.25), 1.5, kExact);
  EXPECT_NEAR(ddf_relay_dmt(0.5), 1.0, kExact);  // branches agree
  EXPECT_NEAR(ddf_relay_dmt(0.75), (1 - 0.75) / 0.75, kExact);
  EXPECT_THROW(ddf_relay_dmt(1.0), std::domain_error);
}

TEST(RelayArq, Formula) {
  EXPECT_NEAR(relay_arq_dmt(0.0, 2), 2.0, kExact);
  EXPECT_NEAR(relay_arq_dmt(0.5, 2), 1.5, kExact);
  EXPECT_NEAR(relay_arq_dmt(0.9, 3), 1.4, kExact);
  EXPECT_THROW(relay_arq_dmt(1.0, 2), std::domain_error);
  EXPECT_THROW(relay_arq_dmt(0.5, 1), std::domain_error);
}

TEST(MarUpper, Values) {
  EXPECT_NEAR(mar_upper(0.0), 2.0, kExact);
  EXPECT_NEAR(mar_upper(0.5), 1.5, kExact);
  EXPECT_NEAR(mar_upper(1.0), 0.0, kExact);
  EXPECT_THROW(mar_upper(1.01), std::domain_error);
}

// The upper bound must equal the min over the four cut-set MIMO curves.
TEST(MarUpper, MatchesCutSetMin) {
  auto upper = mar_upper_curve();
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    const double cut = std::min(
        std::min(mimo_dmt(3, 1, r), mimo_dmt(2, 2, r)),
        std::min(mimo_dmt(2, 1, r / 2), mimo_dmt(1, 2, r / 2)));
    EXPECT_NEAR(upper.value(r), cut, kExact) << "r=" << r;
  }
}

TEST(DdfMarLower, Values) {
  EXPECT_NEAR(ddf_mar_lower(0.5), 1.5, kExact);
  EXPECT_NEAR(ddf_mar_lower(2.0 / 3.0), 1.0, 1e-9);
  EXPECT_NEAR(ddf_mar_lower(0.8), 0.5, kExact);
  EXPECT_EQ(ddf_mar_lower_curve().value_exact(Rat(2, 3)), Rat(1));
}

// Eq-level identity: the DDF MAR lower bound is the min of the two
// per-error-type component curves.
TEST(DdfMarLower, MatchesComponentMin) {
  auto composite = d_type1_curve().min_with(d_type12_curve());
  auto lower = ddf_mar_lower_curve();
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    EXPECT_NEAR(lower.value(r), composite.value(r), kExact) << "r=" << r;
  }
}

TEST(MarArq, ValuesAndConsistency) {
  EXPECT_NEAR(mar_arq_dmt(0.0, 2), 2.0, kExact);
  EXPECT_NEAR(mar_arq_dmt(0.5, 2), 1.75, kExact);
  EXPECT_NEAR(mar_arq_dmt(0.99, 2), 1.505, kExact);
  EXPECT_THROW(mar_arq_dmt(1.0, 2), std::domain_error);
  EXPECT_THROW(mar_arq_dmt(0.5, 1), std::domain_error);

  // Theorem-level: equals the non-ARQ lower bound at r_e/L and the ARQ
  // cut-set min, for all grid points and L in {2,3,4}.
  for (int L = 2; L <= 4; ++L) {
    for (int i = 0; i < 1000; ++i) {
      const double re = i / 1000.0;
      const double expect = mar_arq_dmt(re, L);
      EXPECT_NEAR(expect, ddf_mar_lower(re / L), kExact);
      const double cut = std::min(
          std::min(arq_mimo_dmt(3, 1, re, L), arq_mimo_dmt(2, 2, re, L)),
          std::min(arq_mimo_dmt(2, 1, re / 2, L), arq_mimo_dmt(1, 2, re / 2, L)));
      EXPECT_NEAR(expect, cut, kExact);
    }
  }
}

TEST(CvmaUpper, Values) {
  EXPECT_NEAR(cvma_upper(0.0, 2), 3.0, kExact);
  EXPECT_NEAR(cvma_upper(2.0 / 3.0, 1), 2.0, kExact);
  // min{3(1 - 1/4), 4 - 3/2} = min{2.25, 2.5}.
  EXPECT_NEAR(cvma_upper(1.0, 2), 2.25, kExact);
  EXPECT_THROW(cvma_upper(2.0, 2), std::domain_error);
}

TEST(CvmaUpper, MatchesCutSetMin) {
  // Valid wherever the 2x2 ARQ curve is on its first linear branch
  // (r_e <= L); that is all of [0,2) once L >= 2.
  for (int L = 1; L <= 4; ++L) {
    const double top = std::min(2.0, static_cast<double>(L));
    for (int i = 0; i * 0.001 < top; ++i) {
      const double re = i * 0.001;
      const double cut =
          std::min(arq_mimo_dmt(2, 2, re, L), arq_mimo_dmt(1, 3, re / 2, L));
      EXPECT_NEAR(cvma_upper(re, L), cut, kExact) << "re=" << re << " L=" << L;
    }
  }
}

TEST(CvmaLowerTwoRounds, Values) {
  EXPECT_NEAR(cvma_ddf_lower_two_rounds(1.0), 2.0, kExact);
  EXPECT_NEAR(cvma_ddf_lower_two_rounds(4.0 / 3.0), 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(cvma_ddf_lower_two_rounds(0.0), 3.0, kExact);
  EXPECT_NEAR(cvma_ddf_lower_two_rounds(1.9), 1.05, kExact);
  EXPECT_THROW(cvma_ddf_lower_two_rounds(2.0), std::domain_error);
  EXPECT_EQ(cvma_lower_two_rounds_curve().value_exact(Rat(4, 3)), Rat(4, 3));
}

// The two-round curve is the min of the inferior and superior/joint-inferior
// component exponents.
TEST(CvmaLowerTwoRounds, MatchesComponentMin) {
  auto composite = d_inferior_curve().min_with(d_superior_ji_curve());
  auto lower = cvma_lower_two_rounds_curve();
  for (int i = 0; i < 2000; ++i) {
    const double re = i / 1000.0;
    EXPECT_NEAR(lower.value(re), composite.value(re), kExact) << "re=" << re;
  }
}

// The full composite min over {2x2 at r1/2, s-ji, s-js} collapses to s-ji.
TEST(CvmaComposite, SuperiorPathCollapses) {
  for (int i = 0; i <= 2000; ++i) {
    const double r1 = i / 1000.0;
    const double d22 = mimo_dmt(2, 2, r1 / 2);
    const double dji = d_superior_jointinferior(r1);
    const double djs = d_superior_jointsuperior(r1);
    EXPECT_NEAR(std::min(std::min(d22, dji), djs), dji, kExact) << "r1=" << r1;
  }
}

TEST(CvmaLowerGeneral, ReducesToTwoRoundCurve) {
  EXPECT_NEAR(cvma_ddf_lower_general(1.0, 2), 2.0, kExact);
  EXPECT_NEAR(cvma_ddf_lower_general(1.0, 8), 2.75, kExact);
  EXPECT_THROW(cvma_ddf_lower_general(1.0, 3), std::domain_error);
  EXPECT_THROW(cvma_ddf_lower_general(2.0, 2), std::domain_error);
  for (int L : {2, 4, 8, 16}) {
    for (double re : {0.1, 0.9, 1.5, 1.9}) {
      EXPECT_NEAR(cvma_ddf_lower_general(re, L),
                  cvma_ddf_lower_two_rounds(2 * re / L), kExact);
    }
  }
}

TEST(CvmaLowerGeneral, ConvergesToFullDiversity) {
  for (double re : {0.5, 1.0, 1.9}) {
    double prev = cvma_ddf_lower_general(re, 2);
    for (int L = 4; L <= 256; L *= 2) {
      const double cur = cvma_ddf_lower_general(re, L);
      EXPECT_GE(cur, prev - kExact);
      prev = cur;
    }
    const int big = 2 * static_cast<int>(std::ceil(re * 1e6)) + 2;
    EXPECT_NEAR(cvma_ddf_lower_general(re, big), 3.0, 1e-6);
  }
}

TEST(Lambda, MarSourceOrders) {
  EXPECT_NEAR(lambda_type1(0.25, 0.4), 1.6, kExact);
  EXPECT_NEAR(lambda_type1(0.6, 0.4), 1.5, kExact);
  EXPECT_NEAR(lambda_type1(0.9, 0.4), 1.6 / 1.8, kExact);
  EXPECT_THROW(lambda_type1(1.1, 0.4), std::domain_error);

  EXPECT_NEAR(lambda_type12(0.9, 0.5), 2 * 0.5 / 0.9, kExact);
  EXPECT_NEAR(lambda_type12(0.5, 0.5), 1.5, kExact);
  EXPECT_NEAR(lambda_type12(0.7, 0.2), 3 - 0.2 / 0.3, kExact);
  EXPECT_NEAR(lambda_type12(0.85, 0.2), 2 * 0.8 / 0.85, kExact);

  EXPECT_NEAR(lambda_sources(1.0, 0.5), 0.75, kExact);
  EXPECT_NEAR(lambda_sources(0.6, 0.5), 2 * (1 - 0.5 / 0.6), kExact);
  EXPECT_THROW(lambda_sources(0.4, 0.5), std::domain_error);
}

TEST(Lambda, CvmaOrders) {
  EXPECT_NEAR(lambda_cvma_inferior(1.0, 1.0), 1.5, kExact);
  EXPECT_NEAR(lambda_cvma_inferior(0.2, 1.0), 4 - 1 / 0.8, kExact);
  EXPECT_NEAR(lambda_cvma_listen(0.75, 1.5), 0.0, kExact);
  EXPECT_NEAR(lambda_cvma_listen(1.0, 1.0), 0.5, kExact);
  EXPECT_THROW(lambda_cvma_listen(0.4, 1.0), std::domain_error);
}

TEST(ComponentCurves, PaperValues) {
  EXPECT_NEAR(d_type1(0.5), 1.5, kExact);
  EXPECT_NEAR(d_type1(1.0), 0.5, kExact);
  EXPECT_NEAR(d_type1(0.3), 1.7, kExact);
  EXPECT_NEAR(d_type1(0.6), 1.25, kExact);
  EXPECT_NEAR(d_type12(2.0 / 3.0), 1.0, 1e-9);
  EXPECT_NEAR(d_type12(0.4), 1.8, kExact);
  EXPECT_NEAR(d_type12(0.8), 0.5, kExact);
  EXPECT_NEAR(d_inferior(1.0), 2.0, kExact);
  EXPECT_NEAR(d_inferior(0.5), 2.5, kExact);
  EXPECT_NEAR(d_inferior(1.5), 10.0 / 7.0, kExact);
  EXPECT_NEAR(d_superior_jointinferior(4.0 / 3.0), 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(d_superior_jointinferior(0.5), 3.0, kExact);
  EXPECT_NEAR(d_superior_jointsuperior(0.5), 3.5, kExact);
}

// Every exported curve is continuous (guaranteed by construction) and
// non-increasing, with d >= 0, on a 1e-3 grid.
TEST(AllCurves, MonotoneNonnegative) {
  std::vector<PiecewiseCurve> curves;
  for (const auto& id : curve_ids()) curves.push_back(curve_by_id(id, 2));
  curves.push_back(curve_by_id("relay-arq", 4));
  curves.push_back(curve_by_id("cvma-upper", 3));
  curves.push_back(curve_by_id("ddf-cvma-lower", 6));
  for (const auto& c : curves) {
    EXPECT_TRUE(c.non_increasing());
    EXPECT_TRUE(c.nonnegative());
    double prev = c.value(c.r_min());
    const double step = 1e-3 * (c.r_max() - c.r_min());
    for (double r = c.r_min(); r < c.r_max(); r += step) {
      const double v = c.value(r);
      EXPECT_LE(v, prev + 1e-9);
      EXPECT_GE(v, -1e-12);
      prev = v;
    }
  }
}

TEST(Bounds, LowerNeverExceedsUpper) {
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    EXPECT_LE(ddf_mar_lower(r), mar_upper(r) + kExact);
  }
  for (int i = 0; i < 2000; ++i) {
    const double re = i / 1000.0;
    EXPECT_LE(cvma_ddf_lower_two_rounds(re), cvma_upper(re, 2) + kExact);
  }
}

// DDF is DMT-optimal in the MAR channel exactly on [0, 2/3].
TEST(Bounds, MarOptimalityWindow) {
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    const double gap = mar_upper(r) - ddf_mar_lower(r);
    if (r <= 2.0 / 3.0) {
      EXPECT_NEAR(gap, 0.0, kExact) << "r=" << r;
    } else if (r < 1.0) {
      EXPECT_GT(gap, 0.0) << "r=" << r;
    }
  }
  EXPECT_EQ(mar_upper_curve().value_exact(Rat(2, 3)),
            ddf_mar_lower_curve().value_exact(Rat(2, 3)));
}

TEST(Endpoints, FullDiversityAtZeroRate) {
  EXPECT_NEAR(mar_upper(0), 2.0, kExact);
  EXPECT_NEAR(ddf_mar_lower(0), 2.0, kExact);
  for (int L = 2; L <= 4; ++L) {
    EXPECT_NEAR(mar_arq_dmt(0, L), 2.0, kExact);
    EXPECT_NEAR(relay_arq_dmt(0, L), 2.0, kExact);
    EXPECT_NEAR(cvma_upper(0, L), 3.0, kExact);
  }
  EXPECT_NEAR(cvma_ddf_lower_two_rounds(0), 3.0, kExact);
  EXPECT_NEAR(cvma_ddf_lower_general(0, 8), 3.0, kExact);
}

TEST(CurveRegistry, KnownAndUnknownIds) {
  for (const auto& id : curve_ids()) EXPECT_NO_THROW(curve_by_id(id, 2));
  EXPECT_THROW(curve_by_id("no-such-curve", 2), std::invalid_argument);
  EXPECT_THROW(curve_by_id("cvma-upper", 1), std::domain_error);
}

}  // namespace
}  // namespace arqddf::dmt
