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

// Equivalence harness: re-derives every closed-form component curve from its
// outage-region definition via the branch-LP infimum and reports the
// pointwise disagreement.

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arqddf/dmt.hpp"
#include "arqddf/infimum.hpp"
#include "arqddf/regions.hpp"

namespace arqddf::outage {

struct CurveCheck {
  std::string curve_id;
  std::function<double(double)> closed_form;
  std::function<OutageRegionSpec(double)> region;
  double r_lo = 0.0;
  double r_hi = 1.0;
  std::vector<double> breakpoints;  // excluded (with a margin) from grids
};

struct VerifyRow {
  std::string curve_id;
  double r = 0.0;
  double closed = 0.0;
  double numeric = 0.0;
  double abs_err = 0.0;
};

struct VerifyReport {
  double tolerance = 1e-4;
  bool pass = false;
  std::vector<VerifyRow> rows;
  std::vector<std::string> failed_curves;
  std::vector<std::string> warnings;

  std::string summary() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " (" << rows.size() << " points, tol " << tolerance
       << ")";
    if (!failed_curves.empty()) {
      os << "; failing:";
      for (const auto& c : failed_curves) os << " " << c;
    }
    return os.str();
  }
};

/// The five closed-form/region pairs this artifact must reconcile.
inline std::vector<CurveCheck> default_curve_checks() {
  using arqddf::dmt::d_inferior;
  using arqddf::dmt::d_superior_jointinferior;
  using arqddf::dmt::d_superior_jointsuperior;
  using arqddf::dmt::d_type1;
  using arqddf::dmt::d_type12;
  return {
      {"d-type1", [](double r) { return d_type1(r); },
       [](double r) { return region_mar_type1(r); }, 0.0, 1.0, {0.5, 2.0 / 3.0}},
      {"d-type12", [](double r) { return d_type12(r); },
       [](double r) { return region_mar_type12(r); }, 0.0, 1.0, {2.0 / 3.0}},
      {"d-inferior", [](double r) { return d_inferior(r); },
       [](double r) { return region_cvma_inferior(r); }, 0.0, 2.0, {1.0}},
      {"d-superior-ji", [](double r) { return d_superior_jointinferior(r); },
       [](double r) { return region_cvma_sji(r); }, 0.0, 2.0, {4.0 / 3.0}},
      {"d-superior-js", [](double r) { return d_superior_jointsuperior(r); },
       [](double r) { return region_cvma_sjs(r); }, 0.0, 2.0, {}},
  };
}

/// Evenly spaced interior grid over [lo, hi] avoiding breakpoints by
/// +-margin. Grid points falling inside the margin are nudged; if that
/// fails they are dropped with a warning.
inline std::vector<double> interior_grid(double lo, double hi, int n,
                                         const std::vector<double>& breakpoints,
                                         double margin, std::vector<std::string>* warnings,
                                         const std::string& curve_id) {
  std::vector<double> grid;
  int produced = 0;
  for (int i = 0; i < n; ++i) {
    double r = lo + (hi - lo) * (i + 0.5) / n;
    bool near = false;
    for (double b : breakpoints)
      if (std::fabs(r - b) < margin) near = true;
    if (near) {
      const double nudged = r + 2 * margin;
      bool still = false;
      for (double b : breakpoints)
        if (std::fabs(nudged - b) < margin) still = true;
      if (!still && nudged < hi) {
        if (warnings)
          warnings->push_back(curve_id + ": grid point " + std::to_string(r) +
                              " near a breakpoint; nudged");
        r = nudged;
      } else {
        if (warnings)
          warnings->push_back(curve_id + ": grid point " + std::to_string(r) +
                              " near a breakpoint; dropped");
        continue;
      }
    }
    grid.push_back(r);
    ++produced;
  }
  (void)produced;
  return grid;
}

inline VerifyReport verify_closed_forms(const std::vector<CurveCheck>& checks,
                                        int grid_points = 50, double tolerance = 1e-4) {
  VerifyReport report;
  report.tolerance = tolerance;
  report.pass = true;
  for (const auto& chk : checks) {
    bool curve_ok = true;
    const auto grid = interior_grid(chk.r_lo, chk.r_hi, grid_points, chk.breakpoints,
                                    1e-3, &report.warnings, chk.curve_id);
    for (double r : grid) {
      const OutageRegionSpec region = chk.region(r);
      const InfimumResult inf = infimum_branch_lp(region, unit_weights(region));
      VerifyRow row;
      row.curve_id = chk.curve_id;
      row.r = r;
      row.closed = chk.closed_form(r);
      row.numeric = inf.feasible ? inf.value : kInf;
      row.abs_err = std::fabs(row.closed - row.numeric);
      if (!(row.abs_err <= tolerance)) curve_ok = false;
      report.rows.push_back(row);
    }
    if (!curve_ok) {
      report.pass = false;
      report.failed_curves.push_back(chk.curve_id);
    }
  }
  return report;
}

}  // namespace arqddf::outage
