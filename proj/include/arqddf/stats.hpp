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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace arqddf::mc {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson 95% score interval for a binomial proportion.
inline Interval wilson95(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double z2n = z * z / static_cast<double>(n);
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / static_cast<double>(n) + z2n / (4.0 * n)) /
      (1.0 + z2n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct SlopePoint {
  double rho = 0.0;            // linear SNR
  double pe = 0.0;             // estimated error probability
  std::uint64_t n_trials = 0;
  std::uint64_t events = 0;    // error events behind pe
};

struct SlopeEstimate {
  double slope = 0.0;  // d log10 Pe / d log10 rho (negative for decaying Pe)
  double ci95 = 0.0;
  std::vector<std::pair<double, double>> points;  // (log10 rho, log10 pe)
};

struct InsufficientEventsError : std::runtime_error {
  InsufficientEventsError()
      : std::runtime_error("slope fit needs >= 3 SNR points with >= 50 error events each") {}
};

/// Ordinary least squares of log10 pe against log10 rho. Points with fewer
/// than 50 error events are excluded; at least three must remain. The

/// confidence interval propagates each point's binomial uncertainty.
inline SlopeEstimate estimate_slope(const std::vector<SlopePoint>& raw) {
  std::vector<SlopePoint> pts;
  for (const auto& p : raw)
    if (p.events >= 50 && p.pe > 0.0) pts.push_back(p);
  if (pts.size() < 3) throw InsufficientEventsError();

  SlopeEstimate est;
  double sx = 0, sy = 0;
  std::vector<double> xs, ys, sig;
  for (const auto& p : pts) {
    const double x = std::log10(p.rho);
    const double y = std::log10(p.pe);
    xs.push_back(x);
    ys.push_back(y);
    // sd of log10(p_hat) from the binomial: sqrt((1-p)/(n p)) / ln 10.
    sig.push_back(std::sqrt((1.0 - p.pe) / (static_cast<double>(p.n_trials) * p.pe)) /
                  2.302585092994046);
    est.points.emplace_back(x, y);
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(xs.size());
  const double xbar = sx / n, ybar = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx <= 0) throw std::invalid_argument("estimate_slope: degenerate SNR grid");
  est.slope = sxy / sxx;
  double var = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = (xs[i] - xbar) / sxx;
    var += a * a * sig[i] * sig[i];
  }
  est.ci95 = 1.959963984540054 * std::sqrt(var);
  return est;
}

/// True when p2 (k2/n2) is significantly larger than p1 (k1/n1) at z sigma.
inline bool significant_increase(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2,
                                 std::uint64_t n2, double z = 3.0) {
  const double p1 = n1 ? static_cast<double>(k1) / n1 : 0.0;
  const double p2 = n2 ? static_cast<double>(k2) / n2 : 0.0;
  const double var =
      p1 * (1 - p1) / std::max<std::uint64_t>(n1, 1) + p2 * (1 - p2) / std::max<std::uint64_t>(n2, 1);
  return p2 - p1 > z * std::sqrt(var);
}

}  // namespace arqddf::mc
