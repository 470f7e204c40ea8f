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

// The outage regions of the MAR and CVMA scenarios, as declarative
// constraint sets over channel exponential orders.
//
// MAR orders: v1, v2, vr (source/relay-to-destination links), u1, u2
// (source-to-relay links). CVMA orders: vss, vsi, vis, vii (source-antenna
// pairs, superior/inferior labeling), u (inter-user link).
//
// Every CVMA region also carries the superior-labeling ordering
// constraints: the (s,s) pair has the largest interference-adjusted gain,
// stated in exponential orders as
//   1 - vss - (1-vis)+  >=  each of the three other pairings.

#include <stdexcept>
#include <string>
#include <vector>

#include "arqddf/region.hpp"

namespace arqddf::outage {

namespace detail {

inline void check_rate(double r, double hi, const char* what) {
  if (r < 0 || r > hi) throw std::domain_error(std::string(what) + ": rate outside domain");
}

/// f * (1 - a)+ + (1-f) * (1 - b)+ - bound  <=  0
inline Constraint two_phase_constraint(ExprPtr a, ExprPtr b, double bound) {
  return Constraint{e_add({e_scale(FCoef{0.0, 1.0}, e_pos(e_one_minus(std::move(a)))),
                           e_scale(FCoef{1.0, -1.0}, e_pos(e_one_minus(std::move(b)))),
                           e_const(-bound)})};
}

inline std::vector<Constraint> cvma_ordering_constraints() {
  // lhs = 1 - vss - (1-vis)+ must dominate the three other pairings.
  auto lhs = [] {
    return e_add({e_const(1.0), e_scale(FCoef{-1.0, 0.0}, e_var("vss")),
                  e_scale(FCoef{-1.0, 0.0}, e_pos(e_one_minus(e_var("vis"))))});
  };
  auto rival = [](const char* direct, const char* cross) {
    return e_add({e_const(1.0), e_scale(FCoef{-1.0, 0.0}, e_var(direct)),
                  e_scale(FCoef{-1.0, 0.0}, e_pos(e_one_minus(e_var(cross))))});
  };
  std::vector<Constraint> cs;
  for (auto [direct, cross] :
       {std::pair{"vsi", "vii"}, std::pair{"vis", "vss"}, std::pair{"vii", "vsi"}}) {
    // rival - lhs <= 0
    cs.push_back(Constraint{
        e_add({rival(direct, cross), e_scale(FCoef{-1.0, 0.0}, lhs())})});
  }
  return cs;
}

}  // namespace detail

inline const std::vector<std::string>& mar_order_names() {
  static const std::vector<std::string> names{"v1", "v2", "vr", "u1", "u2"};
  return names;
}

inline const std::vector<std::string>& cvma_order_names() {
  static const std::vector<std::string> names{"vss", "vsi", "vis", "vii", "u"};
  return names;
}

/// Single-user (type-{1}) MAR outage at total multiplexing gain r:
/// f(1-v1)+ + (1-f)(1-min{v1,vr})+ <= r/2, f coupled to (u1,u2).
inline OutageRegionSpec region_mar_type1(double r) {
  detail::check_rate(r, 1.0, "region_mar_type1");
  OutageRegionSpec spec;
  spec.name = "mar-type1";
  spec.vars = mar_order_names();
  spec.constraints.push_back(detail::two_phase_constraint(
      e_var("v1"), e_min({e_var("v1"), e_var("vr")}), r / 2.0));
  spec.f_rule = FRule{FRule::Kind::MarListen, 0.0, r, {"u1", "u2"}};
  return spec;
}

/// Joint (type-{1,2}) MAR outage:
/// f(1-min{v1,v2})+ + (1-f)(1-min{v1,v2,vr})+ <= r, same f coupling.
inline OutageRegionSpec region_mar_type12(double r) {
  detail::check_rate(r, 1.0, "region_mar_type12");
  OutageRegionSpec spec;
  spec.name = "mar-type12";
  spec.vars = mar_order_names();
  spec.constraints.push_back(detail::two_phase_constraint(
      e_min({e_var("v1"), e_var("v2")}),
      e_min({e_var("v1"), e_var("v2"), e_var("vr")}), r));
  spec.f_rule = FRule{FRule::Kind::MarListen, 0.0, r, {"u1", "u2"}};
  return spec;
}

/// CVMA inferior-message outage after one helped round:
/// (1+f)(1-min{vis,vii})+ + (1-f)(1-min{vss,vsi,vis,vii})+ <= r1/2,
/// f coupled to u.
inline OutageRegionSpec region_cvma_inferior(double r1) {
  detail::check_rate(r1, 2.0, "region_cvma_inferior");
  OutageRegionSpec spec;
  spec.name = "cvma-inferior";
  spec.vars = cvma_order_names();
  spec.constraints.push_back(Constraint{e_add(
      {e_scale(FCoef{1.0, 1.0}, e_pos(e_one_minus(e_min({e_var("vis"), e_var("vii")})))),
       e_scale(FCoef{1.0, -1.0},
               e_pos(e_one_minus(
                   e_min({e_var("vss"), e_var("vsi"), e_var("vis"), e_var("vii")})))),
       e_const(-r1 / 2.0)})});
  for (auto& c : detail::cvma_ordering_constraints()) spec.constraints.push_back(c);
  spec.f_rule = FRule{FRule::Kind::CvmaListen, 0.0, r1, {"u"}};
  return spec;
}

/// CVMA joint-decoder inferior-only error region: (1-min{vis,vii})+ <= r1/4.
inline OutageRegionSpec region_cvma_ji(double r1) {
  detail::check_rate(r1, 2.0, "region_cvma_ji");
  OutageRegionSpec spec;
  spec.name = "cvma-ji";
  spec.vars = cvma_order_names();
  spec.constraints.push_back(Constraint{
      e_add({e_pos(e_one_minus(e_min({e_var("vis"), e_var("vii")}))), e_const(-r1 / 4.0)})});
  for (auto& c : detail::cvma_ordering_constraints()) spec.constraints.push_back(c);
  return spec;
}

/// CVMA superior single-user decode failure region:
/// (1 - vss - (1-vis)+)+ <= r1/2.
inline OutageRegionSpec region_cvma_s1(double r1) {
  detail::check_rate(r1, 2.0, "region_cvma_s1");
  OutageRegionSpec spec;
  spec.name = "cvma-s1";
  spec.vars = cvma_order_names();
  spec.constraints.push_back(Constraint{e_add(
      {e_pos(e_add({e_const(1.0), e_scale(FCoef{-1.0, 0.0}, e_var("vss")),
                    e_scale(FCoef{-1.0, 0.0}, e_pos(e_one_minus(e_var("vis"))))})),
       e_const(-r1 / 2.0)})});
  for (auto& c : detail::cvma_ordering_constraints()) spec.constraints.push_back(c);
  return spec;
}

/// Intersection region behind the superior-ack/joint-inferior exponent:
/// both the cvma_ji and cvma_s1 constraints.
inline OutageRegionSpec region_cvma_sji(double r1) {
  detail::check_rate(r1, 2.0, "region_cvma_sji");
  OutageRegionSpec spec = region_cvma_ji(r1);
  spec.name = "cvma-sji";
  OutageRegionSpec s1 = region_cvma_s1(r1);
  spec.constraints.insert(spec.constraints.begin() + 1, s1.constraints.front());
  return spec;
}

/// Simplified region behind the superior-ack/joint-superior exponent:
/// (1-min{vss,vsi})+ <= r1/4 (the single-user constraint is implied).
inline OutageRegionSpec region_cvma_sjs(double r1) {
  detail::check_rate(r1, 2.0, "region_cvma_sjs");
  OutageRegionSpec spec;
  spec.name = "cvma-sjs";
  spec.vars = cvma_order_names();
  spec.constraints.push_back(Constraint{
      e_add({e_pos(e_one_minus(e_min({e_var("vss"), e_var("vsi")}))), e_const(-r1 / 4.0)})});
  for (auto& c : detail::cvma_ordering_constraints()) spec.constraints.push_back(c);
  return spec;
}

/// region_cvma_sjs with the (redundant) superior single-user constraint
/// kept, for checking that dropping it does not change the infimum.
inline OutageRegionSpec region_cvma_sjs_unsimplified(double r1) {
  OutageRegionSpec spec = region_cvma_sjs(r1);
  spec.name = "cvma-sjs-full";
  OutageRegionSpec s1 = region_cvma_s1(r1);
  spec.constraints.insert(spec.constraints.begin() + 1, s1.constraints.front());
  return spec;
}

}  // namespace arqddf::outage
