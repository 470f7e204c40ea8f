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

// Declarative outage regions over channel exponential orders. A region is a
// conjunction of constraints `expr <= 0` where expr is built from affine
// terms, positive parts (.)+ and min{...}, with coefficients that may be
// affine in the relay listening fraction f. The listening fraction itself is
// either absent, fixed, or coupled to the u-orders by a scenario rule.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace arqddf::outage {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Coefficient affine in the listening fraction: k + kf * f.
struct FCoef {
  double k = 1.0;
  double kf = 0.0;
  double at(double f) const { return k + kf * f; }
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind { Const, Var, Add, Scale, Pos, Min };

  Kind kind = Kind::Const;
  double cval = 0.0;          // Const
  std::string var;            // Var
  FCoef coef;                 // Scale
  std::vector<ExprPtr> kids;  // Add, Min: >=1; Scale, Pos: exactly 1

  double eval(const std::vector<std::string>& names, const double* x, double f) const {
    switch (kind) {
      case Kind::Const:
        return cval;
      case Kind::Var:
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i] == var) return x[i];
        throw std::invalid_argument("Expr: unknown variable " + var);
      case Kind::Add: {
        double s = 0;
        for (const auto& k : kids) s += k->eval(names, x, f);
        return s;
      }
      case Kind::Scale:
        return coef.at(f) * kids[0]->eval(names, x, f);
      case Kind::Pos:
        return std::max(0.0, kids[0]->eval(names, x, f));
      case Kind::Min: {
        double m = kInf;
        for (const auto& k : kids) m = std::min(m, k->eval(names, x, f));
        return m;
      }
    }
    return 0.0;
  }

  /// Structural key used to identify shared atoms during branch compilation.
  std::string key() const {
    switch (kind) {
      case Kind::Const:
        return "c" + std::to_string(cval);
      case Kind::Var:
        return "$" + var;
      case Kind::Add: {
        std::string s = "(+";
        for (const auto& k : kids) s += " " + k->key();
        return s + ")";
      }
      case Kind::Scale:
        return "(* " + std::to_string(coef.k) + "+" + std::to_string(coef.kf) + "f " +
               kids[0]->key() + ")";
      case Kind::Pos:
        return "(pos " + kids[0]->key() + ")";
      case Kind::Min: {
        std::string s = "(min";
        for (const auto& k : kids) s += " " + k->key();
        return s + ")";
      }
    }
    return "";
  }

  void collect_vars(std::vector<std::string>& out) const {
    if (kind == Kind::Var) {
      for (const auto& v : out)
        if (v == var) return;
      out.push_back(var);
    }
    for (const auto& k : kids) k->collect_vars(out);
  }
};

inline ExprPtr e_const(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Const;
  e->cval = v;
  return e;
}
inline ExprPtr e_var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->var = std::move(name);
  return e;
}
inline ExprPtr e_add(std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Add;
  e->kids = std::move(kids);
  return e;
}
inline ExprPtr e_scale(FCoef c, ExprPtr kid) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Scale;
  e->coef = c;
  e->kids = {std::move(kid)};
  return e;
}
inline ExprPtr e_pos(ExprPtr kid) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Pos;
  e->kids = {std::move(kid)};
  return e;
}
inline ExprPtr e_min(std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Min;
  e->kids = std::move(kids);
  return e;
}
/// 1 - x as an expression; the ubiquitous building block.
inline ExprPtr e_one_minus(ExprPtr kid) {
  return e_add({e_const(1.0), e_scale(FCoef{-1.0, 0.0}, std::move(kid))});
}

/// Rule coupling the listening fraction f to the u-orders. The quotient
/// convention: a positive-part denominator that is <= 0 makes the quotient
/// +inf, which the min{1, .} caps to f = 1.
struct FRule {
  enum class Kind { None, Fixed, MarListen, CvmaListen };
  Kind kind = Kind::None;
  double fixed = 0.0;
  double rate = 0.0;               // the r (MAR, total rate) or r1 (CVMA)
  std::vector<std::string> uvars;  // {u1, u2} for MAR, {u} for CVMA

  static double quotient(double num, double den) { return den > 0 ? num / den : kInf; }

  double eval(const std::vector<std::string>& names, const double* x) const {
    auto lookup = [&](const std::string& v) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == v) return x[i];
      throw std::invalid_argument("FRule: unknown variable " + v);
    };
    switch (kind) {
      case Kind::None:
        return 0.0;
      case Kind::Fixed:
        return fixed;
      case Kind::MarListen: {
        const double u1 = lookup(uvars.at(0)), u2 = lookup(uvars.at(1));
        const double umax = std::max(u1, u2), umin = std::min(u1, u2);
        const double qa = quotient(rate, 2.0 * std::max(0.0, 1.0 - umax));
        const double qb = quotient(rate, std::max(0.0, 1.0 - umin));
        return std::min(1.0, std::max(qa, qb));
      }
      case Kind::CvmaListen: {
        const double u = lookup(uvars.at(0));
        return std::min(1.0, quotient(rate, 2.0 * std::max(0.0, 1.0 - u)));
      }
    }
    return 0.0;
  }
};

struct Constraint {
  ExprPtr expr;  // region membership requires expr <= 0
};

struct OutageRegionSpec {
  std::string name;
  std::vector<std::string> vars;  // exponential-order names, LP ordering
  std::vector<Constraint> constraints;
  FRule f_rule;

  /// Largest constraint value at x (f computed from the rule unless given).
  double residual(const double* x, double f = std::numeric_limits<double>::quiet_NaN()) const {
    if (std::isnan(f)) f = f_rule.eval(vars, x);
    double worst = -kInf;
    for (const auto& c : constraints)
      worst = std::max(worst, c.expr->eval(vars, x, f));
    return worst;
  }

  bool is_member(const double* x, double tol = 1e-9,
                 double f = std::numeric_limits<double>::quiet_NaN()) const {
    return residual(x, f) <= tol;
  }

  bool uses_f() const;
};

// --- JSON serialization of the constraint AST -----------------------------

inline nlohmann::json expr_to_json(const ExprPtr& e) {
  using nlohmann::json;
  switch (e->kind) {
    case Expr::Kind::Const:
      return json{{"const", e->cval}};
    case Expr::Kind::Var:
      return json{{"var", e->var}};
    case Expr::Kind::Add: {
      json kids = json::array();
      for (const auto& k : e->kids) kids.push_back(expr_to_json(k));
      return json{{"add", kids}};
    }
    case Expr::Kind::Scale:
      return json{{"scale", json{{"k", e->coef.k}, {"kf", e->coef.kf},
                                 {"of", expr_to_json(e->kids[0])}}}};
    case Expr::Kind::Pos:
      return json{{"pos", expr_to_json(e->kids[0])}};
    case Expr::Kind::Min: {
      json kids = json::array();
      for (const auto& k : e->kids) kids.push_back(expr_to_json(k));
      return json{{"min", kids}};
    }
  }
  return {};
}

inline ExprPtr expr_from_json(const nlohmann::json& j) {
  if (j.contains("const")) return e_const(j.at("const").get<double>());
  if (j.contains("var")) return e_var(j.at("var").get<std::string>());
  if (j.contains("add")) {
    std::vector<ExprPtr> kids;
    for (const auto& k : j.at("add")) kids.push_back(expr_from_json(k));
    return e_add(std::move(kids));
  }
  if (j.contains("scale")) {
    const auto& s = j.at("scale");
    return e_scale(FCoef{s.at("k").get<double>(), s.at("kf").get<double>()},
                   expr_from_json(s.at("of")));
  }
  if (j.contains("pos")) return e_pos(expr_from_json(j.at("pos")));
  if (j.contains("min")) {
    std::vector<ExprPtr> kids;
    for (const auto& k : j.at("min")) kids.push_back(expr_from_json(k));
    return e_min(std::move(kids));
  }
  throw std::invalid_argument("expr_from_json: unknown node");
}

inline nlohmann::json region_to_json(const OutageRegionSpec& spec) {
  using nlohmann::json;
  json constraints = json::array();
  for (const auto& c : spec.constraints) constraints.push_back(expr_to_json(c.expr));
  json rule;
  switch (spec.f_rule.kind) {
    case FRule::Kind::None:
      rule = json{{"kind", "none"}};
      break;
    case FRule::Kind::Fixed:
      rule = json{{"kind", "fixed"}, {"f", spec.f_rule.fixed}};
      break;
    case FRule::Kind::MarListen:
      rule = json{{"kind", "mar-listen"}, {"rate", spec.f_rule.rate},
                  {"uvars", spec.f_rule.uvars}};
      break;
    case FRule::Kind::CvmaListen:
      rule = json{{"kind", "cvma-listen"}, {"rate", spec.f_rule.rate},
                  {"uvars", spec.f_rule.uvars}};
      break;
  }
  return json{{"name", spec.name},
              {"vars", spec.vars},
              {"constraints", constraints},
              {"f_rule", rule}};
}

inline OutageRegionSpec region_from_json(const nlohmann::json& j) {
  OutageRegionSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.vars = j.at("vars").get<std::vector<std::string>>();
  for (const auto& c : j.at("constraints")) spec.constraints.push_back({expr_from_json(c)});
  const auto& rule = j.at("f_rule");
  const std::string kind = rule.at("kind").get<std::string>();
  if (kind == "none") {
    spec.f_rule.kind = FRule::Kind::None;
  } else if (kind == "fixed") {
    spec.f_rule.kind = FRule::Kind::Fixed;
    spec.f_rule.fixed = rule.at("f").get<double>();
  } else if (kind == "mar-listen" || kind == "cvma-listen") {
    spec.f_rule.kind =
        kind == "mar-listen" ? FRule::Kind::MarListen : FRule::Kind::CvmaListen;
    spec.f_rule.rate = rule.at("rate").get<double>();
    spec.f_rule.uvars = rule.at("uvars").get<std::vector<std::string>>();
  } else {
    throw std::invalid_argument("region_from_json: unknown f_rule kind " + kind);
  }
  return spec;
}

namespace detail {
inline bool expr_uses_f(const Expr& e) {
  if (e.kind == Expr::Kind::Scale && e.coef.kf != 0.0) return true;
  for (const auto& k : e.kids)
    if (expr_uses_f(*k)) return true;
  return false;
}
}  // namespace detail

inline bool OutageRegionSpec::uses_f() const {
  if (f_rule.kind == FRule::Kind::MarListen || f_rule.kind == FRule::Kind::CvmaListen)
    return true;
  for (const auto& c : constraints)
    if (detail::expr_uses_f(*c.expr)) return true;
  return false;
}

}  // namespace arqddf::outage
