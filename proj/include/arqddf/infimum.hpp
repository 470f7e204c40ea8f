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

// Numerical infimum of a weighted order sum over an outage region, by two
// independent routes:
//
//  (a) branch enumeration: every min{} / (.)+ atom choice turns the region
//      into a small linear program for a fixed listening fraction f; the
//      infimum over f of the branch-LP minimum is taken by a scan plus
//      golden-section refinement. Exact at piecewise-linear problems.
//  (b) a dense grid oracle with local refinement and a coordinate-descent
//      polish, evaluating the raw constraint expressions only. Used to
//      cross-check (a).

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arqddf/region.hpp"
#include "arqddf/simplex.hpp"

namespace arqddf::outage {

enum class Method { BranchLp, Grid };

struct InfimumResult {
  bool feasible = false;
  double value = kInf;
  std::vector<double> argmin;  // aligned with the region's vars
  double f = 0.0;
  Method method = Method::BranchLp;
};

struct BranchExplosionError : std::runtime_error {
  explicit BranchExplosionError(std::size_t n)
      : std::runtime_error("branch enumeration would produce " + std::to_string(n) +
                           " linear programs") {}
};

namespace detail {

constexpr double kFeasEps = 1e-9;

/// Linear form with f-affine coefficients: sum coef[i]*x[i] + cst <= 0.
struct LinF {
  std::vector<FCoef> coef;
  FCoef cst{0.0, 0.0};

  explicit LinF(std::size_t n) : coef(n, FCoef{0.0, 0.0}) {}
  LinF& operator+=(const LinF& o) {
    for (std::size_t i = 0; i < coef.size(); ++i) {
      coef[i].k += o.coef[i].k;
      coef[i].kf += o.coef[i].kf;
    }
    cst.k += o.cst.k;
    cst.kf += o.cst.kf;
    return *this;
  }
  LinF& negate() {
    for (auto& c : coef) {
      c.k = -c.k;
      c.kf = -c.kf;
    }
    cst.k = -cst.k;
    cst.kf = -cst.kf;
    return *this;
  }
  void scale(const FCoef& s) {
    auto mul = [&](FCoef& c) {
      if (c.kf != 0.0 && s.kf != 0.0)
        throw std::invalid_argument("region constraint is quadratic in f");
      c = FCoef{c.k * s.k, c.k * s.kf + c.kf * s.k};
    };
    for (auto& c : coef) mul(c);
    mul(cst);
  }
};

struct Atom {
  const Expr* node = nullptr;
  int nbranches = 0;  // Pos: 2, Min: #kids
};

struct CompiledComponent {
  std::vector<int> vars;               // region var indices in this component
  std::vector<std::vector<LinF>> branches;
};

/// Compiles a region into var-disjoint components of branch LPs. The rule's
/// u-variables must not appear in the constraints (true for every region in
/// this library); their LPs are generated per-f by rule_branches below.
class CompiledRegion {
 public:
  explicit CompiledRegion(const OutageRegionSpec& region, std::size_t max_branches = 100000)
      : region_(&region), nvars_(region.vars.size()) {
    for (std::size_t i = 0; i < nvars_; ++i) var_id_[region.vars[i]] = static_cast<int>(i);
    for (const auto& u : region.f_rule.uvars) {
      if (var_id_.find(u) == var_id_.end())
        throw std::invalid_argument("rule variable not declared: " + u);
      rule_vars_.push_back(var_id_[u]);
    }

    // Atom discovery with structural sharing.
    std::vector<std::vector<int>> constraint_vars;
    for (const auto& c : region.constraints) {
      collect_atoms(c.expr.get());
      std::vector<std::string> names;
      c.expr->collect_vars(names);
      std::vector<int> ids;
      for (const auto& n : names) ids.push_back(lookup(n));
      constraint_vars.push_back(std::move(ids));
    }
    for (const auto& u : region.f_rule.uvars) {
      for (const auto& cv : constraint_vars)
        for (int id : cv)
          if (id == var_id_[u])
            throw std::invalid_argument("rule variable also appears in constraints: " + u);
    }

    // Union-find components over shared variables.
    parent_.resize(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) parent_[i] = static_cast<int>(i);
    auto unite_all = [&](const std::vector<int>& ids) {
      for (std::size_t i = 1; i < ids.size(); ++i) unite(ids[0], ids[i]);
    };
    for (const auto& cv : constraint_vars) unite_all(cv);
    for (const auto& [key, idx] : atom_index_) {
      (void)key;
      std::vector<std::string> names;
      atoms_[idx].node->collect_vars(names);
      std::vector<int> ids;
      for (const auto& n : names) ids.push_back(lookup(n));
      if (ids.empty()) throw std::invalid_argument("constant atom not supported");
      unite_all(ids);
      atom_component_root_.push_back(0);  // filled below
    }

    // Group atoms and constraints by component root.
    std::map<int, std::vector<int>> comp_atoms, comp_constraints, comp_vars;
    for (std::size_t i = 0; i < nvars_; ++i) comp_vars[find(static_cast<int>(i))].push_back(i);
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      std::vector<std::string> names;
      atoms_[a].node->collect_vars(names);
      comp_atoms[find(lookup(names[0]))].push_back(static_cast<int>(a));
    }
    for (std::size_t c = 0; c < region.constraints.size(); ++c) {
      if (constraint_vars[c].empty())
        throw std::invalid_argument("constant constraint not supported");
      comp_constraints[find(constraint_vars[c][0])].push_back(static_cast<int>(c));
    }

    // Branch-count guard across all components.
    std::size_t total = 1;
    for (const auto& [root, atom_ids] : comp_atoms) {
      (void)root;
      std::size_t n = 1;
      for (int a : atom_ids) n *= static_cast<std::size_t>(atoms_[a].nbranches);
      if (n > max_branches || total > max_branches / std::max<std::size_t>(n, 1))
        throw BranchExplosionError(n * total);
      total *= n;
    }

    // Enumerate branches per component that has constraints.
    for (const auto& [root, cons] : comp_constraints) {
      CompiledComponent comp;
      comp.vars = comp_vars[root];
      const std::vector<int>& atom_ids =
          comp_atoms.count(root) ? comp_atoms[root] : std::vector<int>{};
      std::vector<int> choice(atom_ids.size(), 0);
      while (true) {
        // Record the current assignment for linearize().
        current_choice_.clear();
        for (std::size_t i = 0; i < atom_ids.size(); ++i)
          current_choice_[atoms_[atom_ids[i]].node] = choice[i];
        std::vector<LinF> rows;
        for (std::size_t i = 0; i < atom_ids.size(); ++i)
          emit_validity(atoms_[atom_ids[i]], choice[i], rows);
        for (int ci : cons) rows.push_back(linearize(region.constraints[ci].expr.get()));
        comp.branches.push_back(std::move(rows));
        // Next mixed-radix assignment.
        std::size_t pos = 0;
        for (; pos < choice.size(); ++pos) {
          if (++choice[pos] < atoms_[atom_ids[pos]].nbranches) break;
          choice[pos] = 0;
        }
        if (pos == choice.size()) break;
        if (atom_ids.empty()) break;
      }
      components_.push_back(std::move(comp));
    }
  }

  const std::vector<CompiledComponent>& components() const { return components_; }
  const std::vector<int>& rule_vars() const { return rule_vars_; }
  std::size_t nvars() const { return nvars_; }
  const OutageRegionSpec& region() const { return *region_; }

 private:
  int lookup(const std::string& name) const {
    auto it = var_id_.find(name);
    if (it == var_id_.end()) throw std::invalid_argument("undeclared variable: " + name);
    return it->second;
  }

  int find(int a) { return parent_[a] == a ? a : parent_[a] = find(parent_[a]); }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

  void collect_atoms(const Expr* e) {
    if (e->kind == Expr::Kind::Pos || e->kind == Expr::Kind::Min) {
      const std::string key = e->key();
      if (atom_index_.find(key) == atom_index_.end()) {
        atom_index_[key] = static_cast<int>(atoms_.size());
        atoms_.push_back(Atom{e, e->kind == Expr::Kind::Pos
                                     ? 2
                                     : static_cast<int>(e->kids.size())});
      }
    }
    for (const auto& k : e->kids) collect_atoms(k.get());
  }

  int chosen_branch(const Expr* e) const {
    // Atoms are shared by structural key; resolve through the key index so
    // that equal subtrees in different constraints use one choice.
    auto it = current_choice_.find(e);
    if (it != current_choice_.end()) return it->second;
    const auto idx = atom_index_.find(e->key());
    if (idx == atom_index_.end()) throw std::logic_error("atom not collected");
    return current_choice_.at(atoms_[idx->second].node);
  }

  LinF linearize(const Expr* e) const {
    LinF out(nvars_);
    switch (e->kind) {
      case Expr::Kind::Const:
        out.cst.k = e->cval;
        return out;
      case Expr::Kind::Var:
        out.coef[lookup(e->var)].k = 1.0;
        return out;
      case Expr::Kind::Add:
        for (const auto& k : e->kids) out += linearize(k.get());
        return out;
      case Expr::Kind::Scale:
        out = linearize(e->kids[0].get());
        out.scale(e->coef);
        return out;
      case Expr::Kind::Pos:
        if (chosen_branch(e) == 0) return out;  // clipped to zero
        return linearize(e->kids[0].get());
      case Expr::Kind::Min:
        return linearize(e->kids[chosen_branch(e)].get());
    }
    return out;
  }

  void emit_validity(const Atom& atom, int branch, std::vector<LinF>& rows) const {
    const Expr* e = atom.node;
    if (e->kind == Expr::Kind::Pos) {
      LinF child = linearize(e->kids[0].get());
      if (branch == 0) {
        rows.push_back(child);  // child <= 0
      } else {
        rows.push_back(child.negate());  // child >= 0
      }
    } else {  // Min: chosen kid must be the smallest
      LinF chosen = linearize(e->kids[branch].get());
      for (std::size_t k = 0; k < e->kids.size(); ++k) {
        if (static_cast<int>(k) == branch) continue;
        LinF other = linearize(e->kids[k].get());
        LinF row = chosen;
        row += other.negate();
        rows.push_back(row);  // chosen - other <= 0
      }
    }
  }

  const OutageRegionSpec* region_;
  std::size_t nvars_;
  std::map<std::string, int> var_id_;
  std::map<std::string, int> atom_index_;
  std::vector<Atom> atoms_;
  std::vector<int> atom_component_root_;
  std::vector<int> parent_;
  std::vector<int> rule_vars_;
  std::vector<CompiledComponent> components_;
  mutable std::map<const Expr*, int> current_choice_;
};

struct RuleRow {
  std::vector<double> a;  // over the rule's u-variables (local order)
  lp::Relation rel;
  double b;
};

/// Branch row-sets over the rule's u-variables for a fixed f. An empty
/// return means the rule admits no u at this f; a set containing one empty
/// row-list means "any u".
inline std::vector<std::vector<RuleRow>> rule_branches(const FRule& rule, double f) {
  std::vector<std::vector<RuleRow>> out;
  const double r = rule.rate;
  auto row1 = [](double c0, lp::Relation rel, double b) {
    return RuleRow{{c0}, rel, b};
  };
  switch (rule.kind) {
    case FRule::Kind::None:
    case FRule::Kind::Fixed:
      out.push_back({});
      return out;
    case FRule::Kind::CvmaListen: {
      if (f >= 1.0) {
        out.push_back({row1(1.0, lp::Relation::GreaterEq, r > 0 ? 1.0 - r / 2.0 : 1.0)});
      } else if (f <= 0.0) {
        if (r == 0.0) out.push_back({});
      } else if (r > 0.0) {
        out.push_back({row1(1.0, lp::Relation::Equal, 1.0 - r / (2.0 * f))});
      }
      return out;
    }
    case FRule::Kind::MarListen: {
      auto two = [](double a1, double a2, lp::Relation rel, double b) {
        return RuleRow{{a1, a2}, rel, b};
      };
      const RuleRow ord12 = two(1.0, -1.0, lp::Relation::GreaterEq, 0.0);  // u1 >= u2
      const RuleRow ord21 = two(-1.0, 1.0, lp::Relation::GreaterEq, 0.0);  // u2 >= u1
      if (f >= 1.0) {
        const double ta = r > 0 ? 1.0 - r / 2.0 : 1.0;
        const double tb = r > 0 ? 1.0 - r : 1.0;
        out.push_back({ord12, two(1, 0, lp::Relation::GreaterEq, ta)});
        out.push_back({ord21, two(0, 1, lp::Relation::GreaterEq, ta)});
        out.push_back({ord21, two(1, 0, lp::Relation::GreaterEq, tb)});  // u1 = min
        out.push_back({ord12, two(0, 1, lp::Relation::GreaterEq, tb)});  // u2 = min
      } else if (f <= 0.0) {
        if (r == 0.0) out.push_back({});
      } else if (r > 0.0) {
        const double a = 1.0 - r / (2.0 * f);   // u_max when the joint term binds
        const double bb = 1.0 - r / f;          // u_min bound / value
        out.push_back({ord12, two(1, 0, lp::Relation::Equal, a),
                       two(0, 1, lp::Relation::LessEq, bb)});
        out.push_back({ord21, two(0, 1, lp::Relation::Equal, a),
                       two(1, 0, lp::Relation::LessEq, bb)});
        out.push_back({ord21, two(1, 0, lp::Relation::Equal, bb),
                       two(0, 1, lp::Relation::LessEq, a)});
        out.push_back({ord12, two(0, 1, lp::Relation::Equal, bb),
                       two(1, 0, lp::Relation::LessEq, a)});
      }
      return out;
    }
  }
  return out;
}

struct PartMin {
  bool feasible = false;
  double value = kInf;
  std::vector<double> x;  // over the part's local variables
};

inline PartMin minimize_component(const CompiledComponent& comp,
                                  const std::vector<double>& weights, double f) {
  PartMin best;
  lp::Problem prob;
  prob.num_vars = static_cast<int>(comp.vars.size());
  prob.objective.resize(comp.vars.size());
  for (std::size_t i = 0; i < comp.vars.size(); ++i)
    prob.objective[i] = weights[comp.vars[i]];
  for (const auto& branch : comp.branches) {
    prob.rows.clear();
    bool dead = false;
    for (const auto& lin : branch) {
      lp::Row row;
      row.rel = lp::Relation::LessEq;
      row.b = -lin.cst.at(f);
      row.a.resize(comp.vars.size());
      bool any = false;
      for (std::size_t i = 0; i < comp.vars.size(); ++i) {
        row.a[i] = lin.coef[comp.vars[i]].at(f);
        if (row.a[i] != 0.0) any = true;
      }
      if (!any) {
        if (row.b < -kFeasEps) {
          dead = true;  // constant row violated
          break;
        }
        continue;
      }
      prob.rows.push_back(std::move(row));
    }
    if (dead) continue;
    const lp::Solution sol = lp::solve(prob);
    if (sol.status == lp::Status::Optimal && sol.value < best.value) {
      best.feasible = true;
      best.value = sol.value;
      best.x = sol.x;
    } else if (sol.status == lp::Status::Unbounded) {
      best.feasible = true;
      best.value = -kInf;
      best.x.assign(comp.vars.size(), 0.0);
    }
  }
  return best;
}

inline PartMin minimize_rule(const FRule& rule, const std::vector<int>& rule_vars,
                             const std::vector<double>& weights, double f) {
  PartMin best;
  const auto branch_sets = rule_branches(rule, f);
  if (rule_vars.empty()) {
    // No coupled variables: feasible iff some branch exists.
    if (!branch_sets.empty()) {
      best.feasible = true;
      best.value = 0.0;
    }
    return best;
  }
  lp::Problem prob;
  prob.num_vars = static_cast<int>(rule_vars.size());
  prob.objective.resize(rule_vars.size());
  for (std::size_t i = 0; i < rule_vars.size(); ++i)
    prob.objective[i] = weights[rule_vars[i]];
  for (const auto& rows : branch_sets) {
    prob.rows.clear();
    for (const auto& rr : rows) prob.rows.push_back(lp::Row{rr.a, rr.rel, rr.b});
    const lp::Solution sol = lp::solve(prob);
    if (sol.status == lp::Status::Optimal && sol.value < best.value) {
      best.feasible = true;
      best.value = sol.value;
      best.x = sol.x;
    }
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One-dimensional infimum over the listening fraction.
// ---------------------------------------------------------------------------

struct ScalarMin {
  double value = kInf;
  double arg = 0.0;
};

/// Minimizes fn on [lo, hi]: coarse scan + candidate points + golden-section
/// refinement around the incumbent. fn may return +inf (or throw
/// std::domain_error) where undefined.
inline ScalarMin minimize_scalar(const std::function<double(double)>& fn, double lo,
                                 double hi, std::span<const double> candidates = {},
                                 int coarse = 160) {
  if (!(lo <= hi)) throw std::invalid_argument("minimize_scalar: empty interval");
  auto safe = [&](double x) {
    try {
      return fn(x);
    } catch (const std::domain_error&) {
      return kInf;
    }
  };
  ScalarMin best{safe(lo), lo};
  auto consider = [&](double x) {
    if (x < lo || x > hi) return;
    const double v = safe(x);
    if (v < best.value) best = {v, x};
  };
  consider(hi);
  for (int i = 1; i < coarse; ++i) consider(lo + (hi - lo) * i / coarse);
  for (double c : candidates) consider(c);
  // Golden-section inside the bracket around the incumbent.
  const double step = (hi - lo) / coarse;
  double a = std::max(lo, best.arg - step), b = std::min(hi, best.arg + step);
  constexpr double kGolden = 0.6180339887498949;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = safe(x1), f2 = safe(x2);
  for (int it = 0; it < 90 && b - a > 1e-13; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = safe(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = safe(x2);
    }
    if (f1 < best.value) best = {f1, x1};
    if (f2 < best.value) best = {f2, x2};
  }
  return best;
}

/// Infimum over f of the sum of two f-indexed infima (a region part and a
/// listening-rule part).
inline ScalarMin infimum_over_f(const std::function<double(double)>& region_part,
                                const std::function<double(double)>& rule_part,
                                double f_lo, double f_hi,
                                std::span<const double> candidates = {}) {
  return minimize_scalar(
      [&](double f) {
        const double a = region_part(f);
        const double b = rule_part(f);
        return a + b;
      },
      f_lo, f_hi, candidates);
}

// ---------------------------------------------------------------------------
// Branch-LP infimum.
// ---------------------------------------------------------------------------

struct InfimumOptions {
  Method method = Method::BranchLp;
  std::size_t max_branches = 100000;
  int f_scan = 160;
};

namespace detail {

struct FixedFEval {
  const CompiledRegion* compiled;
  const std::vector<double>* weights;

  double value(double f) const {
    double total = 0.0;
    for (const auto& comp : compiled->components()) {
      const PartMin pm = minimize_component(comp, *weights, f);
      if (!pm.feasible) return kInf;
      total += pm.value;
    }
    const PartMin rm = minimize_rule(compiled->region().f_rule, compiled->rule_vars(),
                                     *weights, f);
    if (!rm.feasible) return kInf;
    return total + rm.value;
  }

  InfimumResult extract(double f) const {
    InfimumResult res;
    res.method = Method::BranchLp;
    res.f = f;
    res.argmin.assign(compiled->nvars(), 0.0);
    double total = 0.0;
    for (const auto& comp : compiled->components()) {
      PartMin pm = minimize_component(comp, *weights, f);
      if (!pm.feasible) return res;
      total += pm.value;
      for (std::size_t i = 0; i < comp.vars.size(); ++i) res.argmin[comp.vars[i]] = pm.x[i];
    }
    PartMin rm = minimize_rule(compiled->region().f_rule, compiled->rule_vars(), *weights, f);
    if (!rm.feasible) return res;
    total += rm.value;
    for (std::size_t i = 0; i < compiled->rule_vars().size(); ++i)
      res.argmin[compiled->rule_vars()[i]] = rm.x[i];
    res.feasible = true;
    res.value = total;
    return res;
  }
};

}  // namespace detail

/// Branch-LP infimum of the weighted order sum over the region. Weights are
/// aligned with region.vars and must be nonnegative.
inline InfimumResult infimum_branch_lp(const OutageRegionSpec& region,
                                       const std::vector<double>& weights,
                                       const InfimumOptions& opts = {}) {
  if (weights.size() != region.vars.size())
    throw std::invalid_argument("infimum: weights must align with region vars");
  const detail::CompiledRegion compiled(region, opts.max_branches);
  const detail::FixedFEval eval{&compiled, &weights};

  const auto kind = region.f_rule.kind;
  if (kind == FRule::Kind::None || kind == FRule::Kind::Fixed) {
    return eval.extract(kind == FRule::Kind::Fixed ? region.f_rule.fixed : 0.0);
  }

  // Coupled rule: outer scan over f with formula-knot candidates.
  const double r = region.f_rule.rate;
  std::vector<double> knots{0.0, 1.0, 0.5, 2.0 / 3.0};
  for (double k : {r, 1.5 * r, r / 2.0, 1.0 - r / 2.0, 1.0 - r, 1.0 - r / 4.0})
    if (k >= 0.0 && k <= 1.0) knots.push_back(k);
  const ScalarMin m = minimize_scalar([&](double f) { return eval.value(f); }, 0.0, 1.0,
                                      knots, opts.f_scan);
  if (m.value == kInf) {
    InfimumResult res;
    res.method = Method::BranchLp;
    return res;
  }
  return eval.extract(m.arg);
}

// ---------------------------------------------------------------------------
// Grid oracle (independent cross-check).
// ---------------------------------------------------------------------------

struct GridOptions {
  int per_dim = 11;        // global scan resolution per dimension
  int incumbents = 8;      // basins kept for local refinement
  int rounds = 5;          // box-refinement rounds per incumbent
  double shrink_margin = 1.5;  // refined half-width, in units of the old cell
  double tol = 1e-9;       // membership residual tolerance
  unsigned polish_seed = 0x9e3779b9u;
};

namespace detail {

/// Descent polish along feasible directions. Coordinate and pair moves
/// handle axis-aligned and simple sloped faces; seeded random directions
/// handle the curved faces introduced by the listening-fraction coupling.
/// Only verified-feasible, strictly-improving steps are accepted.
inline void polish_feasible(const std::function<bool(const std::vector<double>&)>& feasible,
                            const std::vector<double>& weights, std::vector<double>& x,
                            unsigned seed) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d(n, 0.0);
    d[i] = -1.0;
    dirs.push_back(d);
    d[i] = 1.0;
    dirs.push_back(d);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<double> d(n, 0.0);
      d[i] = -1.0;
      d[j] = 1.0;
      dirs.push_back(d);
    }
  // Deterministic pseudo-random unit directions.
  std::uint64_t state = seed;
  auto next_u = [&] {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
  };
  for (int k = 0; k < 96; ++k) {
    std::vector<double> d(n);
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = 2.0 * next_u() - 1.0;
      norm += d[i] * d[i];
    }
    norm = std::sqrt(norm);
    if (norm < 1e-9) continue;
    for (auto& v : d) v /= norm;
    dirs.push_back(d);
  }

  auto objective = [&](const std::vector<double>& pt) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += weights[i] * pt[i];
    return s;
  };
  auto at = [&](const std::vector<double>& base, const std::vector<double>& d, double t) {
    std::vector<double> pt(n);
    for (std::size_t i = 0; i < n; ++i) pt[i] = std::clamp(base[i] + t * d[i], 0.0, 1.0);
    return pt;
  };

  for (double step = 0.05; step > 2e-8; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& d : dirs) {
        double wd = 0;
        for (std::size_t i = 0; i < n; ++i) wd += weights[i] * d[i];
        if (wd >= -1e-12) continue;  // objective would not decrease
        auto pt = at(x, d, step);
        if (!feasible(pt)) {
          // Largest feasible sub-step along d (bisection).
          double lo = 0, hi = step;
          for (int it = 0; it < 20; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (feasible(at(x, d, mid)))
              lo = mid;
            else
              hi = mid;
          }
          if (lo <= 0) continue;
          pt = at(x, d, lo);
          if (!feasible(pt)) continue;
        }
        if (objective(pt) < objective(x) - 1e-15) {
          x = pt;
          improved = true;
        }
      }
    }
  }
}

}  // namespace detail

inline InfimumResult infimum_grid(const OutageRegionSpec& region,
                                  const std::vector<double>& weights,
                                  const GridOptions& opts = {}) {
  const std::size_t n = region.vars.size();
  if (weights.size() != n) throw std::invalid_argument("infimum_grid: weight size");
  if (n > 6) throw std::invalid_argument("infimum_grid: too many dimensions");

  InfimumResult best;
  best.method = Method::Grid;

  auto objective = [&](const std::vector<double>& pt) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += weights[i] * pt[i];
    return s;
  };
  auto feasible = [&](const std::vector<double>& pt) {
    return region.is_member(pt.data(), opts.tol);
  };

  struct Incumbent {
    double value;
    std::vector<double> x;
  };
  std::vector<Incumbent> pool;
  auto offer = [&](const std::vector<double>& pt, double sep) {
    const double v = objective(pt);
    for (auto& inc : pool) {
      double dist = 0;
      for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::fabs(inc.x[i] - pt[i]));
      if (dist < sep) {  // same basin: keep the better point
        if (v < inc.value) inc = {v, pt};
        return;
      }
    }
    pool.push_back({v, pt});
  };

  auto scan_box = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                      int md, double sep) {
    std::vector<int> idx(n, 0);
    std::vector<double> pt(n);
    while (true) {
      for (std::size_t i = 0; i < n; ++i)
        pt[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / (md - 1);
      if (feasible(pt)) offer(pt, sep);
      std::size_t p = 0;
      for (; p < n; ++p) {
        if (++idx[p] < md) break;
        idx[p] = 0;
      }
      if (p == n) break;
    }
  };

  const int md = opts.per_dim;
  const double h0 = 1.0 / (md - 1);
  scan_box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0), md, 2.5 * h0);
  if (pool.empty()) return best;
  std::sort(pool.begin(), pool.end(),
            [](const Incumbent& a, const Incumbent& b) { return a.value < b.value; });
  if (static_cast<int>(pool.size()) > opts.incumbents) pool.resize(opts.incumbents);

  // Refine a shrinking box around each candidate basin independently.
  for (auto& inc : pool) {
    double h = h0;
    for (int round = 0; round < opts.rounds; ++round) {
      std::vector<double> lo(n), hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::max(0.0, inc.x[i] - opts.shrink_margin * h);
        hi[i] = std::min(1.0, inc.x[i] + opts.shrink_margin * h);
      }
      // Local scan: best point only.
      std::vector<int> idx(n, 0);
      std::vector<double> pt(n);
      while (true) {
        for (std::size_t i = 0; i < n; ++i)
          pt[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / (md - 1);
        if (feasible(pt)) {
          const double v = objective(pt);
          if (v < inc.value) inc = {v, pt};
        }
        std::size_t p = 0;
        for (; p < n; ++p) {
          if (++idx[p] < md) break;
          idx[p] = 0;
        }
        if (p == n) break;
      }
      h *= 2.0 * opts.shrink_margin / (md - 1);
    }
    detail::polish_feasible(feasible, weights, inc.x, opts.polish_seed);
    inc.value = objective(inc.x);
  }

  for (const auto& inc : pool) {
    if (inc.value < best.value) {
      best.feasible = true;
      best.value = inc.value;
      best.argmin = inc.x;
    }
  }
  if (best.feasible) best.f = region.f_rule.eval(region.vars, best.argmin.data());
  return best;
}

/// Entry point selecting the method.
inline InfimumResult infimum(const OutageRegionSpec& region,
                             const std::vector<double>& weights,
                             const InfimumOptions& opts = {}) {
  if (opts.method == Method::Grid) return infimum_grid(region, weights);
  return infimum_branch_lp(region, weights, opts);
}

inline std::vector<double> unit_weights(const OutageRegionSpec& region) {
  return std::vector<double>(region.vars.size(), 1.0);
}

}  // namespace arqddf::outage
