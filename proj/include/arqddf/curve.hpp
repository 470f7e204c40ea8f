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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arqddf/rational.hpp"

namespace arqddf {

/// One branch of a diversity curve: d(r) = (a + b·r) / (c + e·r) on [lo, hi).
/// Affine branches are the common case (c = 1, e = 0); the hyperbolic
/// branches like 2(1-r)/r fit the same form. Coefficients are exact
/// rationals so that continuity and breakpoint identities can be asserted
/// without tolerances. The denominator must be strictly positive on the
/// segment.
struct CurveSegment {
  Rat a, b, c, e;
  Rat lo, hi;

  static CurveSegment affine(Rat a, Rat b, Rat lo, Rat hi) {
    return CurveSegment{a, b, Rat(1), Rat(0), lo, hi};
  }

  double value(double r) const {
    return (a.to_double() + b.to_double() * r) / (c.to_double() + e.to_double() * r);
  }
  Rat value_exact(const Rat& r) const { return (a + b * r) / (c + e * r); }

  /// Sign of the derivative is constant on the segment: sgn(b·c − a·e).
  Rat slope_sign() const { return b * c - a * e; }
};

/// A DMT curve as an ordered list of segments with exact rational
/// breakpoints. Domain is [r_min, r_max) or [r_min, r_max] depending on
/// whether the defining formula includes its right endpoint. Evaluation
/// outside the domain throws std::domain_error.
class PiecewiseCurve {
 public:
  PiecewiseCurve(std::vector<CurveSegment> segments, bool right_closed)
      : segs_(std::move(segments)), right_closed_(right_closed) {
    if (segs_.empty()) throw std::invalid_argument("PiecewiseCurve: no segments");
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto& s = segs_[i];
      if (!(s.lo < s.hi)) throw std::invalid_argument("PiecewiseCurve: empty segment");
      if (!(s.c + s.e * s.lo > Rat(0)) || !(s.c + s.e * s.hi > Rat(0)))
        throw std::invalid_argument("PiecewiseCurve: denominator not positive");
      if (i > 0) {
        if (segs_[i - 1].hi != s.lo)
          throw std::invalid_argument("PiecewiseCurve: segments not contiguous");
        if (segs_[i - 1].value_exact(s.lo) != s.value_exact(s.lo))
          throw std::invalid_argument("PiecewiseCurve: discontinuous at breakpoint");
      }
    }
  }

  double r_min() const { return segs_.front().lo.to_double(); }
  double r_max() const { return segs_.back().hi.to_double(); }
  Rat r_min_exact() const { return segs_.front().lo; }
  Rat r_max_exact() const { return segs_.back().hi; }
  bool right_closed() const { return right_closed_; }

  bool contains(double r) const {
    if (r < r_min()) return false;
    return right_closed_ ? r <= r_max() : r < r_max();
  }

  double value(double r) const {
    if (!contains(r)) throw std::domain_error("PiecewiseCurve: r outside domain");
    return segment_at(r).value(r);
  }

  Rat value_exact(const Rat& r) const {
    if (r < segs_.front().lo || segs_.back().hi < r ||
        (!right_closed_ && r == segs_.back().hi))
      throw std::domain_error("PiecewiseCurve: r outside domain");
    for (const auto& s : segs_)
      if (r <= s.hi) return s.value_exact(r);
    return segs_.back().value_exact(r);
  }

  const std::vector<CurveSegment>& segments() const { return segs_; }

  /// Segment-boundary points (r, d), including the right end (its value is
  /// the last segment's formula value there, even when the domain is open).
  std::vector<std::pair<double, double>> breakpoints() const {
    std::vector<std::pair<double, double>> bp;
    bp.reserve(segs_.size() + 1);
    for (const auto& s : segs_) bp.emplace_back(s.lo.to_double(), s.value(s.lo.to_double()));
    const auto& last = segs_.back();
    bp.emplace_back(last.hi.to_double(), last.value(last.hi.to_double()));
    return bp;
  }

  /// True iff every segment is non-increasing.
  bool non_increasing() const {
    return std::all_of(segs_.begin(), segs_.end(),
                       [](const CurveSegment& s) { return s.slope_sign() <= Rat(0); });
  }

  /// True iff d >= 0 everywhere (each segment is monotone, so endpoints
  /// suffice).
  bool nonnegative() const {
    return std::all_of(segs_.begin(), segs_.end(), [](const CurveSegment& s) {
      return s.value_exact(s.lo) >= Rat(0) && s.value_exact(s.hi) >= Rat(0);
    });
  }

  /// Pointwise minimum on the intersection of the domains. Crossings inside
  /// a segment pair are found exactly when rational (always the case for the
  /// curves in this library) and by a dyadic approximation otherwise.
  PiecewiseCurve min_with(const PiecewiseCurve& other) const {
    const Rat lo = std::max(r_min_exact(), other.r_min_exact());
    const Rat hi = std::min(r_max_exact(), other.r_max_exact());
    if (!(lo < hi)) throw std::invalid_argument("min_with: disjoint domains");

    std::vector<Rat> knots{lo, hi};
    auto add_knots = [&](const PiecewiseCurve& c) {
      for (const auto& s : c.segs_) {
        if (lo < s.lo && s.lo < hi) knots.push_back(s.lo);
        if (lo < s.hi && s.hi < hi) knots.push_back(s.hi);
      }
    };
    add_knots(*this);
    add_knots(other);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    // Within each knot interval both curves are single Mobius branches, so
    // their difference has a quadratic numerator; split at its roots.
    std::vector<Rat> cuts;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const Rat a = knots[i], b = knots[i + 1];
      cuts.push_back(a);
      const CurveSegment& s1 = segment_at_exact(a, b);
      const CurveSegment& s2 = other.segment_at_exact(a, b);
      for (const Rat& root : crossing_roots(s1, s2)) {
        if (a < root && root < b) cuts.push_back(root);
      }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<CurveSegment> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rat a = cuts[i], b = cuts[i + 1];
      const Rat mid = (a + b) / Rat(2);
      const CurveSegment& s1 = segment_at_exact(a, b);
      const CurveSegment& s2 = other.segment_at_exact(a, b);
      const CurveSegment& win =
          s1.value_exact(mid) <= s2.value_exact(mid) ? s1 : s2;
      CurveSegment piece = win;
      piece.lo = a;
      piece.hi = b;
      // Merge with the previous piece when it is the same branch.
      if (!out.empty() && out.back().a == piece.a && out.back().b == piece.b &&
          out.back().c == piece.c && out.back().e == piece.e) {
        out.back().hi = b;
      } else {
        out.push_back(piece);
      }
    }
    const bool closed_here = hi < r_max_exact() || (hi == r_max_exact() && right_closed_);
    const bool closed_other =
        hi < other.r_max_exact() || (hi == other.r_max_exact() && other.right_closed_);
    return PiecewiseCurve(std::move(out), closed_here && closed_other);
  }

 private:
  const CurveSegment& segment_at(double r) const {
    for (const auto& s : segs_)
      if (r < s.hi.to_double()) return s;
    return segs_.back();
  }

  /// Segment covering the open interval (a, b); assumes no internal knots.
  const CurveSegment& segment_at_exact(const Rat& a, const Rat& b) const {
    const Rat mid = (a + b) / Rat(2);
    for (const auto& s : segs_)
      if (s.lo <= mid && mid < s.hi) return s;
    return segs_.back();
  }

  static std::vector<Rat> crossing_roots(const CurveSegment& s1, const CurveSegment& s2) {
    // (a1+b1 r)(c2+e2 r) - (a2+b2 r)(c1+e1 r) = A r^2 + B r + C.
    const Rat A = s1.b * s2.e - s2.b * s1.e;
    const Rat B = s1.a * s2.e + s1.b * s2.c - s2.a * s1.e - s2.b * s1.c;
    const Rat C = s1.a * s2.c - s2.a * s1.c;
    std::vector<Rat> roots;
    if (A == Rat(0)) {
      if (B != Rat(0)) roots.push_back(-C / B);
      return roots;
    }
    const Rat disc = B * B - Rat(4) * A * C;
    if (disc < Rat(0)) return roots;
    if (auto sq = disc.sqrt_exact()) {
      roots.push_back((-B - *sq) / (Rat(2) * A));
      roots.push_back((-B + *sq) / (Rat(2) * A));
    } else {
      const double sd = std::sqrt(disc.to_double());
      roots.push_back(Rat::from_double_approx((-B.to_double() - sd) / (2 * A.to_double())));
      roots.push_back(Rat::from_double_approx((-B.to_double() + sd) / (2 * A.to_double())));
    }
    return roots;
  }

  std::vector<CurveSegment> segs_;
  bool right_closed_;
};

}  // namespace arqddf
