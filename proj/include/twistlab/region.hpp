#pragma once

#include <optional>
#include <vector>

#include "twistlab/torus_scalar.hpp"

namespace twistlab {

/// Half-open interval [lo, hi) inside [0, 1); the building block of finite
/// unions of boxes on T^M. Endpoints are exact symbolic scalars.
struct CircleInterval {
  TorusScalar lo, hi;

  TorusScalar length() const { return hi - lo; }
};

/// A measure value that stays exact (symbolic) whenever the arithmetic
/// allows: sums of interval lengths in one dimension, or products of
/// rational lengths. Otherwise the 256-bit tracked evaluation is reported.
struct MeasureValue {
  std::optional<TorusScalar> exact;
  TrackedReal tracked;

  double to_double() const { return tracked.to_double(); }

  /// Sign of (value - bound), decided symbolically when possible.
  int compare(const Rat& bound) const {
    if (exact) return exact->compare(TorusScalar(bound));
    TrackedReal d = tracked - TrackedReal::of_rat(bound);
    int s = tracked_sign(d);
    if (s == 0) throw PrecisionError("measure comparison undecidable");
    return s;
  }

  bool matches(const MeasureValue& o) const {
    if (exact && o.exact) return exact->identical(*o.exact);
    TrackedReal d = tracked - o.tracked;
    return tracked_sign(d) == 0;
  }
};

/// Finite disjoint union of boxes on T^M, the exact set algebra behind the
/// recurrence computations. Disjointness is maintained by construction
/// (products of per-coordinate disjoint intervals, translates, and
/// intersections of such).
class Region {
 public:
  using Box = std::vector<CircleInterval>;

  explicit Region(std::size_t torus_dim) : m_(torus_dim) {}

  std::size_t torus_dim() const { return m_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  /// Canonicalize the arc (center - radius, center + radius) into one or
  /// two non-wrapping intervals.
  static std::vector<CircleInterval> arc_intervals(const TorusScalar& center,
                                                   const Rat& radius) {
    if (radius <= 0 || radius >= Rat(1, 2))
      throw Error("arc radius must lie in (0, 1/2)");
    TorusScalar lo = (center - TorusScalar(radius)).reduced_mod1();
    TorusScalar len(Rat(2) * radius);
    TorusScalar end = lo + len;
    int cmp = end.compare(TorusScalar(Rat(1)));
    std::vector<CircleInterval> out;
    if (cmp <= 0) {
      out.push_back({lo, end});
    } else {
      out.push_back({lo, TorusScalar(Rat(1))});
      out.push_back({TorusScalar(Rat(0)), end - TorusScalar(Rat(1))});
    }
    return out;
  }

  /// Product region from per-coordinate unions of disjoint intervals.
  static Region box_product(const std::vector<std::vector<CircleInterval>>& per_coord) {
    Region r(per_coord.size());
    std::vector<Box> acc{Box{}};
    for (const auto& options : per_coord) {
      std::vector<Box> next;
      for (const auto& partial : acc)
        for (const auto& iv : options) {
          Box b = partial;
          b.push_back(iv);
          next.push_back(std::move(b));
        }
      acc = std::move(next);
    }
    if (!per_coord.empty() && !acc.empty() && !acc.front().empty()) r.boxes_ = std::move(acc);
    return r;
  }

  /// Translate by t mod 1 (Haar-measure preserving; wrapping intervals are
  /// split).
  Region translated(const std::vector<TorusScalar>& t) const {
    if (t.size() != m_) throw Error("translate dimension mismatch");
    Region r(m_);
    for (const auto& box : boxes_) {
      std::vector<std::vector<CircleInterval>> per_coord;
      per_coord.reserve(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        std::vector<CircleInterval> parts;
        TorusScalar lo = (box[i].lo + t[i]).reduced_mod1();
        TorusScalar end = lo + box[i].length();
        int cmp = end.compare(TorusScalar(Rat(1)));
        if (cmp <= 0) {
          parts.push_back({lo, end});
        } else {
          parts.push_back({lo, TorusScalar(Rat(1))});
          parts.push_back({TorusScalar(Rat(0)), end - TorusScalar(Rat(1))});
        }
        per_coord.push_back(std::move(parts));
      }
      Region piece = box_product(per_coord);
      for (auto& b : piece.boxes_) r.boxes_.push_back(std::move(b));
    }
    return r;
  }

  Region intersected(const Region& o) const {
    if (m_ != o.m_) throw Error("region dimension mismatch");
    Region r(m_);
    for (const auto& a : boxes_)
      for (const auto& b : o.boxes_) {
        Box cut;
        cut.reserve(m_);
        bool nonempty = true;
        for (std::size_t i = 0; i < m_ && nonempty; ++i) {
          const TorusScalar& lo = a[i].lo.compare(b[i].lo) >= 0 ? a[i].lo : b[i].lo;
          const TorusScalar& hi = a[i].hi.compare(b[i].hi) <= 0 ? a[i].hi : b[i].hi;
          if (lo.compare(hi) >= 0)
            nonempty = false;
          else
            cut.push_back({lo, hi});
        }
        if (nonempty) r.boxes_.push_back(std::move(cut));
      }
    return r;
  }

  MeasureValue measure() const {
    MeasureValue mv;
    if (m_ == 1) {
      TorusScalar total;
      for (const auto& box : boxes_) total = total + box[0].length();
      mv.exact = total;
      mv.tracked = total.eval();
      return mv;
    }
    bool all_rational = true;
    Rat exact_total = 0;
    TrackedReal tracked_total{Real(0), 0.0};
    for (const auto& box : boxes_) {
      Rat exact_vol = 1;
      TrackedReal vol{Real(1), 0.0};
      for (const auto& iv : box) {
        TorusScalar len = iv.length();
        if (len.rationality() == Rationality::Rational && all_rational)
          exact_vol *= len.as_rational();
        else
          all_rational = false;
        vol = vol * len.eval();
      }
      if (all_rational) exact_total += exact_vol;
      tracked_total = tracked_total + vol;
    }
    if (all_rational) mv.exact = TorusScalar(exact_total);
    mv.tracked = tracked_total;
    return mv;
  }

 private:
  std::size_t m_;
  std::vector<Box> boxes_;
};

}  // namespace twistlab
