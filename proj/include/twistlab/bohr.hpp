#pragma once

#include <optional>
#include <vector>

#include "twistlab/kronecker.hpp"
#include "twistlab/region.hpp"

namespace twistlab {

/// Open arc on the circle: (center - radius, center + radius) mod 1.
/// Rational radius keeps Haar measures of boxes exact.
struct Arc {
  TorusScalar center;
  Rat radius;
};

/// E = tau^{-1}(U) for U a product of open arcs on T^M. Tori are connected,
/// so every set built here is aperiodic in the sense that matters for the
/// twisted theorems.
struct BohrSetSpec {
  KroneckerSystem system;
  std::vector<Arc> arcs;

  BohrSetSpec(KroneckerSystem sys, std::vector<Arc> a)
      : system(std::move(sys)), arcs(std::move(a)) {
    if (arcs.size() != system.torus_dim())
      throw Error("one arc per torus coordinate required");
    for (const auto& arc : arcs)
      if (arc.radius <= 0 || arc.radius >= Rat(1, 2))
        throw Error("arc radius must lie in (0, 1/2)");
  }

  std::size_t domain_rank() const { return system.domain_rank(); }

  /// Haar measure of the box U (exact).
  Rat box_measure() const {
    Rat m = 1;
    for (const auto& arc : arcs) m *= Rat(2) * arc.radius;
    return m;
  }

  /// U as a Region (finite union of boxes).
  Region box_region() const {
    std::vector<std::vector<CircleInterval>> per_coord;
    per_coord.reserve(arcs.size());
    for (const auto& arc : arcs)
      per_coord.push_back(Region::arc_intervals(arc.center, arc.radius));
    return Region::box_product(per_coord);
  }

  bool contains_zero() const {
    for (const auto& arc : arcs) {
      TorusScalar d = circle_distance_to_zero(arc.center);
      if (d.compare(TorusScalar(arc.radius)) >= 0) return false;
    }
    return true;
  }
};

struct Membership {
  enum Kind { In, Out, Boundary } kind = Out;
  double delta = 0.0;  // distance scale at which the call was ambiguous

  bool is_in() const { return kind == In; }
};

/// Classify tau(a) against the box. A coordinate within the tracked error
/// of an arc endpoint (or exactly on it) yields Boundary rather than a
/// guess; any coordinate strictly outside makes the whole point Out.
inline Membership member(const BohrSetSpec& spec, const std::vector<Int>& a) {
  TorusPoint x = spec.system.apply(a);
  bool boundary = false;
  double delta = 0.0;
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) {
    TorusScalar d = (x[i] - spec.arcs[i].center).reduced_mod1();
    // inside iff d < r or d > 1 - r (arc is open)
    try {
      int lo_cmp = d.compare(TorusScalar(spec.arcs[i].radius));
      int hi_cmp = d.compare(TorusScalar(Rat(1) - spec.arcs[i].radius));
      if (lo_cmp == 0 || hi_cmp == 0) {
        boundary = true;  // exactly on an endpoint
        continue;
      }
      if (lo_cmp > 0 && hi_cmp < 0) return {Membership::Out, 0.0};
    } catch (const PrecisionError&) {
      boundary = true;
      delta = std::max(delta, d.eval().err);
    }
  }
  if (boundary) return {Membership::Boundary, delta};
  return {Membership::In, 0.0};
}

inline Membership member(const BohrSetSpec& spec, const std::vector<long long>& a) {
  return member(spec, std::vector<Int>(a.begin(), a.end()));
}

struct EnumerateResult {
  std::vector<std::vector<long long>> members;   // lexicographic
  std::vector<std::vector<long long>> boundary;  // surfaced separately
};

using Window = std::vector<std::pair<long long, long long>>;  // inclusive per axis

namespace detail {

template <typename Fn>
void scan_window(const Window& w, Fn&& fn) {
  std::size_t n = w.size();
  std::vector<long long> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].first > w[i].second) return;
    p[i] = w[i].first;
  }
  while (true) {
    fn(p);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (p[i] < w[i].second) {
        ++p[i];
        for (std::size_t k = i + 1; k < n; ++k) p[k] = w[k].first;
        break;
      }
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace detail

/// Exactly the In points of the window, lexicographically sorted; Boundary
/// points are listed separately, never silently classified.
inline EnumerateResult enumerate_members(const BohrSetSpec& spec, const Window& window) {
  if (window.size() != spec.domain_rank()) throw Error("window rank mismatch");
  EnumerateResult out;
  detail::scan_window(window, [&](const std::vector<long long>& p) {
    Membership m = member(spec, p);
    if (m.kind == Membership::In) out.members.push_back(p);
    if (m.kind == Membership::Boundary) out.boundary.push_back(p);
  });
  return out;
}

/// Product of Bohr sets: block-diagonal system, concatenated arcs.
inline BohrSetSpec product_bohr(const std::vector<BohrSetSpec>& specs) {
  if (specs.empty()) throw Error("product of zero Bohr sets");
  if (specs.size() == 1) return specs.front();
  std::vector<KroneckerSystem> systems;
  std::vector<Arc> arcs;
  for (const auto& s : specs) {
    systems.push_back(s.system);
    for (const auto& a : s.arcs) arcs.push_back(a);
  }
  return BohrSetSpec(KroneckerSystem::product(systems), std::move(arcs));
}

/// A Bohr_o set C with C - C contained in B. Arcs are recentered at 0 with
/// radius half of the zero-slack (for an arc already centered at 0 that is
/// exactly half the radius). Irrational centers get a rational lower bound
/// for the slack so the new radius stays rational.
inline BohrSetSpec difference_inclusion_witness(const BohrSetSpec& b) {
  if (!b.contains_zero())
    throw Error("difference witness requires a Bohr_o set (0 in every arc)");
  std::vector<Arc> arcs;
  arcs.reserve(b.arcs.size());
  for (const auto& arc : b.arcs) {
    TorusScalar dist = circle_distance_to_zero(arc.center);
    Rat slack;
    if (dist.rationality() == Rationality::Rational) {
      slack = arc.radius - dist.as_rational();
    } else {
      // round the evaluation down to a rational strictly below the slack
      double d = dist.eval().to_double();
      long long num = static_cast<long long>(std::ceil(d * 1'000'000)) + 1;
      slack = arc.radius - Rat(num, 1'000'000);
    }
    if (slack <= 0) throw Error("arc has no zero-slack; cannot build witness");
    arcs.push_back(Arc{TorusScalar(Rat(0)), slack / 2});
  }
  return BohrSetSpec(b.system, std::move(arcs));
}

namespace bohr_presets {

/// The shipped 1-dimensional golden-ratio spec: tau(a) = a*(sqrt(5)-1)/2,
/// arc (-3/20, 3/20), measure 3/10.
inline BohrSetSpec golden_arc(const Rat& radius = Rat(3, 20)) {
  KroneckerSystem sys(1, 1, {{TorusScalar::constant("golden")}});
  return BohrSetSpec(std::move(sys), {Arc{TorusScalar(Rat(0)), radius}});
}

inline BohrSetSpec sqrt2_arc(const Rat& radius = Rat(3, 20)) {
  KroneckerSystem sys(1, 1, {{TorusScalar::constant("sqrt2m1")}});
  return BohrSetSpec(std::move(sys), {Arc{TorusScalar(Rat(0)), radius}});
}

inline BohrSetSpec golden_cube(const Rat& radius = Rat(3, 20)) {
  return product_bohr({golden_arc(radius), golden_arc(radius), golden_arc(radius)});
}

}  // namespace bohr_presets
}  // namespace twistlab
