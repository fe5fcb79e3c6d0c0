#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <unordered_set>

#include "twistlab/density.hpp"
#include "twistlab/invariant_map.hpp"

namespace twistlab {

namespace detail {

inline std::vector<Int> to_int_vec(const std::vector<long long>& v) {
  return std::vector<Int>(v.begin(), v.end());
}

inline std::vector<long long> sub(const std::vector<long long>& a,
                                  const std::vector<long long>& b) {
  std::vector<long long> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline long long linf_dist(const std::vector<long long>& a,
                           const std::vector<long long>& b) {
  long long d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::llabs(a[i] - b[i]));
  return d;
}

}  // namespace detail

/// One matched pattern point: e in E with Psi(k f) = Psi(e - b).
struct PatternWitness {
  std::vector<long long> f;
  std::vector<long long> e;
  PsiValue value;
};

struct WitnessReport {
  bool success = false;
  long long k = 0;
  std::vector<long long> b;
  std::vector<PatternWitness> witnesses;
  Window b_window, e_window;
  bool windows_exhausted = true;  // the stated windows were fully scanned
  // Best partial cover when the search fails.
  std::size_t best_covered = 0;
  long long best_k = 0;
  std::vector<long long> best_b;
};

/// Searches k = 1..k_max and b over E cap b_window (lexicographic) for a
/// translate E - b containing Psi(k F). Per f, candidate e are scanned
/// outward from b (L-inf distance, then lexicographic), so reports are
/// deterministic and witnesses minimal in that order. Failure is a report
/// with the best partial cover, never an error: the theorems only promise
/// existence for unbounded windows.
inline WitnessReport twisted_pattern_search(const InvariantMap& psi, const PointSet& e_set,
                                            const std::vector<std::vector<long long>>& f_set,
                                            long long k_max, const Window& b_window,
                                            const Window& e_window) {
  std::size_t n = psi.domain_rank();
  if (e_set.rank() != n) throw Error("pattern set rank mismatch");
  for (const auto& f : f_set)
    if (f.size() != n) throw Error("pattern point rank mismatch");

  WitnessReport report;
  report.b_window = b_window;
  report.e_window = e_window;

  std::vector<std::vector<long long>> b_candidates = e_set.members(b_window);
  std::vector<std::vector<long long>> e_members = e_set.members(e_window);

  for (long long k = 1; k <= k_max; ++k) {
    std::vector<PsiValue> targets;
    targets.reserve(f_set.size());
    for (const auto& f : f_set) {
      std::vector<Int> kf(n);
      for (std::size_t i = 0; i < n; ++i) kf[i] = Int(k) * f[i];
      targets.push_back(psi.eval(kf));
    }
    for (const auto& b : b_candidates) {
      // Spiral order around b.
      std::vector<std::size_t> order(e_members.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return detail::linf_dist(e_members[x], b) < detail::linf_dist(e_members[y], b);
      });
      std::vector<std::optional<std::vector<long long>>> found(f_set.size());
      std::size_t covered = 0;
      for (std::size_t oi = 0; oi < order.size() && covered < f_set.size(); ++oi) {
        const auto& e = e_members[order[oi]];
        PsiValue val = psi.eval(detail::to_int_vec(detail::sub(e, b)));
        for (std::size_t fi = 0; fi < f_set.size(); ++fi) {
          if (!found[fi] && val == targets[fi]) {
            found[fi] = e;
            ++covered;
          }
        }
      }
      if (covered > report.best_covered) {
        report.best_covered = covered;
        report.best_k = k;
        report.best_b = b;
      }
      if (covered == f_set.size()) {
        report.success = true;
        report.k = k;
        report.b = b;
        for (std::size_t fi = 0; fi < f_set.size(); ++fi) {
          // verify by re-evaluation
          PsiValue check = psi.eval(detail::to_int_vec(detail::sub(*found[fi], b)));
          if (!(check == targets[fi])) throw Error("witness verification failed");
          report.witnesses.push_back({f_set[fi], *found[fi], check});
        }
        return report;
      }
    }
  }
  return report;
}

struct SurjectivityEntry {
  Int target;
  bool resolved = false;
  std::vector<long long> witness;
  long long window_used = 0;
};

struct SurjectivityReport {
  std::vector<SurjectivityEntry> entries;
  bool all_resolved = true;
  bool spectrum_trivial = false;  // recorded precondition
  long long final_window = 0;
};

struct AdaptiveBudget {
  long long initial_radius = 50;
  int doublings = 6;  // radii r0, 2 r0, ..., 2^doublings r0
};

namespace detail {

/// Per-axis enumeration of a product Bohr set: sorted members plus an O(1)
/// membership set, per axis.
struct AxisSets {
  std::vector<std::vector<long long>> sorted;      // per axis, ascending
  std::vector<std::unordered_set<long long>> sets;

  static std::optional<AxisSets> build(const PointSet& e, long long radius) {
    AxisSets out;
    for (std::size_t i = 0; i < e.rank(); ++i) {
      auto axis = e.axis_slice(i);
      if (!axis) return std::nullopt;
      std::vector<long long> mem;
      for (long long v = -radius; v <= radius; ++v)
        if (axis->contains({v})) mem.push_back(v);
      out.sets.emplace_back(mem.begin(), mem.end());
      out.sorted.push_back(std::move(mem));
    }
    return out;
  }
};

inline bool square_residue_ok(long long s) {
  // quick rejection of non-squares; residues mod 64 and mod 63
  static const auto mask64 = [] {
    std::array<bool, 64> m{};
    for (int i = 0; i < 64; ++i) m[(i * i) & 63] = true;
    return m;
  }();
  static const auto mask63 = [] {
    std::array<bool, 63> m{};
    for (int i = 0; i < 63; ++i) m[(i * i) % 63] = true;
    return m;
  }();
  return mask64[s & 63] && mask63[s % 63];
}

inline bool perfect_square_ll(long long s, long long* root) {
  if (s < 0) return false;
  if (!square_residue_ok(s)) return false;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(s)));
  while (r > 0 && r * r > s) --r;
  while ((r + 1) * (r + 1) <= s) ++r;
  if (r * r != s) return false;
  *root = r;
  return true;
}

/// Complete scan for mu1 u^2 + mu2 v^2 - lam w^2 = n with (u,v,w) in the
/// axis sets; deterministic order (w, then v ascending, u = +sqrt then -).
/// The hot loop runs in long long when the magnitudes allow, with exact
/// big-integer fallback otherwise.
inline std::optional<std::vector<long long>> solve_quadratic_p2q1(
    const InvariantMap::QuadraticForm& q, const Int& n, const AxisSets& axes,
    long long radius) {
  const Int &mu1 = q.mu[0], &mu2 = q.mu[1], &lam = q.lambda[0];
  Int magnitude = boost::multiprecision::abs(n) +
                  (mu2 + lam) * Int(radius) * Int(radius);
  if (magnitude < Int(1) << 62) {
    long long nl = static_cast<long long>(n);
    long long m1 = static_cast<long long>(mu1), m2 = static_cast<long long>(mu2),
              la = static_cast<long long>(lam);
    for (long long w : axes.sorted[2]) {
      long long rhs_w = nl + la * w * w;
      for (long long v : axes.sorted[1]) {
        long long s = rhs_w - m2 * v * v;
        if (s < 0 || s % m1 != 0) continue;
        long long u;
        if (!perfect_square_ll(s / m1, &u)) continue;
        if (axes.sets[0].count(u)) return std::vector<long long>{u, v, w};
        if (u != 0 && axes.sets[0].count(-u)) return std::vector<long long>{-u, v, w};
      }
    }
    return std::nullopt;
  }
  for (long long w : axes.sorted[2]) {
    Int rhs_w = n + lam * Int(w) * Int(w);
    for (long long v : axes.sorted[1]) {
      Int s = rhs_w - mu2 * Int(v) * Int(v);
      if (s < 0 || s % mu1 != 0) continue;
      Int u;
      if (!is_perfect_square(Int(s / mu1), &u)) continue;
      long long ul = static_cast<long long>(u);
      if (axes.sets[0].count(ul)) return std::vector<long long>{ul, v, w};
      if (ul != 0 && axes.sets[0].count(-ul)) return std::vector<long long>{-ul, v, w};
    }
  }
  return std::nullopt;
}

/// Complete scan for x y - z^2 = n in symmetric coordinates (x, y, z).
inline std::optional<std::vector<long long>> solve_det2(const Int& n, const AxisSets& axes,
                                                        long long radius) {
  Int magnitude = boost::multiprecision::abs(n) + Int(radius) * Int(radius);
  if (magnitude >= Int(1) << 62)
    throw Error("determinant target out of the long long search range");
  long long nl = static_cast<long long>(n);
  for (long long z : axes.sorted[2]) {
    long long m = nl + z * z;
    for (long long x : axes.sorted[0]) {
      if (x == 0) {
        if (m == 0 && !axes.sorted[1].empty())
          return std::vector<long long>{0, axes.sorted[1].front(), z};
        continue;
      }
      if (m % x != 0) continue;
      long long y = m / x;
      if (axes.sets[1].count(y)) return std::vector<long long>{x, y, z};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// For each target value y, expand the window (radii 2^i r0) until some
/// v in E with Psi(v) = y is found or the budget is exhausted; unresolved
/// targets are flagged, never claimed falsified. For the shipped forms on
/// product Bohr sets a complete per-axis scan replaces the generic window
/// enumeration.
inline SurjectivityReport bohr_surjectivity_check(const InvariantMap& psi,
                                                  const BohrSetSpec& spec,
                                                  const std::vector<Int>& targets,
                                                  const AdaptiveBudget& budget = {},
                                                  Int spectrum_bound = Int(50)) {
  if (!spec.contains_zero()) throw Error("surjectivity check requires a Bohr_o set");
  SurjectivityReport report;
  report.spectrum_trivial = rational_spectrum_check(spec.system, spectrum_bound).trivial;

  for (const auto& t : targets) report.entries.push_back({t, false, {}, 0});

  BohrPointSet e_set(spec);
  std::size_t n = psi.domain_rank();
  if (e_set.rank() != n) throw Error("set rank does not match the invariant map");

  const auto* qf = std::get_if<InvariantMap::QuadraticForm>(&psi.variant());
  bool fast_q = qf && qf->mu.size() == 2 && qf->lambda.size() == 1;
  const auto* dt = std::get_if<InvariantMap::Determinant>(&psi.variant());
  bool fast_det = dt && dt->d == 2;

  long long radius = budget.initial_radius;
  for (int round = 0; round <= budget.doublings; ++round, radius *= 2) {
    report.final_window = radius;
    std::size_t unresolved = 0;
    for (const auto& e : report.entries) unresolved += !e.resolved;
    if (unresolved == 0) break;

    if (fast_q || fast_det) {
      auto axes = detail::AxisSets::build(e_set, radius);
      if (axes) {
        for (auto& entry : report.entries) {
          if (entry.resolved) continue;
          std::optional<std::vector<long long>> w =
              fast_q ? detail::solve_quadratic_p2q1(*qf, entry.target, *axes, radius)
                     : detail::solve_det2(entry.target, *axes, radius);
          if (w) {
            PsiValue check = psi.eval(detail::to_int_vec(*w));
            if (!(check == PsiValue{entry.target})) throw Error("witness verification failed");
            if (!e_set.contains(*w)) throw Error("witness membership verification failed");
            entry.resolved = true;
            entry.witness = *w;
            entry.window_used = radius;
          }
        }
        continue;
      }
    }
    // Generic path: one pass over the window marks every remaining target.
    Window w(n, {-radius, radius});
    std::map<PsiValue, std::vector<long long>> first_hit;
    for (const auto& p : e_set.members(w)) {
      PsiValue v = psi.eval(detail::to_int_vec(p));
      first_hit.emplace(v, p);
    }
    for (auto& entry : report.entries) {
      if (entry.resolved) continue;
      auto it = first_hit.find(PsiValue{entry.target});
      if (it != first_hit.end()) {
        entry.resolved = true;
        entry.witness = it->second;
        entry.window_used = radius;
      }
    }
  }
  for (const auto& e : report.entries) report.all_resolved &= e.resolved;
  return report;
}

struct DifferenceEntry {
  std::vector<long long> a;
  PsiValue target;
  bool covered = false;
  std::vector<long long> e1, e2;  // Psi(e1 - e2) = Psi(k a)
};

struct DifferenceReport {
  long long k = 1;
  std::vector<DifferenceEntry> entries;
  bool all_covered = true;
};

/// Certifies Psi(k a) in Psi(E - E) for each supplied a, scanning pairs of
/// window members with early exit; unresolved values are flagged.
inline DifferenceReport difference_pattern_check(const InvariantMap& psi,
                                                 const PointSet& e_set, long long k,
                                                 const std::vector<std::vector<long long>>& a_list,
                                                 const Window& search_window) {
  std::size_t n = psi.domain_rank();
  DifferenceReport report;
  report.k = k;
  std::vector<std::vector<long long>> members = e_set.members(search_window);
  for (const auto& a : a_list) {
    if (a.size() != n) throw Error("difference check rank mismatch");
    std::vector<Int> ka(n);
    for (std::size_t i = 0; i < n; ++i) ka[i] = Int(k) * a[i];
    DifferenceEntry entry;
    entry.a = a;
    entry.target = psi.eval(ka);
    for (std::size_t i = 0; i < members.size() && !entry.covered; ++i)
      for (std::size_t j = 0; j < members.size(); ++j) {
        PsiValue v = psi.eval(detail::to_int_vec(detail::sub(members[i], members[j])));
        if (v == entry.target) {
          entry.covered = true;
          entry.e1 = members[i];
          entry.e2 = members[j];
          break;
        }
      }
    report.all_covered &= entry.covered;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

struct GaloisTranslateReport {
  bool success = false;
  std::vector<long long> b;
  std::map<GaloisLabel, std::vector<long long>> witnesses;  // label -> e
  std::vector<GaloisLabel> targets;
  std::size_t best_found = 0;
};

/// Searches b in E cap b_window such that every realizable Galois label
/// occurs among galois(charpoly(e - b)) for e in E cap e_window.
inline GaloisTranslateReport galois_translate_check(std::size_t d, const PointSet& e_set,
                                                    const Window& b_window,
                                                    const Window& e_window) {
  InvariantMap psi = InvariantMap::galois_map(d);
  if (e_set.rank() != psi.domain_rank()) throw Error("set rank mismatch for galois check");
  GaloisTranslateReport report;
  report.targets = realizable_labels(d);

  std::vector<std::vector<long long>> b_candidates = e_set.members(b_window);
  std::vector<std::vector<long long>> e_members = e_set.members(e_window);

  for (const auto& b : b_candidates) {
    std::map<GaloisLabel, std::vector<long long>> found;
    for (const auto& e : e_members) {
      PsiValue v = psi.eval(detail::to_int_vec(detail::sub(e, b)));
      const GaloisLabel& label = std::get<GaloisLabel>(v.v);
      found.emplace(label, e);
      if (found.size() == report.targets.size()) break;
    }
    std::size_t hits = 0;
    for (const auto& t : report.targets) hits += found.count(t);
    if (hits > report.best_found) report.best_found = hits;
    if (hits == report.targets.size()) {
      report.success = true;
      report.b = b;
      for (const auto& t : report.targets) report.witnesses[t] = found[t];
      return report;
    }
  }
  return report;
}

}  // namespace twistlab
