#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "twistlab/bohr.hpp"
#include "twistlab/rng.hpp"

namespace twistlab {

/// A subset of Z^N seen through finite windows: the common interface for
/// density estimation and witness searches. Implementations must be pure
/// (same point, same answer).
class PointSet {
 public:
  virtual ~PointSet() = default;
  virtual std::size_t rank() const = 0;
  virtual bool contains(const std::vector<long long>& p) const = 0;
  virtual std::string describe() const = 0;

  /// Lexicographically sorted members of an inclusive window.
  std::vector<std::vector<long long>> members(const Window& w) const {
    std::vector<std::vector<long long>> out;
    detail::scan_window(w, [&](const std::vector<long long>& p) {
      if (contains(p)) out.push_back(p);
    });
    return out;
  }

  /// If axis `i` of the set factors as a 1-dimensional set (product
  /// structure), returns that slice for fast per-axis enumeration.
  virtual std::shared_ptr<const PointSet> axis_slice(std::size_t) const { return nullptr; }
};

/// Bohr set membership; Boundary points count as Out (conservative, so
/// claimed witnesses stay valid under refinement of the precision).
class BohrPointSet : public PointSet {
 public:
  explicit BohrPointSet(BohrSetSpec spec) : spec_(std::move(spec)) {}

  std::size_t rank() const override { return spec_.domain_rank(); }
  bool contains(const std::vector<long long>& p) const override {
    return member(spec_, p).is_in();
  }
  std::string describe() const override {
    return "bohr(dim=" + std::to_string(spec_.domain_rank()) + ")";
  }
  const BohrSetSpec& spec() const { return spec_; }

  std::shared_ptr<const PointSet> axis_slice(std::size_t i) const override {
    // Factors only when the system is block-diagonal with 1x1 blocks.
    const KroneckerSystem& sys = spec_.system;
    if (sys.torus_dim() != sys.domain_rank()) return nullptr;
    for (std::size_t r = 0; r < sys.torus_dim(); ++r)
      for (std::size_t c = 0; c < sys.domain_rank(); ++c)
        if (r != c && !sys.tau_entry(r, c).is_symbolically_zero()) return nullptr;
    KroneckerSystem axis(1, 1, {{sys.tau_entry(i, i)}});
    return std::make_shared<BohrPointSet>(BohrSetSpec(std::move(axis), {spec_.arcs[i]}));
  }

 private:
  BohrSetSpec spec_;
};

class ExplicitPointSet : public PointSet {
 public:
  ExplicitPointSet(std::size_t rank, std::vector<std::vector<long long>> points)
      : rank_(rank), points_(points.begin(), points.end()) {}

  std::size_t rank() const override { return rank_; }
  bool contains(const std::vector<long long>& p) const override {
    return points_.count(p) > 0;
  }
  std::string describe() const override {
    return "explicit(" + std::to_string(points_.size()) + " points)";
  }

 private:
  std::size_t rank_;
  std::set<std::vector<long long>> points_;
};

/// All points with every coordinate divisible by m (e.g. 2Z in Z).
class ModularPointSet : public PointSet {
 public:
  ModularPointSet(std::size_t rank, long long modulus) : rank_(rank), m_(modulus) {
    if (m_ <= 0) throw Error("modulus must be positive");
  }
  std::size_t rank() const override { return rank_; }
  bool contains(const std::vector<long long>& p) const override {
    for (auto x : p)
      if (((x % m_) + m_) % m_ != 0) return false;
    return true;
  }
  std::string describe() const override {
    return std::to_string(m_) + "Z^" + std::to_string(rank_);
  }

 private:
  std::size_t rank_;
  long long m_;
};

/// Seeded pseudorandom set of density p: membership decided by a hash of
/// (seed, point), so the set is deterministic and needs no storage.
class BernoulliPointSet : public PointSet {
 public:
  BernoulliPointSet(std::size_t rank, const Rat& p, std::uint64_t seed)
      : rank_(rank), seed_(seed) {
    if (p <= 0 || p > 1) throw Error("Bernoulli density must lie in (0, 1]");
    threshold_ = static_cast<std::uint64_t>(rat_double(p) * 18446744073709551615.0);
    density_ = p;
  }

  std::size_t rank() const override { return rank_; }
  bool contains(const std::vector<long long>& p) const override {
    return point_hash(seed_, p.data(), p.size()) <= threshold_;
  }
  std::string describe() const override {
    return "bernoulli(p=" + rat_string(density_) + ", seed=" + std::to_string(seed_) + ")";
  }
  const Rat& density() const { return density_; }

 private:
  std::size_t rank_;
  std::uint64_t seed_;
  std::uint64_t threshold_;
  Rat density_;
};

struct DensityReport {
  long long n = 0;
  std::vector<long long> best_offset;
  Int count = 0;              // |E cap (F_n + best_offset)|
  Rat ratio = 0;              // count / |F_n|, exact
  std::optional<Rat> limit_claim;  // Haar measure of the box for Bohr sources
};

/// Window ratio |E cap (F_n + offset)| / |F_n| with F_n = [-n, n]^N,
/// maximized over the supplied offsets. For Bohr sources the report carries
/// the Haar measure of the box as the claimed limit.
inline DensityReport banach_density_estimate(const PointSet& set, long long n,
                                             const std::vector<std::vector<long long>>& offsets) {
  if (n <= 0) throw Error("window radius must be positive");
  std::size_t N = set.rank();
  std::vector<std::vector<long long>> offs = offsets;
  if (offs.empty()) offs.push_back(std::vector<long long>(N, 0));

  DensityReport report;
  report.n = n;
  Int fn_size = 1;
  for (std::size_t i = 0; i < N; ++i) fn_size *= Int(2 * n + 1);

  for (const auto& off : offs) {
    if (off.size() != N) throw Error("offset rank mismatch");
    Window w(N);
    for (std::size_t i = 0; i < N; ++i) w[i] = {off[i] - n, off[i] + n};
    Int count = 0;
    detail::scan_window(w, [&](const std::vector<long long>& p) {
      if (set.contains(p)) ++count;
    });
    Rat ratio = Rat(count, fn_size);
    if (report.best_offset.empty() || ratio > report.ratio) {
      report.best_offset = off;
      report.count = count;
      report.ratio = ratio;
    }
  }
  if (const auto* bohr = dynamic_cast<const BohrPointSet*>(&set))
    report.limit_claim = bohr->spec().box_measure();
  return report;
}

}  // namespace twistlab
