#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "twistlab/group.hpp"
#include "twistlab/orbit.hpp"
#include "twistlab/rng.hpp"
#include "twistlab/torus_point.hpp"

namespace twistlab {

using Complex = std::complex<double>;

inline Complex unit_phase(double frac_of_turn) {
  double t = 2.0 * std::numbers::pi * frac_of_turn;
  return {std::cos(t), std::sin(t)};
}

/// Finitely supported probability measure on the generators; weights are
/// exact positive rationals summing to exactly 1, with inverse-closed
/// support.
class WalkMeasure {
 public:
  WalkMeasure(const GeneratorSystem& gens, std::map<std::string, Rat> weights)
      : weights_(std::move(weights)) {
    Rat total = 0;
    for (const auto& [label, w] : weights_) {
      gens.matrix(label);  // validates label
      if (w <= 0) throw Error("walk weight for " + label + " must be positive");
      if (weights_.find(gens.inverse_label(label)) == weights_.end())
        throw Error("walk support is not inverse-closed at " + label);
      total += w;
    }
    if (total != 1) throw Error("walk weights must sum to exactly 1");
  }

  static WalkMeasure uniform(const GeneratorSystem& gens) {
    std::map<std::string, Rat> w;
    for (const auto& label : gens.labels())
      w[label] = Rat(1, static_cast<long long>(gens.size()));
    return WalkMeasure(gens, std::move(w));
  }

  const std::map<std::string, Rat>& weights() const { return weights_; }

 private:
  std::map<std::string, Rat> weights_;
};

struct ConvolutionOptions {
  Rat prune_threshold = Rat(1, 1'000'000'000);  // atoms below move to dropped mass
  std::size_t atom_cap = 1'000'000;
};

/// Sparse exact representation of the convolution power mu^{*j}.
struct ConvolutionState {
  std::size_t j = 0;
  std::unordered_map<LatticeMatrix, Rat, LatticeMatrixHash> atoms;
  Rat dropped_mass = 0;

  static ConvolutionState initial(std::size_t dim) {
    ConvolutionState s;
    s.atoms.emplace(LatticeMatrix::identity(dim), Rat(1));
    return s;
  }

  Rat total_mass() const {
    Rat t = dropped_mass;
    for (const auto& [m, w] : atoms) t += w;
    return t;
  }
};

/// One exact convolution step: state at j becomes state at j+1; atoms below
/// the prune threshold are moved into dropped_mass (a rigorous error bound,
/// never silently discarded).
inline ConvolutionState convolve_step(const ConvolutionState& state, const WalkMeasure& mu,
                                      const GeneratorSystem& gens,
                                      const ConvolutionOptions& opts = {}) {
  ConvolutionState next;
  next.j = state.j + 1;
  next.dropped_mass = state.dropped_mass;
  next.atoms.reserve(state.atoms.size() * 2);
  for (const auto& [label, w] : mu.weights()) {
    const LatticeMatrix& g = gens.matrix(label);
    for (const auto& [atom, mass] : state.atoms) {
      next.atoms[atom * g] += mass * w;
      if (next.atoms.size() > opts.atom_cap)
        throw CapExceeded("convolution support exceeded " + std::to_string(opts.atom_cap) +
                          " atoms at step " + std::to_string(next.j) +
                          "; switch to Monte Carlo mode or raise the prune threshold");
    }
  }
  if (opts.prune_threshold > 0) {
    for (auto it = next.atoms.begin(); it != next.atoms.end();) {
      if (it->second < opts.prune_threshold) {
        next.dropped_mass += it->second;
        it = next.atoms.erase(it);
      } else {
        ++it;
      }
    }
  }
  return next;
}

enum class CesaroMode { Exact, MonteCarlo };

struct CesaroEstimate {
  std::size_t n = 0;
  Complex value{0, 0};
  CesaroMode mode = CesaroMode::Exact;
  // Exact mode: rigorous bound from accumulated dropped mass.
  Rat dropped_mass_bound = 0;
  // Monte Carlo mode.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double stderr_ = 0.0;
};

namespace detail {

inline double phase_of(const TorusPoint& chi, const std::vector<Int>& v) {
  TorusScalar s = chi.pair(v);
  if (s.rationality() == Rationality::Rational) return rat_double(s.as_rational());
  return s.eval().to_double();
}

}  // namespace detail

/// S_n(chi, a) = (1/n) sum_{j<=n} sum_gamma mu^{*j}(gamma) chi(gamma a),
/// computed from the exact convolution powers. The returned bound is the
/// total dropped-mass error accumulated over the n steps.
inline CesaroEstimate exact_cesaro(const TorusPoint& chi, const std::vector<Int>& a,
                                   const WalkMeasure& mu, const GeneratorSystem& gens,
                                   std::size_t n, const ConvolutionOptions& opts = {}) {
  if (n == 0) throw Error("cesaro average needs n >= 1");
  if (a.size() != gens.dim()) throw Error("pattern point dimension mismatch");
  bool rational = chi.rationality() == Rationality::Rational;
  std::vector<Rat> chi_rat;
  if (rational) chi_rat = chi.as_rationals();

  ConvolutionState state = ConvolutionState::initial(gens.dim());
  Complex sum{0, 0};
  Rat bound = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    state = convolve_step(state, mu, gens, opts);
    Complex inner{0, 0};
    for (const auto& [atom, mass] : state.atoms) {
      std::vector<Int> v = atom.apply(a);
      double ph;
      if (rational) {
        Rat p = 0;
        for (std::size_t i = 0; i < v.size(); ++i) p += chi_rat[i] * Rat(v[i]);
        ph = rat_double(mod1(p));
      } else {
        ph = detail::phase_of(chi, v);
      }
      inner += mass == 1 ? unit_phase(ph) : rat_double(mass) * unit_phase(ph);
    }
    sum += inner;
    bound += state.dropped_mass;
  }
  CesaroEstimate est;
  est.n = n;
  est.value = sum / static_cast<double>(n);
  est.mode = CesaroMode::Exact;
  est.dropped_mass_bound = bound / Rat(static_cast<long long>(n));
  return est;
}

/// Unbiased Monte Carlo estimator of the same average: per sample draw one
/// path gamma_1..gamma_n and average chi((gamma_1...gamma_j) a) over j.
/// Deterministic for fixed seed, independent of worker partitioning.
inline CesaroEstimate mc_cesaro(const TorusPoint& chi, const std::vector<Int>& a,
                                const WalkMeasure& mu, const GeneratorSystem& gens,
                                std::size_t n, std::size_t samples, std::uint64_t seed,
                                unsigned workers = 1) {
  if (n == 0 || samples == 0) throw Error("mc_cesaro needs n >= 1 and samples >= 1");
  if (a.size() != gens.dim()) throw Error("pattern point dimension mismatch");
  std::size_t dim = gens.dim();

  // Sampling tables in a fixed order.
  std::vector<const LatticeMatrix*> mats;
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& [label, w] : mu.weights()) {
    mats.push_back(&gens.matrix(label));
    acc += rat_double(w);
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;

  // chi as tracked 256-bit coordinates; the path is followed through the
  // covector x_j = chi^t M_j, reduced mod 1 each step so magnitudes stay
  // bounded and the tracked error grows only linearly in n.
  std::vector<TrackedReal> chi0;
  for (std::size_t i = 0; i < dim; ++i) chi0.push_back(chi[i].eval());

  std::vector<Complex> means(samples);
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    std::vector<TrackedReal> x(dim), y(dim);
    for (std::size_t s = lo; s < hi; ++s) {
      Rng rng = Rng::substream(seed, s);
      x = chi0;
      Complex path_sum{0, 0};
      for (std::size_t j = 0; j < n; ++j) {
        double u = rng.unit();
        std::size_t pick = 0;
        while (pick + 1 < cdf.size() && u >= cdf[pick]) ++pick;
        const LatticeMatrix& g = *mats[pick];
        for (std::size_t col = 0; col < dim; ++col) {
          TrackedReal t{Real(0), 0.0};
          for (std::size_t row = 0; row < dim; ++row) {
            const Int& e = g.at(row, col);
            if (e == 0) continue;
            TrackedReal term = x[row];
            term.value *= Real(e);
            term.err *= std::abs(static_cast<double>(e));
            t = t + term;
          }
          // mod 1: phases are periodic, so wrap ambiguity is harmless
          t.value -= floor(t.value);
          y[col] = t;
        }
        std::swap(x, y);
        double ph = 0;
        for (std::size_t i = 0; i < dim; ++i)
          ph += static_cast<double>(x[i].value) * static_cast<double>(a[i]);
        path_sum += unit_phase(ph - std::floor(ph));
      }
      means[s] = path_sum / static_cast<double>(n);
    }
  };

  if (workers <= 1 || samples < 2 * workers) {
    run_range(0, samples);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t lo = w * chunk, hi = std::min(samples, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  Complex mean{0, 0};
  for (const auto& m : means) mean += m;
  mean /= static_cast<double>(samples);
  double var = 0;
  for (const auto& m : means) var += std::norm(m - mean);
  if (samples > 1) var /= static_cast<double>(samples - 1);

  CesaroEstimate est;
  est.n = n;
  est.value = mean;
  est.mode = CesaroMode::MonteCarlo;
  est.samples = samples;
  est.seed = seed;
  est.stderr_ = std::sqrt(var / static_cast<double>(samples));
  return est;
}

/// The Benoist-Quint dichotomy for the limit of S_n(chi, a): zero for
/// characters with infinite orbit (irrational), and the finite orbit
/// average for rational ones.
struct BqPrediction {
  bool zero = false;
  std::size_t index = 0;             // [Gamma : Gamma_chi] when finite
  Complex value{0, 0};               // limit value
  std::map<Rat, std::size_t> phases; // exact phase multiset over the orbit
  std::optional<Rat> exact_real;     // exact value when all phases are 0 or 1/2

  static BqPrediction zero_prediction() {
    BqPrediction p;
    p.zero = true;
    return p;
  }
};

inline BqPrediction bq_limit_predict(const TorusPoint& chi, const std::vector<Int>& a,
                                     const GeneratorSystem& gens,
                                     std::size_t orbit_cap = 100'000) {
  switch (chi.rationality()) {
    case Rationality::Unknown:
      throw Error("character rationality undecidable: tag the coordinates explicitly");
    case Rationality::Irrational:
      return BqPrediction::zero_prediction();
    case Rationality::Rational:
      break;
  }
  OrbitTable orbit = character_stabilizer_index(gens, chi, orbit_cap);
  BqPrediction p;
  p.index = orbit.index;
  Complex sum{0, 0};
  bool half_integer = true;
  for (const auto& pt : orbit.points) {
    Rat ph = mod1(pt.pair(a).as_rational());
    ++p.phases[ph];
    sum += unit_phase(rat_double(ph));
    half_integer &= (ph == 0 || ph == Rat(1, 2));
  }
  p.value = sum / static_cast<double>(orbit.index);
  if (half_integer) {
    Rat num = 0;
    for (const auto& [ph, count] : p.phases)
      num += (ph == 0 ? Rat(static_cast<long long>(count))
                      : -Rat(static_cast<long long>(count)));
    p.exact_real = num / Rat(static_cast<long long>(orbit.index));
  }
  return p;
}

/// Smallest k with chi(k a) = 1 for every chi in the set and all a:
/// the lcm of all coordinate denominators. Empty set gives k = 1.
inline Int choose_k(const std::vector<std::vector<Rat>>& rational_characters) {
  Int k = 1;
  for (const auto& chi : rational_characters)
    for (const auto& c : chi) k = lcm_int(k, denominator(mod1(c)));
  return k == 0 ? Int(1) : k;
}

}  // namespace twistlab
