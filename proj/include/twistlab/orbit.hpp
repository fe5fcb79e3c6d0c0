#pragma once

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twistlab/group.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/representation.hpp"
#include "twistlab/rng.hpp"
#include "twistlab/torus_point.hpp"

namespace twistlab {

struct BallElement {
  LatticeMatrix matrix;
  std::vector<std::string> word;  // a shortest word, BFS-deterministic
};

struct BallResult {
  std::vector<BallElement> elements;  // BFS order, identity first
  bool truncated = false;
  std::size_t cap = 0;

  std::size_t size() const { return elements.size(); }
};

/// All distinct products of at most `length` generators, deduplicated by
/// exact matrix equality. Exceeding `cap` elements stops the expansion and
/// marks the result truncated.
inline BallResult ball(const GeneratorSystem& gens, std::size_t length,
                       std::size_t cap = 2'000'000) {
  BallResult out;
  out.cap = cap;
  std::unordered_set<LatticeMatrix, LatticeMatrixHash> seen;

  LatticeMatrix id = LatticeMatrix::identity(gens.dim());
  out.elements.push_back({id, {}});
  seen.insert(id);

  std::size_t level_begin = 0;
  for (std::size_t L = 1; L <= length && !out.truncated; ++L) {
    std::size_t level_end = out.elements.size();
    for (std::size_t i = level_begin; i < level_end && !out.truncated; ++i) {
      for (const auto& label : gens.labels()) {
        LatticeMatrix next = out.elements[i].matrix * gens.matrix(label);
        if (!seen.insert(next).second) continue;
        std::vector<std::string> w = out.elements[i].word;
        w.push_back(label);
        out.elements.push_back({std::move(next), std::move(w)});
        if (out.elements.size() > cap) {
          out.truncated = true;
          break;
        }
      }
    }
    level_begin = level_end;
  }
  return out;
}

/// Dual action on characters: chi' with chi'(a) = chi(g^-1 a), i.e.
/// x -> (g^-1)^t x mod 1.
inline TorusPoint dual_apply(const LatticeMatrix& g, const TorusPoint& x) {
  if (g.dim() != x.dim()) throw Error("dual_apply dimension mismatch");
  LatticeMatrix git = g.inverse().transposed();
  std::vector<TorusScalar> out;
  out.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    TorusScalar acc;
    for (std::size_t j = 0; j < x.dim(); ++j)
      acc = acc + x[j].scaled(Rat(git.at(i, j)));
    out.push_back(acc.reduced_mod1());
  }
  return TorusPoint(std::move(out));
}

struct OrbitTable {
  std::vector<TorusPoint> points;            // BFS order; points[0] = chi
  std::vector<std::vector<std::string>> words;  // coset representative words
  std::size_t index = 0;                     // orbit size = [Gamma : Gamma_chi]
};

/// BFS over dual_apply images of chi. For rational chi this always closes
/// (the orbit lives in the finite subgroup (1/m)Z^N / Z^N); for irrational
/// chi it cannot close and the cap triggers CapExceeded, which callers may
/// treat as the expected "does not close at cap" finding.
inline OrbitTable character_stabilizer_index(const GeneratorSystem& gens,
                                             const TorusPoint& chi,
                                             std::size_t cap = 100'000) {
  if (chi.dim() != gens.dim()) throw Error("character dimension mismatch");
  // Dual images of each generator, precomputed.
  std::vector<LatticeMatrix> duals;
  for (const auto& label : gens.labels())
    duals.push_back(gens.matrix(label).inverse().transposed());

  OrbitTable table;
  std::unordered_set<std::string> seen;
  table.points.push_back(chi);
  table.words.push_back({});
  seen.insert(chi.key());

  for (std::size_t head = 0; head < table.points.size(); ++head) {
    const TorusPoint base = table.points[head];
    for (std::size_t gi = 0; gi < duals.size(); ++gi) {
      std::vector<TorusScalar> out;
      out.reserve(base.dim());
      for (std::size_t i = 0; i < base.dim(); ++i) {
        TorusScalar acc;
        for (std::size_t j = 0; j < base.dim(); ++j)
          acc = acc + base[j].scaled(Rat(duals[gi].at(i, j)));
        out.push_back(acc.reduced_mod1());
      }
      TorusPoint next(std::move(out));
      if (!seen.insert(next.key()).second) continue;
      std::vector<std::string> w = table.words[head];
      w.push_back(gens.labels()[gi]);
      table.points.push_back(std::move(next));
      table.words.push_back(std::move(w));
      if (table.points.size() > cap)
        throw CapExceeded("character orbit exceeded cap " + std::to_string(cap) +
                          " without closing");
    }
  }
  table.index = table.points.size();
  return table;
}

/// dim R[Gamma]v and a rational basis, by iterating generator images with
/// exact Gaussian elimination until the span stabilizes.
struct SpanClosure {
  std::size_t dimension = 0;
  std::vector<std::vector<Rat>> basis;  // reduced rows
};

inline SpanClosure span_closure(const RepresentationSpec& rep,
                                const GeneratorSystem& gens,
                                const std::vector<Rat>& v) {
  std::size_t n = rep.target_dim();
  if (v.size() != n) throw Error("span_closure vector dimension mismatch");
  bool nonzero = false;
  for (const auto& x : v) nonzero |= (x != 0);
  if (!nonzero) throw Error("span_closure requires a nonzero vector");

  std::vector<LatticeMatrix> images;
  for (const auto& label : gens.labels()) images.push_back(rep.image(gens.matrix(label)));

  // Rows kept in reduced row echelon form so one elimination pass suffices.
  std::vector<std::vector<Rat>> rows;
  std::vector<std::size_t> pivots;
  auto insert = [&](std::vector<Rat> w) -> bool {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rat lead = w[pivots[r]];
      if (lead != 0)
        for (std::size_t j = 0; j < n; ++j) w[j] -= lead * rows[r][j];
    }
    std::size_t p = 0;
    while (p < n && w[p] == 0) ++p;
    if (p == n) return false;
    Rat lead = w[p];
    for (auto& x : w) x /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rat f = rows[r][p];
      if (f != 0)
        for (std::size_t j = 0; j < n; ++j) rows[r][j] -= f * w[j];
    }
    rows.push_back(std::move(w));
    pivots.push_back(p);
    return true;
  };

  insert(v);
  bool grew = true;
  while (grew && rows.size() < n) {
    grew = false;
    std::size_t count = rows.size();
    for (std::size_t r = 0; r < count; ++r) {
      for (const auto& img : images) {
        std::vector<Rat> w(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (img.at(i, j) != 0) w[i] += Rat(img.at(i, j)) * rows[r][j];
        if (insert(std::move(w))) grew = true;
      }
    }
  }
  return {rows.size(), rows};
}

struct IrreducibilityTrial {
  std::vector<Rat> vector;
  std::size_t dimension = 0;
  bool full = false;
};

struct IrreducibilityReport {
  std::size_t target_dim = 0;
  std::vector<IrreducibilityTrial> trials;
  bool all_full = false;  // verdict: certified irreducible on these samples
};

/// Samples pseudorandom nonzero rational vectors and records whether each
/// span closure is full-dimensional. A failed trial is a finding, not an
/// error.
inline IrreducibilityReport irreducibility_certificate(const RepresentationSpec& rep,
                                                       const GeneratorSystem& gens,
                                                       std::size_t trials,
                                                       std::uint64_t seed) {
  if (trials < 1) throw Error("at least one trial required");
  IrreducibilityReport report;
  report.target_dim = rep.target_dim();
  report.all_full = true;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, t);
    std::vector<Rat> v(report.target_dim);
    bool nonzero = false;
    do {
      for (auto& x : v) {
        long long num = rng.range(-9, 9);
        long long den = rng.range(1, 4);
        x = Rat(num, den);
        nonzero |= (num != 0);
      }
    } while (!nonzero);
    SpanClosure sc = span_closure(rep, gens, v);
    bool full = sc.dimension == report.target_dim;
    report.trials.push_back({std::move(v), sc.dimension, full});
    report.all_full &= full;
  }
  return report;
}

}  // namespace twistlab
