#pragma once

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "twistlab/torus_point.hpp"
#include "twistlab/walk.hpp"

namespace twistlab {

/// A homomorphism tau : Z^N -> T^M given by its M x N coordinate matrix
/// (columns are the images tau(e_j)); the model Kronecker system.
class KroneckerSystem {
 public:
  KroneckerSystem(std::size_t torus_dim, std::size_t domain_rank,
                  std::vector<std::vector<TorusScalar>> tau)
      : m_(torus_dim), n_(domain_rank), tau_(std::move(tau)) {
    if (tau_.size() != m_) throw Error("tau row count mismatch");
    for (const auto& row : tau_)
      if (row.size() != n_) throw Error("tau column count mismatch");
  }

  std::size_t torus_dim() const { return m_; }
  std::size_t domain_rank() const { return n_; }
  const TorusScalar& tau_entry(std::size_t i, std::size_t j) const { return tau_[i][j]; }

  /// tau(a) in T^M.
  TorusPoint apply(const std::vector<Int>& a) const {
    if (a.size() != n_) throw Error("tau argument dimension mismatch");
    std::vector<TorusScalar> out;
    out.reserve(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      TorusScalar acc;
      for (std::size_t j = 0; j < n_; ++j)
        if (a[j] != 0) acc = acc + tau_[i][j].scaled(Rat(a[j]));
      out.push_back(acc.reduced_mod1());
    }
    return TorusPoint(std::move(out));
  }

  /// The character of Z^N induced by the torus character eta in Z^M:
  /// x_eta = tau^t eta mod 1, so that eta(tau(a)) = e^{2 pi i <x_eta, a>}.
  TorusPoint pullback_character(const std::vector<Int>& eta) const {
    if (eta.size() != m_) throw Error("character frequency dimension mismatch");
    std::vector<TorusScalar> out;
    out.reserve(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      TorusScalar acc;
      for (std::size_t i = 0; i < m_; ++i)
        if (eta[i] != 0) acc = acc + tau_[i][j].scaled(Rat(eta[i]));
      out.push_back(acc.reduced_mod1());
    }
    return TorusPoint(std::move(out));
  }

  /// Block-diagonal direct sum (product system).
  static KroneckerSystem product(const std::vector<KroneckerSystem>& parts) {
    if (parts.empty()) throw Error("product of zero systems");
    std::size_t m = 0, n = 0;
    for (const auto& p : parts) {
      m += p.torus_dim();
      n += p.domain_rank();
    }
    std::vector<std::vector<TorusScalar>> tau(m, std::vector<TorusScalar>(n));
    std::size_t ro = 0, co = 0;
    for (const auto& p : parts) {
      for (std::size_t i = 0; i < p.torus_dim(); ++i)
        for (std::size_t j = 0; j < p.domain_rank(); ++j)
          tau[ro + i][co + j] = p.tau_entry(i, j);
      ro += p.torus_dim();
      co += p.domain_rank();
    }
    return KroneckerSystem(m, n, std::move(tau));
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<TorusScalar>> tau_;
};

struct SpectrumWitness {
  std::vector<Int> eta;  // nonzero frequency with m * (tau^t eta) = 0 mod 1
  Int m;
};

struct SpectrumCheck {
  bool trivial = false;
  std::optional<SpectrumWitness> witness;
  Int bound;  // the H that was scanned
};

namespace detail {

/// Tests a single frequency vector; returns the order m when tau^t eta is
/// rational with lcm of denominators <= H.
inline std::optional<Int> spectrum_witness_order(const KroneckerSystem& system,
                                                 const std::vector<Int>& eta, const Int& H) {
  TorusPoint x = system.pullback_character(eta);
  Int lcm = 1;
  for (std::size_t j = 0; j < x.dim(); ++j) {
    switch (x[j].rationality()) {
      case Rationality::Rational:
        lcm = lcm_int(lcm, denominator(x[j].as_rational()));
        break;
      case Rationality::Irrational:
        return std::nullopt;
      case Rationality::Unknown: {
        std::string s;
        for (const auto& e : eta) s += e.str() + " ";
        throw PrecisionError("rationality of tau^t eta undecidable for eta = " + s);
      }
    }
  }
  if (lcm <= H) return lcm;
  return std::nullopt;
}

}  // namespace detail

/// Scans frequencies eta != 0 with |eta|_inf <= H for a positive integer
/// m <= H with m (tau^t eta) = 0 mod 1. Trivial means no witness up to H:
/// heuristic evidence that the image of tau is dense in a connected group.
/// Exact for the shipped certified constants; combinations of unverified
/// declared constants raise PrecisionError naming the offending entries.
///
/// The scan factorizes over the connected components of the nonzero pattern
/// of tau (a witness supported on several independent blocks restricts to a
/// witness on one of them), so product systems cost the sum, not the
/// product, of their component scans.
inline SpectrumCheck rational_spectrum_check(const KroneckerSystem& system, const Int& H) {
  if (H < 1) throw Error("rational_spectrum_check needs H >= 1");
  std::size_t m = system.torus_dim(), n = system.domain_rank();
  SpectrumCheck out;
  out.bound = H;

  // Union-find over torus rows, joined through shared nonzero columns.
  std::vector<std::size_t> parent(m);
  for (std::size_t i = 0; i < m; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t first = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (system.tau_entry(i, j).is_symbolically_zero()) continue;
      if (first == m)
        first = i;
      else
        parent[find(i)] = find(first);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < m; ++i) components[find(i)].push_back(i);

  long long h = static_cast<long long>(H);
  for (const auto& [root, rows] : components) {
    // A row of zeros is itself a rational character: eta = e_row, m = 1.
    bool zero_row = true;
    for (std::size_t j = 0; j < n && zero_row; ++j)
      zero_row &= system.tau_entry(rows[0], j).is_symbolically_zero();
    if (rows.size() == 1 && zero_row) {
      std::vector<Int> eta(m, Int(0));
      eta[rows[0]] = 1;
      out.witness = SpectrumWitness{std::move(eta), Int(1)};
      return out;
    }
    std::vector<long long> sub(rows.size(), -h);
    while (true) {
      bool all_zero = true;
      for (auto e : sub) all_zero &= (e == 0);
      if (!all_zero) {
        std::vector<Int> eta(m, Int(0));
        for (std::size_t k = 0; k < rows.size(); ++k) eta[rows[k]] = sub[k];
        if (auto order = detail::spectrum_witness_order(system, eta, H)) {
          out.witness = SpectrumWitness{std::move(eta), *order};
          return out;
        }
      }
      std::size_t i = rows.size();
      bool done = false;
      while (i > 0) {
        --i;
        if (sub[i] < h) {
          ++sub[i];
          for (std::size_t k = i + 1; k < rows.size(); ++k) sub[k] = -h;
          break;
        }
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  out.trivial = true;
  return out;
}

/// Finite trigonometric polynomial on T^M; the zero-frequency coefficient
/// is the mean.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(std::size_t torus_dim) : m_(torus_dim) {}

  std::size_t torus_dim() const { return m_; }

  void set_term(std::vector<long long> eta, Complex coeff) {
    if (eta.size() != m_) throw Error("frequency dimension mismatch");
    if (coeff == Complex{0, 0})
      terms_.erase(eta);
    else
      terms_[std::move(eta)] = coeff;
  }

  Complex term(const std::vector<long long>& eta) const {
    auto it = terms_.find(eta);
    return it == terms_.end() ? Complex{0, 0} : it->second;
  }

  Complex mean() const { return term(std::vector<long long>(m_, 0)); }
  const std::map<std::vector<long long>, Complex>& terms() const { return terms_; }

  TrigPolynomial operator+(const TrigPolynomial& o) const {
    if (m_ != o.m_) throw Error("trig polynomial dimension mismatch");
    TrigPolynomial r(*this);
    for (const auto& [eta, c] : o.terms_) r.set_term(eta, r.term(eta) + c);
    return r;
  }

 private:
  std::size_t m_;
  std::map<std::vector<long long>, Complex> terms_;
};

/// The limit operator Q_a on the Kronecker model: each term with frequency
/// eta lives on the character line of x_eta = tau^t eta, where Q_a acts by
/// the Benoist-Quint scalar. Irrational x_eta kills the term; rational
/// x_eta multiplies the coefficient by the finite orbit average.
inline TrigPolynomial qa_kronecker(const TrigPolynomial& f, const std::vector<Int>& a,
                                   const KroneckerSystem& system,
                                   const GeneratorSystem& gens, const WalkMeasure& mu) {
  (void)mu;  // the limit does not depend on the weights, only on the group
  bool a_zero = true;
  for (const auto& x : a) a_zero &= (x == 0);
  if (a_zero) throw Error("qa_kronecker requires a != 0");
  if (a.size() != system.domain_rank()) throw Error("qa argument dimension mismatch");

  TrigPolynomial out(f.torus_dim());
  std::vector<std::string> undecidable;
  for (const auto& [eta, coeff] : f.terms()) {
    std::vector<Int> eta_int(eta.begin(), eta.end());
    TorusPoint x = system.pullback_character(eta_int);
    Rationality r = x.rationality();
    if (r == Rationality::Unknown) {
      std::string s;
      for (auto e : eta) s += std::to_string(e) + " ";
      undecidable.push_back(s);
      continue;
    }
    BqPrediction p = bq_limit_predict(x, a, gens);
    if (p.zero) continue;
    out.set_term(eta, coeff * p.value);
  }
  if (!undecidable.empty()) {
    std::string msg = "qa_kronecker: rationality undecidable for frequencies:";
    for (const auto& s : undecidable) msg += " [" + s + "]";
    throw PrecisionError(msg);
  }
  return out;
}

}  // namespace twistlab
