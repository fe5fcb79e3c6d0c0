#pragma once

#include <variant>
#include <vector>

#include "twistlab/galois.hpp"
#include "twistlab/group.hpp"
#include "twistlab/representation.hpp"
#include "twistlab/rng.hpp"

namespace twistlab {

/// Value of an invariant map: an integer (forms, determinants), the monic
/// coefficient vector of a characteristic polynomial, or a Galois label.
struct PsiValue {
  std::variant<Int, std::vector<Int>, GaloisLabel> v;

  bool operator==(const PsiValue& o) const { return v == o.v; }
  bool operator<(const PsiValue& o) const { return v < o.v; }

  std::string str() const {
    if (auto* n = std::get_if<Int>(&v)) return n->str();
    if (auto* coeffs = std::get_if<std::vector<Int>>(&v)) {
      std::string s = "[";
      for (std::size_t i = 0; i < coeffs->size(); ++i)
        s += (i ? " " : "") + (*coeffs)[i].str();
      return s + "]";
    }
    return std::get<GaloisLabel>(v).str();
  }
};

/// Characteristic polynomial det(tI - a) of an exact integer matrix, by
/// Faddeev-LeVerrier; returns [1, c_{d-1}, ..., c_0].
inline std::vector<Int> char_poly(const LatticeMatrix& a) {
  std::size_t d = a.dim();
  std::vector<Rat> c(d + 1, Rat(0));
  c[0] = 1;
  LatticeMatrix m(d);  // M_0 = 0
  std::vector<std::vector<Rat>> mk(d, std::vector<Rat>(d, Rat(0)));
  std::vector<std::vector<Rat>> next(d, std::vector<Rat>(d, Rat(0)));
  for (std::size_t k = 1; k <= d; ++k) {
    // M_k = a M_{k-1} + c_{k-1} I ; c_k = -tr(a M_k) / k
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rat s = (i == j) ? c[k - 1] : Rat(0);
        for (std::size_t l = 0; l < d; ++l)
          if (a.at(i, l) != 0) s += Rat(a.at(i, l)) * mk[l][j];
        next[i][j] = s;
      }
    std::swap(mk, next);
    Rat tr = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l)
        if (a.at(i, l) != 0) tr += Rat(a.at(i, l)) * mk[l][i];
    c[k] = -tr / Rat(static_cast<long long>(k));
  }
  std::vector<Int> out;
  out.reserve(d + 1);
  for (const auto& x : c) {
    if (denominator(x) != 1) throw Error("characteristic polynomial not integral");
    out.push_back(numerator(x));
  }
  return out;
}

/// The Gamma-invariant maps of the pattern theorems: indefinite diagonal
/// quadratic forms, characteristic polynomials (and their Galois labels) on
/// traceless coordinates, and determinants on symmetric coordinates.
class InvariantMap {
 public:
  struct QuadraticForm {
    std::vector<Int> mu;      // positive coefficients of the x_i^2
    std::vector<Int> lambda;  // positive coefficients of the -y_j^2
  };
  struct CharPoly {
    std::size_t d;
  };
  struct GaloisMap {
    std::size_t d;  // label of the characteristic polynomial, d <= 3
  };
  struct Determinant {
    std::size_t d;
  };

  using Variant = std::variant<QuadraticForm, CharPoly, GaloisMap, Determinant>;

  explicit InvariantMap(Variant v) : v_(std::move(v)) { validate(); }

  static InvariantMap quadratic_form(std::vector<Int> mu, std::vector<Int> lambda) {
    return InvariantMap(QuadraticForm{std::move(mu), std::move(lambda)});
  }
  static InvariantMap char_poly_map(std::size_t d) { return InvariantMap(CharPoly{d}); }
  static InvariantMap galois_map(std::size_t d) { return InvariantMap(GaloisMap{d}); }
  static InvariantMap determinant(std::size_t d) { return InvariantMap(Determinant{d}); }

  const Variant& variant() const { return v_; }

  /// Rank N of the domain Z^N the map is evaluated on.
  std::size_t domain_rank() const {
    if (auto* q = std::get_if<QuadraticForm>(&v_)) return q->mu.size() + q->lambda.size();
    if (auto* c = std::get_if<CharPoly>(&v_)) return traceless::dim(c->d);
    if (auto* g = std::get_if<GaloisMap>(&v_)) return traceless::dim(g->d);
    return symspace::dim(std::get<Determinant>(v_).d);
  }

  std::string name() const {
    if (std::holds_alternative<QuadraticForm>(v_)) return "quadratic_form";
    if (auto* c = std::get_if<CharPoly>(&v_)) return "charpoly(" + std::to_string(c->d) + ")";
    if (auto* g = std::get_if<GaloisMap>(&v_)) return "galois(" + std::to_string(g->d) + ")";
    return "determinant(" + std::to_string(std::get<Determinant>(v_).d) + ")";
  }

  /// The form diagonal (mu_1..mu_p, -lambda_1..-lambda_q) for QuadraticForm.
  std::vector<Int> form_diagonal() const {
    const auto& q = std::get<QuadraticForm>(v_);
    std::vector<Int> diag;
    for (const auto& m : q.mu) diag.push_back(m);
    for (const auto& l : q.lambda) diag.push_back(-l);
    return diag;
  }

  PsiValue eval(const std::vector<Int>& v) const {
    if (v.size() != domain_rank()) throw Error("psi argument length mismatch");
    if (auto* q = std::get_if<QuadraticForm>(&v_)) {
      Int s = 0;
      std::size_t p = q->mu.size();
      for (std::size_t i = 0; i < p; ++i) s += q->mu[i] * v[i] * v[i];
      for (std::size_t j = 0; j < q->lambda.size(); ++j)
        s -= q->lambda[j] * v[p + j] * v[p + j];
      return {s};
    }
    if (auto* c = std::get_if<CharPoly>(&v_))
      return {char_poly(traceless::from_coords(c->d, v))};
    if (auto* g = std::get_if<GaloisMap>(&v_))
      return {galois_label(char_poly(traceless::from_coords(g->d, v)))};
    const auto& det = std::get<Determinant>(v_);
    return {symspace::from_coords(det.d, v).det()};
  }

  /// The representation this map is invariant under.
  RepresentationSpec paired_representation() const {
    if (std::holds_alternative<QuadraticForm>(v_))
      return RepresentationSpec::form_preserving(form_diagonal());
    if (auto* c = std::get_if<CharPoly>(&v_)) return RepresentationSpec::adjoint(c->d);
    if (auto* g = std::get_if<GaloisMap>(&v_)) return RepresentationSpec::adjoint(g->d);
    return RepresentationSpec::sym_square(std::get<Determinant>(v_).d);
  }

 private:
  void validate() const {
    if (auto* q = std::get_if<QuadraticForm>(&v_)) {
      if (q->mu.empty() || q->lambda.empty())
        throw Error("quadratic form needs p >= 1 and q >= 1");
      for (const auto& x : q->mu)
        if (x <= 0) throw Error("form coefficients must be positive");
      for (const auto& x : q->lambda)
        if (x <= 0) throw Error("form coefficients must be positive");
    } else if (auto* c = std::get_if<CharPoly>(&v_)) {
      if (c->d < 2) throw Error("charpoly needs d >= 2");
    } else if (auto* g = std::get_if<GaloisMap>(&v_)) {
      if (g->d < 2 || g->d > 3) throw Error("galois labels need d in {2, 3}");
    } else if (std::get<Determinant>(v_).d < 2) {
      throw Error("determinant needs d >= 2");
    }
  }

  Variant v_;
};

/// A witness (u, v, w) with u^2 + v^2 - w^2 = n; total on Z: odd n uses the
/// consecutive-squares identity, even n shifts it by one.
inline std::vector<Int> represent_q3(const Int& n) {
  std::vector<Int> t(3);
  if (n % 2 != 0) {
    t[0] = (n + 1) / 2;
    t[1] = 0;
    t[2] = (n - 1) / 2;
  } else {
    t[0] = n / 2;
    t[1] = 1;
    t[2] = boost::multiprecision::abs(n - 2) / 2;
  }
  Int check = t[0] * t[0] + t[1] * t[1] - t[2] * t[2];
  if (check != n) throw Error("represent_q3 self-check failed");
  return t;
}

/// Lift a finite F in Z to F_o in Z^3 with Q(F_o) = F and |F_o| = |F|.
inline std::vector<std::vector<Int>> lift_F(const std::vector<Int>& f) {
  std::vector<std::vector<Int>> out;
  out.reserve(f.size());
  for (const auto& n : f) out.push_back(represent_q3(n));
  return out;
}

struct InvarianceViolation {
  std::vector<Int> vector;
  std::vector<std::string> word;
  PsiValue expected, got;
};

struct InvarianceReport {
  std::size_t samples = 0;
  std::vector<InvarianceViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks Psi(rho(w) v) = Psi(v) exactly for sampled vectors and random
/// generator words; any violation is reported with its witness.
inline InvarianceReport psi_invariance_check(const InvariantMap& psi,
                                             const GeneratorSystem& gens,
                                             const RepresentationSpec& rep,
                                             std::size_t samples, std::uint64_t seed,
                                             std::size_t max_word_len = 6) {
  if (rep.target_dim() != psi.domain_rank())
    throw Error("representation does not act on the domain of this map");
  if (rep.group_dim() != gens.dim())
    throw Error("representation/group dimension mismatch");

  InvarianceReport report;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = Rng::substream(seed, s);
    std::vector<Int> v(psi.domain_rank());
    for (auto& x : v) x = rng.range(-5, 5);
    std::size_t len = static_cast<std::size_t>(rng.range(1, static_cast<long long>(max_word_len)));
    std::vector<std::string> word;
    LatticeMatrix img = LatticeMatrix::identity(rep.target_dim());
    for (std::size_t i = 0; i < len; ++i) {
      const std::string& label =
          gens.labels()[static_cast<std::size_t>(rng.below(gens.size()))];
      word.push_back(label);
      img = img * rep.image(gens.matrix(label));
    }
    PsiValue before = psi.eval(v);
    PsiValue after = psi.eval(img.apply(v));
    if (!(before == after))
      report.violations.push_back({v, word, before, after});
  }
  return report;
}

}  // namespace twistlab
