#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "twistlab/numeric.hpp"

namespace twistlab {

/// Galois group label of the splitting field of a monic integer polynomial
/// of degree 2 or 3. Reducible polynomials get a structured factorization
/// pattern ("1+1", "1+2", "1+1+1") instead of being rejected.
struct GaloisLabel {
  enum Kind { Reducible, Trivial, C2, C3, S3 } kind = Trivial;
  std::string pattern;  // degrees of irreducible factors, for Reducible

  bool operator==(const GaloisLabel& o) const {
    return kind == o.kind && pattern == o.pattern;
  }
  bool operator<(const GaloisLabel& o) const {
    return kind != o.kind ? kind < o.kind : pattern < o.pattern;
  }

  std::string str() const {
    switch (kind) {
      case Reducible: return "reducible(" + pattern + ")";
      case Trivial: return "trivial";
      case C2: return "C2";
      case C3: return "C3";
      case S3: return "S3";
    }
    return "?";
  }

  static GaloisLabel reducible(std::string pat) { return {Reducible, std::move(pat)}; }
  static GaloisLabel c2() { return {C2, ""}; }
  static GaloisLabel c3() { return {C3, ""}; }
  static GaloisLabel s3() { return {S3, ""}; }
};

namespace detail {

/// Integer roots of a monic integer polynomial (divisors of the constant
/// term; monic means every rational root is integral).
inline std::vector<Int> integer_roots(const std::vector<Int>& coeffs) {
  // coeffs = [1, c_{d-1}, ..., c_0], leading first
  std::vector<Int> roots;
  auto eval = [&](const Int& x) {
    Int v = 0;
    for (const auto& c : coeffs) v = v * x + c;
    return v;
  };
  const Int& c0 = coeffs.back();
  if (c0 == 0) {
    roots.push_back(0);
    return roots;
  }
  Int a = boost::multiprecision::abs(c0);
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    for (const Int& cand : {d, Int(a / d)}) {
      if (eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
        roots.push_back(cand);
      if (eval(-cand) == 0 && std::find(roots.begin(), roots.end(), -cand) == roots.end())
        roots.push_back(-cand);
    }
  }
  return roots;
}

}  // namespace detail

/// Discriminant of monic t^3 + b t^2 + c t + d.
inline Int cubic_discriminant(const Int& b, const Int& c, const Int& d) {
  return Int(18) * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c -
         27 * d * d;
}

/// Label the Galois group of a monic integer polynomial, degree 2 or 3.
/// coeffs is [1, c_{d-1}, ..., c_0] with leading coefficient first.
///
/// Degree 2: reducible iff the discriminant is a perfect square, else C2.
/// Degree 3: rational-root test first; an irreducible cubic has group C3
/// iff its discriminant is a perfect square, else S3.
inline GaloisLabel galois_label(const std::vector<Int>& coeffs) {
  if (coeffs.empty() || coeffs.front() != 1) throw Error("polynomial must be monic");
  std::size_t degree = coeffs.size() - 1;
  if (degree == 2) {
    const Int& b = coeffs[1];
    const Int& c = coeffs[2];
    Int disc = b * b - 4 * c;
    if (is_perfect_square(disc)) return GaloisLabel::reducible("1+1");
    return GaloisLabel::c2();
  }
  if (degree == 3) {
    const Int& b = coeffs[1];
    const Int& c = coeffs[2];
    const Int& d = coeffs[3];
    std::vector<Int> roots = detail::integer_roots(coeffs);
    if (!roots.empty()) {
      // factor out (t - r); quadratic remainder t^2 + (b + r) t + (c + r(b + r))
      const Int& r = roots.front();
      Int qb = b + r, qc = c + r * (b + r);
      Int disc = qb * qb - 4 * qc;
      return GaloisLabel::reducible(is_perfect_square(disc) ? "1+1+1" : "1+2");
    }
    return is_perfect_square(cubic_discriminant(b, c, d)) ? GaloisLabel::c3()
                                                          : GaloisLabel::s3();
  }
  throw Error("galois_label supports degree 2 and 3 only");
}

/// The label sets realizable by traceless integer matrices, used as search
/// targets (for d = 3 this is the set realized by shipped companion
/// matrices, a lower bound for the full set).
inline std::vector<GaloisLabel> realizable_labels(std::size_t d) {
  if (d == 2) return {GaloisLabel::reducible("1+1"), GaloisLabel::c2()};
  if (d == 3)
    return {GaloisLabel::reducible("1+1+1"), GaloisLabel::reducible("1+2"),
            GaloisLabel::c3(), GaloisLabel::s3()};
  throw Error("galois labels supported for d = 2, 3 only");
}

}  // namespace twistlab
