#pragma once

#include <string>
#include <vector>

#include "twistlab/numeric.hpp"
#include "twistlab/torus_scalar.hpp"

namespace twistlab {

/// A point of T^N with exact symbolic coordinates in [0,1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<TorusScalar> coords) : c_(std::move(coords)) {
    for (auto& x : c_) x = x.reduced_mod1();
  }

  static TorusPoint zero(std::size_t n) {
    return TorusPoint(std::vector<TorusScalar>(n, TorusScalar(Rat(0))));
  }

  static TorusPoint of_rationals(const std::vector<Rat>& coords) {
    std::vector<TorusScalar> v;
    v.reserve(coords.size());
    for (const auto& r : coords) v.emplace_back(r);
    return TorusPoint(std::move(v));
  }

  std::size_t dim() const { return c_.size(); }
  const TorusScalar& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<TorusScalar>& coords() const { return c_; }

  /// Rational / Irrational / Unknown as a character on Z^N: rational iff
  /// every coordinate is rational; Unknown if any coordinate is Unknown
  /// while no certified-irrational coordinate settles the question.
  Rationality rationality() const {
    bool unknown = false;
    bool irrational = false;
    for (const auto& x : c_) {
      switch (x.rationality()) {
        case Rationality::Rational: break;
        case Rationality::Irrational: irrational = true; break;
        case Rationality::Unknown: unknown = true; break;
      }
    }
    if (irrational) return Rationality::Irrational;
    if (unknown) return Rationality::Unknown;
    return Rationality::Rational;
  }

  std::vector<Rat> as_rationals() const {
    std::vector<Rat> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x.as_rational());
    return r;
  }

  /// <x, a> mod 1 as a symbolic scalar.
  TorusScalar pair(const std::vector<Int>& a) const {
    if (a.size() != c_.size()) throw Error("pairing dimension mismatch");
    TorusScalar acc;
    for (std::size_t i = 0; i < c_.size(); ++i) acc = acc + c_[i].scaled(Rat(a[i]));
    return acc.reduced_mod1();
  }

  bool identical(const TorusPoint& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].identical(o.c_[i])) return false;
    return true;
  }

  /// Canonical text form; usable as a dedup key because coordinates are
  /// reduced and symbolic terms are stored sorted.
  std::string key() const {
    std::string s;
    for (const auto& x : c_) {
      s += x.str();
      s += '|';
    }
    return s;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ", ";
      s += c_[i].str();
    }
    return s + ")";
  }

 private:
  std::vector<TorusScalar> c_;
};

}  // namespace twistlab
