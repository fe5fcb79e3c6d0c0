#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "twistlab/numeric.hpp"

namespace twistlab {

/// Rationality of a circle coordinate. `Unknown` arises only when two or
/// more user-declared (unverified) irrational constants are combined.
enum class Rationality { Rational, Irrational, Unknown };

namespace detail {

struct SymbolInfo {
  Real value;      // numeric value at working precision
  bool certified;  // true for the shipped quadratic irrationals
};

// Shipped constants are quadratic irrationals from pairwise distinct real
// quadratic fields, so any nonzero rational combination of them is
// irrational; that fact is what `certified` records. Decimal-string
// constants are irrational by declaration only.
inline const SymbolInfo& symbol_info(const std::string& name) {
  static std::map<std::string, SymbolInfo> table;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(name);
  if (it != table.end()) return it->second;

  SymbolInfo info;
  if (name == "golden") {
    info = {(sqrt(Real(5)) - 1) / 2, true};
  } else if (name == "sqrt2m1") {
    info = {sqrt(Real(2)) - 1, true};
  } else if (name == "sqrt3m1") {
    info = {sqrt(Real(3)) - 1, true};
  } else if (!name.empty() && (name[0] == '.' || name[0] == '-' ||
                               (name[0] >= '0' && name[0] <= '9'))) {
    try {
      info = {Real(name), false};
    } catch (const std::exception&) {
      throw Error("cannot parse torus constant '" + name + "'");
    }
  } else {
    throw Error("unknown torus constant '" + name + "'");
  }
  return table.emplace(name, std::move(info)).first->second;
}

}  // namespace detail

/// A point coordinate on the circle R/Z, kept as an exact rational plus an
/// exact rational combination of named irrational constants. Addition,
/// subtraction and rational scaling stay symbolic, so rationality checks
/// and equality are decided exactly; only order comparisons fall back to
/// the 256-bit evaluation with a tracked error bound.
class TorusScalar {
 public:
  TorusScalar() = default;
  explicit TorusScalar(Rat r) : rat_(std::move(r)) {}
  explicit TorusScalar(long long n) : rat_(n) {}

  static TorusScalar rational(const Rat& r) { return TorusScalar(r); }

  static TorusScalar constant(const std::string& name, const Rat& coeff = Rat(1)) {
    detail::symbol_info(name);  // validates
    TorusScalar s;
    if (coeff != 0) s.irr_[name] = coeff;
    return s;
  }

  /// Accepts "p/q", a named constant ("golden", "sqrt2m1", "sqrt3m1")
  /// or a decimal string declared irrational ("0.70710678...").
  static TorusScalar parse(const std::string& text) {
    if (text.empty()) throw Error("empty torus coordinate");
    if (text == "golden" || text == "sqrt2m1" || text == "sqrt3m1")
      return constant(text);
    if (text.find('.') != std::string::npos) return constant(text);
    return TorusScalar(parse_rat(text));
  }

  const Rat& rational_part() const { return rat_; }
  const std::map<std::string, Rat>& irrational_terms() const { return irr_; }

  bool is_symbolically_zero() const { return rat_ == 0 && irr_.empty(); }

  Rationality rationality() const {
    if (irr_.empty()) return Rationality::Rational;
    for (const auto& [name, coeff] : irr_) {
      (void)coeff;
      if (!detail::symbol_info(name).certified && irr_.size() > 1)
        return Rationality::Unknown;
    }
    return Rationality::Irrational;
  }

  /// Exact rational value; only valid when rationality() == Rational.
  const Rat& as_rational() const {
    if (!irr_.empty()) throw Error("torus coordinate is not rational");
    return rat_;
  }

  TorusScalar operator+(const TorusScalar& o) const {
    TorusScalar r(*this);
    r.rat_ += o.rat_;
    for (const auto& [name, c] : o.irr_) r.add_term(name, c);
    return r;
  }
  TorusScalar operator-(const TorusScalar& o) const {
    TorusScalar r(*this);
    r.rat_ -= o.rat_;
    for (const auto& [name, c] : o.irr_) r.add_term(name, -c);
    return r;
  }
  TorusScalar operator-() const {
    TorusScalar r;
    r.rat_ = -rat_;
    for (const auto& [name, c] : irr_) r.irr_[name] = -c;
    return r;
  }
  TorusScalar scaled(const Rat& k) const {
    TorusScalar r;
    if (k == 0) return r;
    r.rat_ = rat_ * k;
    for (const auto& [name, c] : irr_) r.irr_[name] = c * k;
    return r;
  }

  TrackedReal eval() const {
    TrackedReal acc = TrackedReal::of_rat(rat_);
    for (const auto& [name, c] : irr_) {
      TrackedReal sym{detail::symbol_info(name).value, TrackedReal::kUlp};
      acc = acc + TrackedReal::of_rat(c) * sym;
    }
    return acc;
  }

  /// Exact structural equality (same rational part, same terms). For values
  /// in this linear symbolic class, structural equality coincides with
  /// equality of real numbers whenever all constants involved are certified.
  bool identical(const TorusScalar& o) const {
    return rat_ == o.rat_ && irr_ == o.irr_;
  }

  /// Reduce into [0,1) by subtracting an integer. Exact for rational values;
  /// otherwise the floor is taken from the evaluation and an undecidable
  /// near-integer value raises PrecisionError.
  TorusScalar reduced_mod1() const {
    TorusScalar r(*this);
    if (irr_.empty()) {
      r.rat_ = mod1(rat_);
      return r;
    }
    TrackedReal v = eval();
    Real fl = floor(v.value);
    Real frac = v.value - fl;
    // Near 0 or 1 within the error bound the floor itself is ambiguous.
    if (frac < Real(v.err) || frac > Real(1) - Real(v.err)) {
      // A symbolic value this close to an integer would mean an (almost)
      // rational relation between certified constants; surface it.
      throw PrecisionError("mod-1 reduction undecidable at current precision");
    }
    r.rat_ -= Rat(Int(fl));
    return r;
  }

  /// Compare against another scalar: -1, 0 (equal), +1.
  /// Throws PrecisionError when unequal symbolically but numerically
  /// indistinguishable at the tracked precision.
  int compare(const TorusScalar& o) const {
    TorusScalar d = *this - o;
    if (d.is_symbolically_zero()) return 0;
    if (d.irr_.empty()) return d.rat_ < 0 ? -1 : (d.rat_ > 0 ? 1 : 0);
    int s = tracked_sign(d.eval());
    if (s == 0) throw PrecisionError("comparison undecidable at current precision");
    return s;
  }

  bool operator<(const TorusScalar& o) const { return compare(o) < 0; }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    if (rat_ != 0 || irr_.empty()) {
      os << rat_string(rat_);
      first = false;
    }
    for (const auto& [name, c] : irr_) {
      if (!first) os << " + ";
      first = false;
      if (c != 1) os << rat_string(c) << "*";
      os << name;
    }
    return os.str();
  }

  double to_double() const { return eval().to_double(); }

 private:
  void add_term(const std::string& name, const Rat& c) {
    auto it = irr_.find(name);
    if (it == irr_.end()) {
      if (c != 0) irr_[name] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) irr_.erase(it);
  }

  Rat rat_{0};
  std::map<std::string, Rat> irr_;
};

/// Distance to 0 on the circle, as a symbolic scalar: min(x, 1-x) after
/// mod-1 reduction, branch chosen numerically.
inline TorusScalar circle_distance_to_zero(const TorusScalar& x) {
  TorusScalar r = x.reduced_mod1();
  TorusScalar complement = TorusScalar(Rat(1)) - r;
  int cmp;
  try {
    cmp = r.compare(complement);
  } catch (const PrecisionError&) {
    cmp = 0;  // both are 1/2 up to precision; either branch is fine
  }
  return cmp <= 0 ? r : complement;
}

}  // namespace twistlab
