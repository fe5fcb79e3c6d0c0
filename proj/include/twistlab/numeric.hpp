#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Fixed-precision real used wherever exact arithmetic is impossible.
// 256 mantissa bits; every consumer that cares about the boundary of a
// comparison carries an explicit error bound alongside (see TrackedReal).
inline constexpr unsigned kRealBits = 256;
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<kRealBits, boost::multiprecision::digit_base_2>>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bounded search or enumeration ran into its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A comparison or floor could not be decided at the working precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& x) {
  return floor_div(numerator(x), denominator(x));
}

// Reduce into [0, 1).
inline Rat mod1(const Rat& x) { return x - Rat(floor_rat(x)); }

inline Int isqrt(const Int& n) {
  if (n < 0) throw Error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

// Parse "p/q" or plain integer "p"; exact.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw Error("zero denominator in '" + s + "'");
    return Rat(p, q);
  } catch (const std::exception& e) {
    throw Error("cannot parse rational '" + s + "': " + e.what());
  }
}

inline std::string rat_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline double rat_double(const Rat& x) { return static_cast<double>(x); }

// |value - true| <= err, err tracked in double (bounds here are never tight,
// only safe: each operation inflates by a couple of ulps of the result).
struct TrackedReal {
  Real value{0};
  double err = 0.0;

  static constexpr double kUlp = 1e-72;  // > 2^-240, generous vs 2^-256

  static TrackedReal exactly(const Real& v) { return {v, 0.0}; }
  static TrackedReal of_rat(const Rat& x) {
    Real v = Real(numerator(x)) / Real(denominator(x));
    return {v, kUlp * (1.0 + std::abs(static_cast<double>(v)))};
  }

  TrackedReal operator+(const TrackedReal& o) const {
    Real v = value + o.value;
    return {v, err + o.err + kUlp * (1.0 + std::abs(static_cast<double>(v)))};
  }
  TrackedReal operator-(const TrackedReal& o) const {
    Real v = value - o.value;
    return {v, err + o.err + kUlp * (1.0 + std::abs(static_cast<double>(v)))};
  }
  TrackedReal operator*(const TrackedReal& o) const {
    Real v = value * o.value;
    double av = std::abs(static_cast<double>(value));
    double ao = std::abs(static_cast<double>(o.value));
    return {v, av * o.err + ao * err + err * o.err +
                   kUlp * (1.0 + std::abs(static_cast<double>(v)))};
  }
  TrackedReal negated() const { return {-value, err}; }

  double to_double() const { return static_cast<double>(value); }
};

// Sign of a tracked quantity; 0 means "cannot tell at this precision".
inline int tracked_sign(const TrackedReal& x) {
  if (x.value > x.err) return 1;
  if (x.value < -Real(x.err)) return -1;
  return 0;
}

}  // namespace twistlab
