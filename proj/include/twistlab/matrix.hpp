#pragma once

#include <boost/functional/hash.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "twistlab/numeric.hpp"

namespace twistlab {

/// Dense square integer matrix with arbitrary-precision entries. Group
/// elements are required to be unimodular (det = +-1); all arithmetic is
/// exact.
class LatticeMatrix {
 public:
  LatticeMatrix() = default;
  explicit LatticeMatrix(std::size_t dim) : dim_(dim), e_(dim * dim, Int(0)) {}

  static LatticeMatrix identity(std::size_t dim) {
    LatticeMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  static LatticeMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    LatticeMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error("matrix rows must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  Int& at(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }

  bool operator==(const LatticeMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }
  bool operator!=(const LatticeMatrix& o) const { return !(*this == o); }
  bool operator<(const LatticeMatrix& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    for (std::size_t k = 0; k < e_.size(); ++k)
      if (e_[k] != o.e_[k]) return e_[k] < o.e_[k];
    return false;
  }

  LatticeMatrix operator*(const LatticeMatrix& o) const {
    if (dim_ != o.dim_) throw Error("matrix dimension mismatch");
    LatticeMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Int& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != dim_) throw Error("matrix/vector dimension mismatch");
    std::vector<Int> r(dim_, Int(0));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  LatticeMatrix transposed() const {
    LatticeMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Int trace() const {
    Int t = 0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Int det() const {
    if (dim_ == 0) return 1;
    std::vector<Int> a = e_;
    auto idx = [&](std::size_t i, std::size_t j) { return i * dim_ + j; };
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < dim_; ++k) {
      if (a[idx(k, k)] == 0) {
        std::size_t p = k + 1;
        while (p < dim_ && a[idx(p, k)] == 0) ++p;
        if (p == dim_) return 0;
        for (std::size_t j = 0; j < dim_; ++j) std::swap(a[idx(k, j)], a[idx(p, j)]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < dim_; ++i)
        for (std::size_t j = k + 1; j < dim_; ++j) {
          a[idx(i, j)] = (a[idx(i, j)] * a[idx(k, k)] - a[idx(i, k)] * a[idx(k, j)]) / prev;
        }
      prev = a[idx(k, k)];
    }
    return sign > 0 ? a[idx(dim_ - 1, dim_ - 1)] : -a[idx(dim_ - 1, dim_ - 1)];
  }

  bool is_unimodular() const {
    Int d = det();
    return d == 1 || d == -1;
  }

  /// Exact inverse; requires det = +-1 so the inverse is again integral.
  LatticeMatrix inverse() const {
    Int d = det();
    if (d != 1 && d != -1)
      throw Error("matrix is not invertible over Z (det = " + d.str() + ")");
    // Gauss-Jordan over exact rationals, then the result is integral.
    std::size_t n = dim_;
    std::vector<Rat> a(n * 2 * n, Rat(0));
    auto idx = [&](std::size_t i, std::size_t j) { return i * 2 * n + j; };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[idx(i, j)] = Rat(at(i, j));
      a[idx(i, n + i)] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      while (p < n && a[idx(p, col)] == 0) ++p;
      if (p == n) throw Error("singular matrix");
      if (p != col)
        for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a[idx(col, j)], a[idx(p, j)]);
      Rat piv = a[idx(col, col)];
      for (std::size_t j = 0; j < 2 * n; ++j) a[idx(col, j)] /= piv;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || a[idx(i, col)] == 0) continue;
        Rat f = a[idx(i, col)];
        for (std::size_t j = 0; j < 2 * n; ++j) a[idx(i, j)] -= f * a[idx(col, j)];
      }
    }
    LatticeMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rat& v = a[idx(i, n + j)];
        if (denominator(v) != 1) throw Error("inverse is not integral");
        r.at(i, j) = numerator(v);
      }
    return r;
  }

  std::size_t hash() const {
    std::size_t h = dim_;
    for (const auto& x : e_) boost::hash_combine(h, x);
    return h;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < dim_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < dim_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
  }

  const std::vector<Int>& entries() const { return e_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Int> e_;
};

struct LatticeMatrixHash {
  std::size_t operator()(const LatticeMatrix& m) const { return m.hash(); }
};

}  // namespace twistlab
