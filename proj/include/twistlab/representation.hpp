#pragma once

#include <variant>
#include <vector>

#include "twistlab/group.hpp"
#include "twistlab/matrix.hpp"

namespace twistlab {

// Coordinates on sl_d (traceless d x d matrices): the d-1 diagonal
// differences e_11 - e_{i+1,i+1} first, then off-diagonal entries e_ij in
// row-major order. Integer matrices get integer coordinates and back.
namespace traceless {

inline std::size_t dim(std::size_t d) { return d * d - 1; }

inline std::vector<Int> coords(const LatticeMatrix& v) {
  std::size_t d = v.dim();
  if (v.trace() != 0) throw Error("matrix is not traceless");
  std::vector<Int> c;
  c.reserve(dim(d));
  for (std::size_t i = 1; i < d; ++i) c.push_back(-v.at(i, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) c.push_back(v.at(i, j));
  return c;
}

inline LatticeMatrix from_coords(std::size_t d, const std::vector<Int>& c) {
  if (c.size() != dim(d)) throw Error("traceless coordinate length mismatch");
  LatticeMatrix v(d);
  Int first = 0;
  for (std::size_t i = 1; i < d; ++i) {
    v.at(i, i) = -c[i - 1];
    first += c[i - 1];
  }
  v.at(0, 0) = first;
  std::size_t k = d - 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) v.at(i, j) = c[k++];
  return v;
}

}  // namespace traceless

// Coordinates on Sym_d: diagonal entries first, then the upper triangle in
// row-major order (each off-diagonal coordinate stores the entry itself).
namespace symspace {

inline std::size_t dim(std::size_t d) { return d * (d + 1) / 2; }

inline std::vector<Int> coords(const LatticeMatrix& a) {
  std::size_t d = a.dim();
  std::vector<Int> c;
  c.reserve(dim(d));
  for (std::size_t i = 0; i < d; ++i) c.push_back(a.at(i, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      if (a.at(i, j) != a.at(j, i)) throw Error("matrix is not symmetric");
      c.push_back(a.at(i, j));
    }
  return c;
}

inline LatticeMatrix from_coords(std::size_t d, const std::vector<Int>& c) {
  if (c.size() != dim(d)) throw Error("symmetric coordinate length mismatch");
  LatticeMatrix a(d);
  for (std::size_t i = 0; i < d; ++i) a.at(i, i) = c[i];
  std::size_t k = d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      a.at(i, j) = c[k];
      a.at(j, i) = c[k];
      ++k;
    }
  return a;
}

}  // namespace symspace

/// Matrix of Ad(g): v -> g v g^-1 on traceless coordinates; dim d^2-1.
inline LatticeMatrix adjoint_matrix(const LatticeMatrix& g) {
  std::size_t d = g.dim();
  LatticeMatrix gi = g.inverse();
  std::size_t n = traceless::dim(d);
  LatticeMatrix rep(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Int> basis(n, Int(0));
    basis[col] = 1;
    LatticeMatrix v = traceless::from_coords(d, basis);
    std::vector<Int> image = traceless::coords(g * v * gi);
    for (std::size_t row = 0; row < n; ++row) rep.at(row, col) = image[row];
  }
  return rep;
}

/// Matrix of g.A = g A g^t on symmetric coordinates; dim d(d+1)/2.
inline LatticeMatrix symsquare_matrix(const LatticeMatrix& g) {
  std::size_t d = g.dim();
  LatticeMatrix gt = g.transposed();
  std::size_t n = symspace::dim(d);
  LatticeMatrix rep(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Int> basis(n, Int(0));
    basis[col] = 1;
    LatticeMatrix a = symspace::from_coords(d, basis);
    std::vector<Int> image = symspace::coords(g * a * gt);
    for (std::size_t row = 0; row < n; ++row) rep.at(row, col) = image[row];
  }
  return rep;
}

/// True iff g^t G g = G exactly, G = diag(form).
inline bool check_form_preserved(const LatticeMatrix& g, const std::vector<Int>& form) {
  if (form.size() != g.dim()) throw Error("form/matrix dimension mismatch");
  std::size_t d = g.dim();
  LatticeMatrix G(d);
  for (std::size_t i = 0; i < d; ++i) G.at(i, i) = form[i];
  return g.transposed() * G * g == G;
}

/// The linear representations the artifact ships: the standard action on
/// Z^N, the adjoint action on traceless coordinates, the symmetric-square
/// action, and the standard action of a form-preserving group.
class RepresentationSpec {
 public:
  struct Standard {
    std::size_t n;
  };
  struct Adjoint {
    std::size_t d;
  };
  struct SymSquare {
    std::size_t d;
  };
  struct FormPreserving {
    std::vector<Int> diagonal;  // mu_1..mu_p, -lambda_1..-lambda_q
  };

  using Variant = std::variant<Standard, Adjoint, SymSquare, FormPreserving>;

  explicit RepresentationSpec(Variant v) : v_(std::move(v)) {}
  static RepresentationSpec standard(std::size_t n) { return RepresentationSpec(Standard{n}); }
  static RepresentationSpec adjoint(std::size_t d) { return RepresentationSpec(Adjoint{d}); }
  static RepresentationSpec sym_square(std::size_t d) { return RepresentationSpec(SymSquare{d}); }
  static RepresentationSpec form_preserving(std::vector<Int> diag) {
    return RepresentationSpec(FormPreserving{std::move(diag)});
  }

  const Variant& variant() const { return v_; }

  std::size_t target_dim() const {
    if (auto* s = std::get_if<Standard>(&v_)) return s->n;
    if (auto* a = std::get_if<Adjoint>(&v_)) return traceless::dim(a->d);
    if (auto* s2 = std::get_if<SymSquare>(&v_)) return symspace::dim(s2->d);
    return std::get<FormPreserving>(v_).diagonal.size();
  }

  /// Source group dimension this representation expects.
  std::size_t group_dim() const {
    if (auto* s = std::get_if<Standard>(&v_)) return s->n;
    if (auto* a = std::get_if<Adjoint>(&v_)) return a->d;
    if (auto* s2 = std::get_if<SymSquare>(&v_)) return s2->d;
    return std::get<FormPreserving>(v_).diagonal.size();
  }

  std::string name() const {
    if (auto* s = std::get_if<Standard>(&v_)) return "standard(" + std::to_string(s->n) + ")";
    if (auto* a = std::get_if<Adjoint>(&v_)) return "adjoint(" + std::to_string(a->d) + ")";
    if (auto* s2 = std::get_if<SymSquare>(&v_)) return "symsquare(" + std::to_string(s2->d) + ")";
    return "form_preserving";
  }

  LatticeMatrix image(const LatticeMatrix& g) const {
    if (g.dim() != group_dim()) throw Error("representation/group dimension mismatch");
    if (std::holds_alternative<Standard>(v_)) return g;
    if (std::holds_alternative<Adjoint>(v_)) return adjoint_matrix(g);
    if (std::holds_alternative<SymSquare>(v_)) return symsquare_matrix(g);
    const auto& fp = std::get<FormPreserving>(v_);
    if (!check_form_preserved(g, fp.diagonal))
      throw Error("element does not preserve the declared form");
    return g;
  }

 private:
  Variant v_;
};

}  // namespace twistlab
