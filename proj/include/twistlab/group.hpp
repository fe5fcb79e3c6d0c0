#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/matrix.hpp"

namespace twistlab {

/// A finitely generated subgroup of GL_N(Z) given by labelled generators,
/// closed under inverses (every label has a paired inverse label).
class GeneratorSystem {
 public:
  GeneratorSystem() = default;
  GeneratorSystem(std::string name, std::size_t dim) : name_(std::move(name)), dim_(dim) {}

  void add_pair(const std::string& label, const LatticeMatrix& g,
                const std::string& inv_label) {
    if (g.dim() != dim_) throw Error("generator dimension mismatch for " + label);
    add_one(label, g, inv_label);
    if (inv_label != label) add_one(inv_label, g.inverse(), label);
  }

  /// For involutions (g = g^-1) a single self-paired label is allowed.
  void add_involution(const std::string& label, const LatticeMatrix& g) {
    add_pair(label, g, label);
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  const LatticeMatrix& matrix(const std::string& label) const {
    auto it = mats_.find(label);
    if (it == mats_.end()) throw Error("unknown generator label '" + label + "'");
    return it->second;
  }
  const LatticeMatrix& matrix(std::size_t i) const { return matrix(labels_.at(i)); }
  const std::string& inverse_label(const std::string& label) const {
    auto it = inv_.find(label);
    if (it == inv_.end()) throw Error("unknown generator label '" + label + "'");
    return it->second;
  }

  /// Optional quadratic form the group is expected to preserve, as the
  /// diagonal of G = diag(mu_1..mu_p, -lambda_1..-lambda_q).
  void set_form_diagonal(std::vector<Int> diag) { form_ = std::move(diag); }
  const std::optional<std::vector<Int>>& form_diagonal() const { return form_; }

  /// Every generator must be unimodular and inverse pairs must multiply to
  /// the identity; throws with the offending label otherwise.
  void validate() const {
    if (labels_.empty()) throw Error("generator system '" + name_ + "' is empty");
    LatticeMatrix id = LatticeMatrix::identity(dim_);
    for (const auto& label : labels_) {
      const LatticeMatrix& g = matrix(label);
      if (!g.is_unimodular())
        throw Error("generator " + label + " is not unimodular");
      if (g * matrix(inverse_label(label)) != id)
        throw Error("inverse pairing broken for generator " + label);
    }
  }

  LatticeMatrix word(const std::vector<std::string>& w) const {
    LatticeMatrix m = LatticeMatrix::identity(dim_);
    for (const auto& label : w) m = m * matrix(label);
    return m;
  }

 private:
  void add_one(const std::string& label, const LatticeMatrix& g,
               const std::string& inv_label) {
    if (mats_.count(label)) throw Error("duplicate generator label '" + label + "'");
    labels_.push_back(label);
    mats_.emplace(label, g);
    inv_[label] = inv_label;
  }

  std::string name_;
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;  // insertion order, deterministic scans
  std::map<std::string, LatticeMatrix> mats_;
  std::map<std::string, std::string> inv_;
  std::optional<std::vector<Int>> form_;
};

namespace groups {

/// SL_2(Z) = <S, T> with S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
inline GeneratorSystem sl2z() {
  GeneratorSystem g("sl2z", 2);
  g.add_pair("S", LatticeMatrix::from_rows({{0, -1}, {1, 0}}), "S^-1");
  g.add_pair("T", LatticeMatrix::from_rows({{1, 1}, {0, 1}}), "T^-1");
  g.validate();
  return g;
}

/// SL_3(Z) generated by the six elementary matrices E_ij = I + e_ij.
inline GeneratorSystem sl3z() {
  GeneratorSystem g("sl3z", 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      LatticeMatrix m = LatticeMatrix::identity(3);
      m.at(i, j) = 1;
      std::string lab = "E" + std::to_string(i + 1) + std::to_string(j + 1);
      g.add_pair(lab, m, lab + "^-1");
    }
  g.validate();
  return g;
}

/// The Berggren triple generating integer automorphs of x^2 + y^2 - z^2.
/// Each B satisfies B^t G B = G for G = diag(1,1,-1), hence B^-1 = G B^t G.
inline GeneratorSystem berggren() {
  GeneratorSystem g("berggren", 3);
  g.add_pair("B1", LatticeMatrix::from_rows({{1, -2, 2}, {2, -1, 2}, {2, -2, 3}}), "B1^-1");
  g.add_pair("B2", LatticeMatrix::from_rows({{1, 2, 2}, {2, 1, 2}, {2, 2, 3}}), "B2^-1");
  g.add_pair("B3", LatticeMatrix::from_rows({{-1, 2, 2}, {-2, 1, 2}, {-2, 2, 3}}), "B3^-1");
  g.set_form_diagonal({Int(1), Int(1), Int(-1)});
  g.validate();
  return g;
}

/// Built-in groups by name; used by config files via "builtin:<name>".
inline GeneratorSystem builtin(const std::string& name) {
  if (name == "sl2z") return sl2z();
  if (name == "sl3z") return sl3z();
  if (name == "berggren") return berggren();
  throw Error("unknown builtin group '" + name + "'");
}

}  // namespace groups
}  // namespace twistlab
