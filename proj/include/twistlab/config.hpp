#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "twistlab/bohr.hpp"
#include "twistlab/density.hpp"
#include "twistlab/group.hpp"
#include "twistlab/invariant_map.hpp"
#include "twistlab/walk.hpp"

namespace twistlab {

using Json = nlohmann::json;

class ConfigError : public Error {
 public:
  using Error::Error;
};

namespace cfg {

inline Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string text(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ConfigError(where + ": expected a string or integer");
}

inline Rat rat(const Json& j, const std::string& where) {
  return parse_rat(text(j, where));
}

inline TorusScalar scalar(const Json& j, const std::string& where) {
  try {
    return TorusScalar::parse(text(j, where));
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

inline std::vector<long long> int_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of integers");
  std::vector<long long> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ConfigError(where + ": expected integers");
    v.push_back(x.get<long long>());
  }
  return v;
}

inline Window window(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected [[lo, hi], ...]");
  Window w;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ConfigError(where + ": each axis needs [lo, hi]");
    w.emplace_back(pair[0].get<long long>(), pair[1].get<long long>());
  }
  return w;
}

/// "builtin:<name>", a path to a group file, or an inline group object.
inline GeneratorSystem group(const Json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.rfind("builtin:", 0) == 0) return groups::builtin(s.substr(8));
    return group(load_file(s), s);
  }
  std::size_t dim = field(j, "dim", where).get<std::size_t>();
  GeneratorSystem g(j.value("name", "group"), dim);
  const Json& gens = field(j, "generators", where);
  for (const auto& entry : gens) {
    std::string label = field(entry, "label", where + ".generators").get<std::string>();
    const Json& rows = field(entry, "matrix", where + "." + label);
    std::vector<std::vector<long long>> m;
    for (const auto& row : rows) m.push_back(row.get<std::vector<long long>>());
    std::string inv = entry.value("inverse", label + "^-1");
    g.add_pair(label, LatticeMatrix::from_rows(m), inv);
  }
  if (j.contains("form")) {
    std::vector<Int> diag;
    for (const auto& x : j["form"]) diag.push_back(Int(x.get<long long>()));
    g.set_form_diagonal(std::move(diag));
  }
  g.validate();
  return g;
}

inline KroneckerSystem kronecker(const Json& j, const std::string& where) {
  std::size_t m = field(j, "torus_dim", where).get<std::size_t>();
  std::size_t n = field(j, "domain_rank", where).get<std::size_t>();
  const Json& rows = field(j, "tau", where);
  if (!rows.is_array() || rows.size() != m) throw ConfigError(where + ": tau needs one row per torus coordinate");
  std::vector<std::vector<TorusScalar>> tau;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n)
      throw ConfigError(where + ": tau rows need one entry per domain coordinate");
    std::vector<TorusScalar> r;
    for (const auto& e : row) r.push_back(scalar(e, where + ".tau"));
    tau.push_back(std::move(r));
  }
  return KroneckerSystem(m, n, std::move(tau));
}

/// Bohr spec: inline object, or a path string. An optional "power": k
/// builds the k-fold product of the described set.
inline BohrSetSpec bohr(const Json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    return bohr(load_file(s), s);
  }
  KroneckerSystem sys = kronecker(j, where);
  std::vector<Arc> arcs;
  for (const auto& a : field(j, "arcs", where)) {
    arcs.push_back(Arc{scalar(field(a, "center", where + ".arcs"), where + ".arcs.center"),
                       rat(field(a, "radius", where + ".arcs"), where + ".arcs.radius")});
  }
  BohrSetSpec spec(std::move(sys), std::move(arcs));
  long long power = j.value("power", 1LL);
  if (power < 1) throw ConfigError(where + ": power must be >= 1");
  if (power == 1) return spec;
  std::vector<BohrSetSpec> parts(static_cast<std::size_t>(power), spec);
  return product_bohr(parts);
}

inline std::shared_ptr<PointSet> point_set(const Json& j, const std::string& where,
                                           std::uint64_t default_seed) {
  std::string type = field(j, "type", where).get<std::string>();
  if (type == "bohr") return std::make_shared<BohrPointSet>(bohr(field(j, "spec", where), where + ".spec"));
  if (type == "modular")
    return std::make_shared<ModularPointSet>(field(j, "rank", where).get<std::size_t>(),
                                             field(j, "modulus", where).get<long long>());
  if (type == "bernoulli")
    return std::make_shared<BernoulliPointSet>(field(j, "rank", where).get<std::size_t>(),
                                               rat(field(j, "p", where), where + ".p"),
                                               j.value("seed", default_seed));
  if (type == "explicit") {
    std::size_t rank = field(j, "rank", where).get<std::size_t>();
    std::vector<std::vector<long long>> pts;
    for (const auto& p : field(j, "points", where)) pts.push_back(int_vector(p, where + ".points"));
    return std::make_shared<ExplicitPointSet>(rank, std::move(pts));
  }
  throw ConfigError(where + ": unknown set type '" + type + "'");
}

inline InvariantMap psi(const Json& j, const std::string& where) {
  std::string variant = field(j, "variant", where).get<std::string>();
  if (variant == "quadratic_form") {
    std::vector<Int> mu, lambda;
    for (const auto& x : field(j, "mu", where)) mu.push_back(Int(x.get<long long>()));
    for (const auto& x : field(j, "lambda", where)) lambda.push_back(Int(x.get<long long>()));
    return InvariantMap::quadratic_form(std::move(mu), std::move(lambda));
  }
  std::size_t d = field(j, "d", where).get<std::size_t>();
  if (variant == "charpoly") return InvariantMap::char_poly_map(d);
  if (variant == "galois") return InvariantMap::galois_map(d);
  if (variant == "determinant") return InvariantMap::determinant(d);
  throw ConfigError(where + ": unknown invariant map variant '" + variant + "'");
}

inline RepresentationSpec representation(const Json& j, const std::string& where) {
  std::string variant = field(j, "variant", where).get<std::string>();
  if (variant == "standard")
    return RepresentationSpec::standard(field(j, "n", where).get<std::size_t>());
  if (variant == "adjoint")
    return RepresentationSpec::adjoint(field(j, "d", where).get<std::size_t>());
  if (variant == "symsquare")
    return RepresentationSpec::sym_square(field(j, "d", where).get<std::size_t>());
  if (variant == "form") {
    std::vector<Int> diag;
    for (const auto& x : field(j, "diagonal", where)) diag.push_back(Int(x.get<long long>()));
    return RepresentationSpec::form_preserving(std::move(diag));
  }
  throw ConfigError(where + ": unknown representation variant '" + variant + "'");
}

inline WalkMeasure walk_measure(const Json& j, const GeneratorSystem& gens,
                                const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "uniform") return WalkMeasure::uniform(gens);
  std::map<std::string, Rat> weights;
  for (const auto& [label, w] : j.items()) weights[label] = rat(w, where + "." + label);
  return WalkMeasure(gens, std::move(weights));
}

}  // namespace cfg
}  // namespace twistlab
