#include "frustra/models.hpp"

#include <cmath>

#include "frustra/error.hpp"

namespace frustra {

namespace {

OperatorTerm single(double c, std::size_t site, Pauli p) { return {c, {{site, p}}}; }

OperatorTerm pair(double c, std::size_t a, Pauli pa, std::size_t b, Pauli pb) { return {c, {{a, pa}, {b, pb}}}; }

double param(const ParamMap& params, const BuiltinModelInfo& info, const std::string& key) {
  if (auto it = params.find(key); it != params.end()) return it->second;
  for (const auto& [name, value] : info.params) {
    if (name == key) return value;
  }
  throw Error(ErrorKind::InvalidArgument, "model " + info.name + " has no parameter " + key);
}

}  // namespace

const std::vector<BuiltinModelInfo>& builtin_models() {
  static const std::vector<BuiltinModelInfo> models = {
      {"ising2", "two-spin transverse Ising: -g (X1 + X2) - Z1 Z2", {{"g", 1.0}}},
      {"triangle", "frustrated antiferromagnetic triangle: J (Z1 Z2 + Z2 Z3 + Z1 Z3)", {{"J", 1.0}}},
      {"chain3",
       "three qubits A, B, C: -ga Z_A - gb Z_B - gc Z_C + jab X_A X_B + jbc X_B X_C",
       {{"ga", 1.0}, {"gb", 1.0}, {"gc", 1.0}, {"jab", 1.0}, {"jbc", 1.0}}},
  };
  return models;
}

SpinModel make_builtin(std::string_view name, const ParamMap& params) {
  const BuiltinModelInfo* info = nullptr;
  for (const auto& m : builtin_models()) {
    if (m.name == name) info = &m;
  }
  if (info == nullptr) throw Error(ErrorKind::InvalidArgument, "unknown built-in model \"" + std::string(name) + "\"");
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const auto& [pname, def] : info->params) known |= pname == key;
    if (!known) throw Error(ErrorKind::InvalidArgument, "model " + info->name + " has no parameter " + key);
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "parameter " + key + " must be finite");
  }
  if (name == "ising2") return ising2(param(params, *info, "g"));
  if (name == "triangle") return triangle(param(params, *info, "J"));
  return chain3({param(params, *info, "ga"), param(params, *info, "gb"), param(params, *info, "gc"),
                 param(params, *info, "jab"), param(params, *info, "jbc")});
}

SpinModel ising2(double g) {
  SpinModel m;
  m.name = "ising2";
  m.dims = {2, 2};
  m.terms = {single(-g, 0, Pauli::X), single(-g, 1, Pauli::X), pair(-1.0, 0, Pauli::Z, 1, Pauli::Z)};
  return m;
}

ExplicitAssignment ising2_asymmetric_assignment() { return {{0}, {1, 2}}; }

SpinModel triangle(double j) {
  SpinModel m;
  m.name = "triangle";
  m.dims = {2, 2, 2};
  m.terms = {pair(j, 0, Pauli::Z, 1, Pauli::Z), pair(j, 1, Pauli::Z, 2, Pauli::Z), pair(j, 0, Pauli::Z, 2, Pauli::Z)};
  return m;
}

SpinModel chain3(const Chain3Params& p) {
  SpinModel m;
  m.name = "chain3";
  m.dims = {2, 2, 2};
  m.labels = {"A", "B", "C"};
  m.terms = {single(-p.ga, 0, Pauli::Z), single(-p.gb, 1, Pauli::Z), single(-p.gc, 2, Pauli::Z),
             pair(p.jab, 0, Pauli::X, 1, Pauli::X), pair(p.jbc, 1, Pauli::X, 2, Pauli::X)};
  return m;
}

IsingClosedForm ising2_closed_form(double g) {
  IsingClosedForm out;
  const double r4 = std::sqrt(1.0 + 4.0 * g * g);
  const double r1 = std::sqrt(1.0 + g * g);
  out.ground_energy = -r4;
  out.entanglement = 0.5 - g / r4;
  if (g > 0.0) {
    out.ef_bound_symmetric = (1.0 + 2.0 * g - r4) / (2.0 * g);
    out.ef_bound_asymmetric = 0.5 - (r4 - r1) / (2.0 * g);
  }
  return out;
}

}  // namespace frustra
