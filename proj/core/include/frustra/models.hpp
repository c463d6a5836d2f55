#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frustra/hamiltonian.hpp"

namespace frustra {

using ParamMap = std::map<std::string, double>;

struct BuiltinModelInfo {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, double>> params;  // name, default
};

const std::vector<BuiltinModelInfo>& builtin_models();

/// Throws InvalidArgument for an unknown model name or parameter.
SpinModel make_builtin(std::string_view name, const ParamMap& params = {});

/// H = -g (X1 + X2) - Z1 Z2. Term order: -g X1, -g X2, -Z1 Z2.
SpinModel ising2(double g);

/// Term assignment for H_L = -g X1, H_I = -g X2 - Z1 Z2.
ExplicitAssignment ising2_asymmetric_assignment();

/// Antiferromagnetic triangle J (Z1 Z2 + Z2 Z3 + Z1 Z3).
SpinModel triangle(double j);

struct Chain3Params {
  double ga = 1.0;
  double gb = 1.0;
  double gc = 1.0;
  double jab = 1.0;
  double jbc = 1.0;
};

/// Three qubits A, B, C: -ga Z_A - gb Z_B - gc Z_C + jab X_A X_B + jbc X_B X_C.
SpinModel chain3(const Chain3Params& p);

/// Closed-form two-spin transverse Ising quantities for g >= 0. The bound
/// fields are empty at g = 0 where delta_e_ent vanishes.
struct IsingClosedForm {
  double ground_energy = 0.0;
  double entanglement = 0.0;
  std::optional<double> ef_bound_symmetric;
  std::optional<double> ef_bound_asymmetric;
};

IsingClosedForm ising2_closed_form(double g);

}  // namespace frustra
