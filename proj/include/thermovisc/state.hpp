#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermovisc/error.hpp"
#include "thermovisc/tensor3.hpp"

namespace thermovisc {

/// Internal-variable dimensions declared by a model: k entries of Xi (evolved
/// by the flow rule) and m entries of Pi (opaque, never evolved here).
struct ModelDims {
  std::size_t k = 0;
  std::size_t m = 0;
  bool operator==(const ModelDims&) const = default;
};

/// Thermodynamic state of one material point in the Lagrangian description.
struct ThermoState {
  Mat3 F = Mat3::identity();
  Mat3 H = Mat3::zero();
  double theta = 1.0;
  Vec3 G{};
  std::vector<double> xi;
  std::vector<double> pi;
};

/// Eulerian state of a complex fluid at a point: velocity gradient and
/// polymer stress.
struct EulerianState {
  Mat3 h = Mat3::zero();
  Sym3 xi{};
  bool incompressible = true;
};

/// Returns the error kind that `state` violates, or nullopt when valid.
/// Never throws.
std::optional<ErrorKind> validate(const ThermoState& state, ModelDims dims) noexcept;
std::optional<ErrorKind> validate(const EulerianState& state) noexcept;

/// Throws Error with the kind reported by validate().
void require_valid(const ThermoState& state, ModelDims dims);

/// Returns (eta_s, eta_p) = ((l2/l1) eta, (1 - l2/l1) eta).
/// Throws Error(InvalidParams) unless eta > 0 and lambda1 > lambda2 > 0.
std::pair<double, double> solvent_polymer_split(double eta, double lambda1, double lambda2);

/// Named material parameters. Every field has a default; `set` addresses
/// them by the same names used on the command line and in config files.
struct MaterialParams {
  double rho_ref = 1.0;       ///< reference density P
  double mu = 1.0;            ///< shear modulus / spring stiffness
  double lame = 1.0;          ///< first Lame parameter
  double nu = 1.0;            ///< kinematic viscosity / dashpot viscosity
  double eta = 1.0;           ///< total complex-fluid viscosity
  std::optional<double> eta_s;  ///< solvent viscosity (derived from eta when unset)
  std::optional<double> eta_p;  ///< polymer viscosity (derived from eta when unset)
  double lambda1 = 10.0;      ///< relaxation time
  double lambda2 = 1.0;       ///< retardation time
  double kappa = 1.0;         ///< flow-rule mobility
  double conductivity = 1.0;  ///< Fourier conductivity k
  double omega = 0.75;        ///< shaking frequency
  double gas_constant = 1.0;  ///< r of the perfect gas
  double heat_capacity = 0.0; ///< c in V(theta) = -c theta ln theta
  double rr_nonlinear = 0.5;  ///< Reiner-Rivlin quadratic coefficient
  double slip = 0.5;          ///< Gordon-Schowalter parameter of the custom derivative

  /// Throws Error(ConfigError) for unknown names.
  void set(std::string_view name, double value);
  static const std::vector<std::string>& names();

  /// (eta_s, eta_p), using explicit overrides when present.
  std::pair<double, double> viscosity_split() const;

  /// Throws Error(InvalidParams) if a strictly positive parameter is not.
  void check() const;
};

/// Parses `name = value` lines; `#` starts a comment. Values are parsed with
/// std::from_chars (exact round-to-nearest). Throws Error(ConfigError) with
/// the offending line number.
std::map<std::string, double> parse_key_values(std::istream& in);
std::map<std::string, double> parse_key_values_file(const std::string& path);

/// Applies a parsed key-value map to params.
void apply(MaterialParams& params, const std::map<std::string, double>& values);

/// Exact decimal parse of a full token; throws Error(ConfigError).
double parse_real(std::string_view token);

}  // namespace thermovisc
