#pragma once

// Constitutive framework: a material model supplies a free energy A(F, theta, Xi),
// a dissipative stress, a flow rule for Xi and a heat flux. Entropy, the
// thermoelastic stress and the internal dissipation are derived from these.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thermovisc/random.hpp"
#include "thermovisc/state.hpp"
#include "thermovisc/tensor3.hpp"

namespace thermovisc {

enum class SymmetryClass { Solid, Fluid, None };

class DissipationPotential;

class MaterialModel {
 public:
  virtual ~MaterialModel() = default;

  virtual std::string name() const = 0;
  virtual ModelDims dims() const { return {}; }
  /// Reference density P.
  virtual double reference_density() const { return 1.0; }

  /// Specific Helmholtz free energy A(F, theta, Xi).
  virtual double free_energy(const Mat3& F, double theta, std::span<const double> xi) const = 0;
  virtual std::optional<Mat3> free_energy_dF(const Mat3&, double, std::span<const double>) const {
    return std::nullopt;
  }
  virtual std::optional<double> free_energy_dtheta(const Mat3&, double, std::span<const double>) const {
    return std::nullopt;
  }
  virtual std::optional<std::vector<double>> free_energy_dxi(const Mat3&, double,
                                                             std::span<const double>) const {
    return std::nullopt;
  }

  virtual Mat3 dissipative_stress(const ThermoState&) const { return Mat3::zero(); }
  virtual std::vector<double> flow_rule(const ThermoState&) const {
    return std::vector<double>(dims().k, 0.0);
  }
  virtual Vec3 heat_flux(const ThermoState&) const { return {}; }

  virtual SymmetryClass symmetry_class() const { return SymmetryClass::None; }
  /// Number of leading 3x3 internal-strain blocks in Xi (Maxwell-type F_i).
  virtual std::size_t strain_blocks() const { return 0; }
  /// Potential the dissipative part derives from, when there is one.
  virtual std::shared_ptr<const DissipationPotential> potential() const { return nullptr; }

  /// Internal-variable sample for randomized checks. Strain blocks are drawn
  /// as random deformation gradients, other entries uniformly in [-1, 1].
  virtual std::vector<double> sample_internal(Rng& rng) const;
  /// Image of an internal variable (or its rate) under the change of
  /// reference configuration F -> F S: strain blocks are multiplied by S on
  /// the right, other entries are left unchanged.
  virtual std::vector<double> reference_change(std::span<const double> v, const Mat3& S) const;
};

/// Convex dissipation potential P(F, H, theta, Pi, Lambda), Lambda dual to Xi.
class DissipationPotential {
 public:
  virtual ~DissipationPotential() = default;
  virtual std::string name() const = 0;
  /// Length of Lambda the potential expects; 0 means it ignores Lambda.
  virtual std::size_t lambda_dim() const { return 0; }
  virtual double value(const Mat3& F, const Mat3& H, double theta, std::span<const double> pi,
                       std::span<const double> lambda) const = 0;
  virtual std::optional<Mat3> dH(const Mat3&, const Mat3&, double, std::span<const double>,
                                 std::span<const double>) const {
    return std::nullopt;
  }
  virtual std::optional<std::vector<double>> dLambda(const Mat3&, const Mat3&, double,
                                                     std::span<const double>,
                                                     std::span<const double>) const {
    return std::nullopt;
  }
};

/// Throws Error(NonPositiveDeterminant) when det F < 1e-12.
void require_admissible(const Mat3& F);

double entropy(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi);
double internal_energy(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi);
/// dA/dF, analytic when supplied, else central differences.
Mat3 free_energy_gradient_F(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi);
std::vector<double> free_energy_gradient_xi(const MaterialModel& model, const Mat3& F, double theta,
                                            std::span<const double> xi);
/// T_Re = P dA/dF.
Mat3 thermoelastic_stress(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi);
/// T_R = T_Re + T_Rd.
Mat3 total_first_piola(const MaterialModel& model, const ThermoState& state);
/// sigma = (1/det F) T_R F^T.
Mat3 cauchy_from_piola(const Mat3& TR, const Mat3& F);

struct DissipationTerms {
  double stress_power = 0.0;    ///< T_Rd : H
  double internal_power = 0.0;  ///< P dA/dXi . K
  double d_int = 0.0;           ///< stress_power - internal_power
};

DissipationTerms dissipation_terms(const MaterialModel& model, const ThermoState& state);
double internal_dissipation(const MaterialModel& model, const ThermoState& state);
/// D_int - Q.G / theta.
double clausius_duhem_lhs(const MaterialModel& model, const ThermoState& state);

Mat3 potential_dH(const DissipationPotential& pot, const Mat3& F, const Mat3& H, double theta,
                  std::span<const double> pi, std::span<const double> lambda);
std::vector<double> potential_dLambda(const DissipationPotential& pot, const Mat3& F, const Mat3& H,
                                      double theta, std::span<const double> pi,
                                      std::span<const double> lambda);

/// dP/dH at Lambda = dA/dXi.
Mat3 stress_from_potential(const DissipationPotential& pot, const MaterialModel& model, const ThermoState& state);
/// -(1/P) dP/dLambda at Lambda = dA/dXi.
std::vector<double> flow_from_potential(const DissipationPotential& pot, const MaterialModel& model,
                                        const ThermoState& state);

/// Model whose dissipative stress and flow rule are generated by `pot`;
/// free energy, heat flux and metadata come from `base`.
std::shared_ptr<const MaterialModel> potential_model(std::shared_ptr<const MaterialModel> base,
                                                     std::shared_ptr<const DissipationPotential> pot,
                                                     std::string name);

/// Model with `flux` replacing the heat flux of `base`.
std::shared_ptr<const MaterialModel> with_heat_flux(std::shared_ptr<const MaterialModel> base,
                                                    std::function<Vec3(const ThermoState&)> flux);

/// Model assembled from callbacks; convenient for tests and counterexamples.
struct LambdaModelSpec {
  std::string name = "lambda";
  ModelDims dims{};
  double rho_ref = 1.0;
  SymmetryClass symmetry = SymmetryClass::None;
  std::size_t strain_blocks = 0;
  std::function<double(const Mat3&, double, std::span<const double>)> free_energy;
  std::function<Mat3(const Mat3&, double, std::span<const double>)> free_energy_dF;
  std::function<double(const Mat3&, double, std::span<const double>)> free_energy_dtheta;
  std::function<std::vector<double>(const Mat3&, double, std::span<const double>)> free_energy_dxi;
  std::function<Mat3(const ThermoState&)> dissipative_stress;
  std::function<std::vector<double>(const ThermoState&)> flow_rule;
  std::function<Vec3(const ThermoState&)> heat_flux;
};

std::shared_ptr<const MaterialModel> lambda_model(LambdaModelSpec spec);

}  // namespace thermovisc
