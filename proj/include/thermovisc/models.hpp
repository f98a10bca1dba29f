#pragma once

// Concrete material models: thermo-elastic solids and fluids, viscous
// fluids, the nonlinear 3d Maxwell family, Kelvin-Voigt, and 0d rheological
// prototypes. Unless stated otherwise every model's free energy carries the
// purely thermal part V(theta) = -c theta ln theta.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thermovisc/laws.hpp"
#include "thermovisc/tensor3.hpp"

namespace thermovisc {

// ---------------------------------------------------------------- stored energies

class StoredEnergy {
 public:
  virtual ~StoredEnergy() = default;
  virtual std::string name() const = 0;
  virtual double value(const Mat3& F) const = 0;
  virtual std::optional<Mat3> gradient(const Mat3&) const { return std::nullopt; }
};

/// dW/dF, analytic when available, else central differences.
Mat3 stored_energy_gradient(const StoredEnergy& W, const Mat3& F);

/// W(F) = (lame/2)(tr E)^2 + mu tr(E^2), E = (F^T F - I)/2.
/// Throws Error(InvalidParams) unless mu > 0 and 3 lame + 2 mu > 0.
std::shared_ptr<const StoredEnergy> stvenant_kirchhoff(double lame, double mu);

/// V(theta) = -c theta ln theta and its derivative.
double thermal_energy(double c, double theta);
double thermal_energy_dtheta(double c, double theta);

// ---------------------------------------------------------------- thermo-elastic

/// A = W(F)/P + V(theta). Declared solid.
std::shared_ptr<const MaterialModel> elastic_model(std::shared_ptr<const StoredEnergy> W, double rho_ref = 1.0,
                                                   double heat_capacity = 0.0, std::string name = "elastic");

/// A = -r theta ln(det F)/P + V(theta). Declared fluid.
std::shared_ptr<const MaterialModel> perfect_gas(double r, double heat_capacity = 0.0, double rho_ref = 1.0);

// ---------------------------------------------------------------- viscous fluids

/// A = V(theta), T_Rd = nu det F (H C^-1 + F^-T H^T F^-T).
std::shared_ptr<const MaterialModel> newtonian(double nu, double heat_capacity = 0.0, double rho_ref = 1.0);

/// Coefficient of a Reiner-Rivlin law as a function of (rho, iota(d), theta).
using ReinerRivlinCoefficient = std::function<double(double, const std::array<double, 3>&, double)>;

struct ReinerRivlinLaw {
  ReinerRivlinCoefficient beta0;
  ReinerRivlinCoefficient beta1;
  ReinerRivlinCoefficient beta2;

  /// sigma = beta0 I + beta1 d + beta2 d^2. Empty coefficients read as zero.
  Sym3 cauchy(double rho, const Sym3& d, double theta) const;
};

ReinerRivlinLaw reiner_rivlin(ReinerRivlinCoefficient beta0, ReinerRivlinCoefficient beta1,
                              ReinerRivlinCoefficient beta2);

/// beta0 = 0, beta1 = 2 nu + b |d|, beta2 = b. For b >= 0 the dissipation
/// sigma:d = 2 nu |d|^2 + b (|d|^3 + tr d^3) is nonnegative.
ReinerRivlinLaw example_reiner_rivlin(double nu, double b);

/// Lagrangian model of an Eulerian viscous law: A = V(theta),
/// T_Rd = sigma(P/J, Sym(H F^-1), theta) cof F. Declared fluid.
std::shared_ptr<const MaterialModel> viscous_fluid(ReinerRivlinLaw law, double heat_capacity = 0.0,
                                                   double rho_ref = 1.0, std::string name = "reiner-rivlin");

// ---------------------------------------------------------------- Maxwell family

enum class MaxwellVariant { Solid, Fluid };

/// A = W(F F_i^-1)/P with Xi = F_i (9 entries, row-major). T_Rd = 0.
/// Solid flow K = -(kappa/P) dA/dF_i, fluid flow K = -(kappa/P) dA/dF_i F^T F.
/// Throws Error(InvalidParams) for kappa < 0.
std::shared_ptr<const MaterialModel> maxwell3d(std::shared_ptr<const StoredEnergy> W, double kappa,
                                               MaxwellVariant variant, double rho_ref = 1.0,
                                               std::string name = "");

/// A = W(F)/P + V(theta), T_Rd = nu Sym(H F^-1) F^-T. Declared solid.
std::shared_ptr<const MaterialModel> kelvin_voigt3d(std::shared_ptr<const StoredEnergy> W, double nu,
                                                    double rho_ref = 1.0, double heat_capacity = 0.0);

/// A = W0(F)/P + sum_k W_k(F F_{i,k}^-1)/P with decoupled solid flow rules.
/// W0 may be null. Throws Error(InvalidParams) when branches is empty or kappa <= 0.
std::shared_ptr<const MaterialModel> generalized_maxwell3d(std::shared_ptr<const StoredEnergy> W0,
                                                           std::vector<std::shared_ptr<const StoredEnergy>> branches,
                                                           double kappa, double rho_ref = 1.0);

// ---------------------------------------------------------------- dissipation potentials

/// nu J |Sym(H F^-1)|^2; generates the Newtonian dissipative stress.
std::shared_ptr<const DissipationPotential> newtonian_potential(double nu);
/// (nu J / 2)|H C^-1 + F^-T H^T F^-T|^2. Convex and nonnegative, but its
/// H-gradient is 4 nu J Sym(d B^-1) F^-T, not the Newtonian stress.
std::shared_ptr<const DissipationPotential> coupled_rate_potential(double nu);
/// (nu/2)|Sym(H F^-1)|^2; generates the Kelvin-Voigt dissipative stress.
std::shared_ptr<const DissipationPotential> kelvin_voigt_potential(double nu);
/// (kappa/2)|Lambda|^2 over a Lambda of length dim.
std::shared_ptr<const DissipationPotential> quadratic_flow_potential(double kappa, std::size_t dim);
/// (kappa/2) sum_b |Lambda_b F^T|^2 over `blocks` 3x3 blocks of Lambda.
std::shared_ptr<const DissipationPotential> fluid_flow_potential(double kappa, std::size_t blocks = 1);
/// Sum of two potentials; Lambda length is the larger of the two (0 means ignored).
std::shared_ptr<const DissipationPotential> sum_potential(std::shared_ptr<const DissipationPotential> a,
                                                          std::shared_ptr<const DissipationPotential> b);
/// -|H|^2; concave, used to exercise the convexity check.
std::shared_ptr<const DissipationPotential> concave_potential();

// ---------------------------------------------------------------- counterexamples

/// T_R = H with A = 0. Fails T(F,H) = T(F, Sym(H F^-1) F).
std::shared_ptr<const MaterialModel> counterexample_h();
/// T_Rd = F W0 with W0 skew and nonzero, A = 0. Fails Cauchy symmetry.
std::shared_ptr<const MaterialModel> counterexample_skew(const Mat3& W0);
/// Maxwell energy with flow rule K = F. Fails K(RF, F_i) = K(F, F_i).
std::shared_ptr<const MaterialModel> counterexample_flow(std::shared_ptr<const StoredEnergy> W);

// ---------------------------------------------------------------- 0d prototypes

enum class ZeroDKind { Maxwell, KelvinVoigt, GeneralizedMaxwell };

/// Springs mu and dashpots nu. Maxwell and Kelvin-Voigt use one of each;
/// the generalized Maxwell model has a parallel spring mu0 and branches
/// (mu[k], nu[k]).
struct ZeroDModel {
  ZeroDKind kind = ZeroDKind::Maxwell;
  double mu0 = 0.0;
  std::vector<double> mu;
  std::vector<double> nu;

  /// Number of ODE unknowns: one gamma per branch, or the strain for Kelvin-Voigt.
  std::size_t size() const { return mu.size(); }

  /// Right-hand side under constant load (held strain for the Maxwell
  /// family, held force for Kelvin-Voigt).
  std::vector<double> rhs(double load, const std::vector<double>& y) const;
  /// Force for the Maxwell family, strain for Kelvin-Voigt.
  double response(double load, const std::vector<double>& y) const;
  double free_energy(double load, const std::vector<double>& y) const;
  /// Dashpot dissipation sum nu_k rate_k^2.
  double dissipation(double load, const std::vector<double>& y) const;
  /// Closed-form response at time t from y0.
  double response_exact(double load, const std::vector<double>& y0, double t) const;
};

/// Throws Error(InvalidParams) unless every mu and nu is > 0.
ZeroDModel maxwell0d(double mu, double nu);
ZeroDModel kelvin_voigt0d(double mu, double nu);
ZeroDModel generalized_maxwell0d(double mu0, std::vector<double> mu, std::vector<double> nu);

}  // namespace thermovisc
