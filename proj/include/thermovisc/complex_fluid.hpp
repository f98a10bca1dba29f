#pragma once

// Incompressible complex fluids with polymer stress xi evolved by an
// objective derivative:
//   sigma = 2 eta_s d + xi,   xi' = -Ob(xi, h) + (-xi + 2 eta_p d) / lambda1.
// Ob(s, h) = -h s - s h^T gives Oldroyd B, Ob(s, h) = s w - w s gives
// Zaremba-Jaumann. The indeterminate pressure is left out of sigma.

#include <functional>
#include <memory>
#include <string>

#include "thermovisc/laws.hpp"
#include "thermovisc/state.hpp"
#include "thermovisc/tensor3.hpp"

namespace thermovisc {

enum class DerivativeKind { OldroydB, ZarembaJaumann, Custom };
enum class FreeEnergyKind { None, ZjQuadratic };

using ObjectiveTerm = std::function<Mat3(const Mat3& sigma, const Mat3& h)>;

/// Gordon-Schowalter term Ob = s w - w s - a (d s + s d); a = 1 is Oldroyd B,
/// a = 0 is Zaremba-Jaumann.
ObjectiveTerm gordon_schowalter(double a);

/// (lambda1 / (4 eta_p)) |xi|^2.
double zj_free_energy(const Mat3& xi, double lambda1, double eta_p);
/// (lambda1 / (2 eta_p)) xi.
Mat3 zj_free_energy_gradient(const Mat3& xi, double lambda1, double eta_p);

class ComplexFluidModel {
 public:
  /// Throws Error(InvalidParams) unless eta_s, eta_p, lambda1 > 0, and
  /// Error(InvalidArgument) for a Custom kind without a term.
  ComplexFluidModel(DerivativeKind kind, double eta_s, double eta_p, double lambda1,
                    FreeEnergyKind free_energy = FreeEnergyKind::None, ObjectiveTerm custom = {});

  DerivativeKind kind() const { return kind_; }
  FreeEnergyKind free_energy_kind() const { return free_energy_kind_; }
  double eta_s() const { return eta_s_; }
  double eta_p() const { return eta_p_; }
  double lambda1() const { return lambda1_; }
  std::string name() const;
  ComplexFluidModel with_free_energy(FreeEnergyKind kind) const;

  Mat3 objective_term(const Mat3& sigma, const Mat3& h) const;
  /// Rate of xi. xi may be a general matrix so that symmetry preservation
  /// can be observed.
  Mat3 flow(const Mat3& h, const Mat3& xi) const;
  Sym3 flow(const EulerianState& s) const;
  /// 2 eta_s d + xi.
  Mat3 stress(const Mat3& h, const Mat3& xi) const;
  /// sigma : d.
  double raw_dissipation(const Mat3& h, const Mat3& xi) const;
  /// Zero when the free energy kind is None.
  double free_energy(const Mat3& xi) const;
  Mat3 free_energy_gradient(const Mat3& xi) const;
  /// sigma : d - da/dxi : xi'.
  double augmented_dissipation(const Mat3& h, const Mat3& xi) const;

 private:
  DerivativeKind kind_;
  double eta_s_, eta_p_, lambda1_;
  FreeEnergyKind free_energy_kind_;
  ObjectiveTerm custom_;
};

/// Lagrangian view of a complex fluid with Xi = xi packed as the six entries
/// of a Sym3 (xx, yy, zz, xy, yz, xz). With h = H F^-1 and J = det F:
/// A = (J / P) a(xi), T_Rd = J sigma F^-T, K = xi'. Then
/// T_Rd : H - P dA/dXi . K = J (sigma : d - da/dxi : xi').
std::shared_ptr<const MaterialModel> complex_fluid_as_internal_variable(const ComplexFluidModel& fluid,
                                                                        double rho_ref = 1.0);

Sym3 unpack_sym(std::span<const double> xi);
std::vector<double> pack_sym(const Sym3& s);

}  // namespace thermovisc
