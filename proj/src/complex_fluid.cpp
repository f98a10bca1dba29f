#include "thermovisc/complex_fluid.hpp"

#include <cmath>

namespace thermovisc {

namespace {

Mat3 sym_mat(const Mat3& m) { return 0.5 * (m + transpose(m)); }

}  // namespace

ObjectiveTerm gordon_schowalter(double a) {
  return [a](const Mat3& s, const Mat3& h) {
    const Mat3 d = sym_mat(h);
    const Mat3 w = skew_part(h);
    return s * w - w * s - a * (d * s + s * d);
  };
}

double zj_free_energy(const Mat3& xi, double lambda1, double eta_p) {
  return lambda1 / (4.0 * eta_p) * ddot(xi, xi);
}

Mat3 zj_free_energy_gradient(const Mat3& xi, double lambda1, double eta_p) {
  return (lambda1 / (2.0 * eta_p)) * xi;
}

ComplexFluidModel::ComplexFluidModel(DerivativeKind kind, double eta_s, double eta_p, double lambda1,
                                     FreeEnergyKind free_energy, ObjectiveTerm custom)
    : kind_(kind),
      eta_s_(eta_s),
      eta_p_(eta_p),
      lambda1_(lambda1),
      free_energy_kind_(free_energy),
      custom_(std::move(custom)) {
  if (!(eta_s > 0.0) || !(eta_p > 0.0) || !(lambda1 > 0.0))
    throw Error(ErrorKind::InvalidParams, "complex fluid needs eta_s, eta_p, lambda1 > 0");
  if (kind == DerivativeKind::Custom && !custom_)
    throw Error(ErrorKind::InvalidArgument, "custom objective derivative needs a term");
}

std::string ComplexFluidModel::name() const {
  switch (kind_) {
    case DerivativeKind::OldroydB: return "oldroyd-b";
    case DerivativeKind::ZarembaJaumann: return "zaremba-jaumann";
    case DerivativeKind::Custom: return "custom";
  }
  return "complex-fluid";
}

ComplexFluidModel ComplexFluidModel::with_free_energy(FreeEnergyKind kind) const {
  ComplexFluidModel m = *this;
  m.free_energy_kind_ = kind;
  return m;
}

Mat3 ComplexFluidModel::objective_term(const Mat3& sigma, const Mat3& h) const {
  switch (kind_) {
    case DerivativeKind::OldroydB: return -(h * sigma) - sigma * transpose(h);
    case DerivativeKind::ZarembaJaumann: {
      const Mat3 w = skew_part(h);
      return sigma * w - w * sigma;
    }
    case DerivativeKind::Custom: return custom_(sigma, h);
  }
  return Mat3::zero();
}

Mat3 ComplexFluidModel::flow(const Mat3& h, const Mat3& xi) const {
  const Mat3 d = sym_mat(h);
  return -objective_term(xi, h) + (1.0 / lambda1_) * (2.0 * eta_p_ * d - xi);
}

Sym3 ComplexFluidModel::flow(const EulerianState& s) const { return Sym3::sym_of(flow(s.h, s.xi.to_mat())); }

Mat3 ComplexFluidModel::stress(const Mat3& h, const Mat3& xi) const { return 2.0 * eta_s_ * sym_mat(h) + xi; }

double ComplexFluidModel::raw_dissipation(const Mat3& h, const Mat3& xi) const {
  return ddot(stress(h, xi), sym_mat(h));
}

double ComplexFluidModel::free_energy(const Mat3& xi) const {
  return free_energy_kind_ == FreeEnergyKind::ZjQuadratic ? zj_free_energy(xi, lambda1_, eta_p_) : 0.0;
}

Mat3 ComplexFluidModel::free_energy_gradient(const Mat3& xi) const {
  return free_energy_kind_ == FreeEnergyKind::ZjQuadratic ? zj_free_energy_gradient(xi, lambda1_, eta_p_)
                                                          : Mat3::zero();
}

double ComplexFluidModel::augmented_dissipation(const Mat3& h, const Mat3& xi) const {
  const double raw = raw_dissipation(h, xi);
  if (free_energy_kind_ == FreeEnergyKind::None) return raw;
  return raw - ddot(free_energy_gradient(xi), flow(h, xi));
}

Sym3 unpack_sym(std::span<const double> xi) {
  if (xi.size() != 6) throw Error(ErrorKind::DimensionMismatch, "packed symmetric tensor needs 6 entries");
  Sym3 s;
  for (std::size_t i = 0; i < 6; ++i) s.s[i] = xi[i];
  return s;
}

std::vector<double> pack_sym(const Sym3& s) { return {s.s.begin(), s.s.end()}; }

namespace {

class ComplexFluidAdapter final : public MaterialModel {
 public:
  ComplexFluidAdapter(ComplexFluidModel fluid, double rho) : fluid_(std::move(fluid)), rho_(rho) {}

  std::string name() const override { return fluid_.name() + "-internal"; }
  ModelDims dims() const override { return {6, 0}; }
  double reference_density() const override { return rho_; }
  SymmetryClass symmetry_class() const override { return SymmetryClass::Fluid; }

  double free_energy(const Mat3& F, double, std::span<const double> xi) const override {
    return det(F) / rho_ * fluid_.free_energy(unpack_sym(xi).to_mat());
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double, std::span<const double> xi) const override {
    return (fluid_.free_energy(unpack_sym(xi).to_mat()) / rho_) * cofactor(F);
  }
  std::optional<double> free_energy_dtheta(const Mat3&, double, std::span<const double>) const override {
    return 0.0;
  }
  std::optional<std::vector<double>> free_energy_dxi(const Mat3& F, double,
                                                     std::span<const double> xi) const override {
    const Mat3 g = (det(F) / rho_) * fluid_.free_energy_gradient(unpack_sym(xi).to_mat());
    return std::vector<double>{g(0, 0), g(1, 1), g(2, 2), 2.0 * g(0, 1), 2.0 * g(1, 2), 2.0 * g(0, 2)};
  }
  Mat3 dissipative_stress(const ThermoState& s) const override {
    const Mat3 Finv = inverse(s.F);
    return det(s.F) * (fluid_.stress(s.H * Finv, unpack_sym(s.xi).to_mat()) * transpose(Finv));
  }
  std::vector<double> flow_rule(const ThermoState& s) const override {
    const Mat3 h = s.H * inverse(s.F);
    return pack_sym(Sym3::sym_of(fluid_.flow(h, unpack_sym(s.xi).to_mat())));
  }

 private:
  ComplexFluidModel fluid_;
  double rho_;
};

}  // namespace

std::shared_ptr<const MaterialModel> complex_fluid_as_internal_variable(const ComplexFluidModel& fluid,
                                                                        double rho_ref) {
  if (!(rho_ref > 0.0)) throw Error(ErrorKind::InvalidParams, "rho_ref must be > 0");
  return std::make_shared<ComplexFluidAdapter>(fluid, rho_ref);
}

}  // namespace thermovisc
