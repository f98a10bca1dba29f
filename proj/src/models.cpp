#include "thermovisc/models.hpp"

#include <cmath>

#include "thermovisc/numdiff.hpp"

namespace thermovisc {

namespace {

Mat3 sym_mat(const Mat3& m) { return 0.5 * (m + transpose(m)); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidParams, std::string(what) + " must be > 0");
}

}  // namespace

// ---------------------------------------------------------------- stored energies

Mat3 stored_energy_gradient(const StoredEnergy& W, const Mat3& F) {
  if (auto g = W.gradient(F)) return *g;
  return central_gradient([&](const Mat3& f) { return W.value(f); }, F);
}

namespace {

class StVenantKirchhoff final : public StoredEnergy {
 public:
  StVenantKirchhoff(double lame, double mu) : lame_(lame), mu_(mu) {}

  std::string name() const override { return "svk"; }

  double value(const Mat3& F) const override {
    const Mat3 E = green_lagrange(F);
    const double tr = trace(E);
    return 0.5 * lame_ * tr * tr + mu_ * ddot(E, E);
  }

  std::optional<Mat3> gradient(const Mat3& F) const override {
    const Mat3 E = green_lagrange(F);
    const Mat3 S = lame_ * trace(E) * Mat3::identity() + 2.0 * mu_ * E;
    return F * S;
  }

 private:
  static Mat3 green_lagrange(const Mat3& F) { return 0.5 * (transpose(F) * F - Mat3::identity()); }

  double lame_;
  double mu_;
};

}  // namespace

std::shared_ptr<const StoredEnergy> stvenant_kirchhoff(double lame, double mu) {
  require_positive(mu, "mu");
  if (!(3.0 * lame + 2.0 * mu > 0.0)) throw Error(ErrorKind::InvalidParams, "need 3 lame + 2 mu > 0");
  return std::make_shared<StVenantKirchhoff>(lame, mu);
}

double thermal_energy(double c, double theta) { return c == 0.0 ? 0.0 : -c * theta * std::log(theta); }
double thermal_energy_dtheta(double c, double theta) { return c == 0.0 ? 0.0 : -c * (std::log(theta) + 1.0); }

// ---------------------------------------------------------------- thermo-elastic

namespace {

class ElasticModel final : public MaterialModel {
 public:
  ElasticModel(std::shared_ptr<const StoredEnergy> W, double rho, double c, std::string name)
      : W_(std::move(W)), rho_(rho), c_(c), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  double reference_density() const override { return rho_; }
  double free_energy(const Mat3& F, double theta, std::span<const double>) const override {
    return W_->value(F) / rho_ + thermal_energy(c_, theta);
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double, std::span<const double>) const override {
    return (1.0 / rho_) * stored_energy_gradient(*W_, F);
  }
  std::optional<double> free_energy_dtheta(const Mat3&, double theta, std::span<const double>) const override {
    return thermal_energy_dtheta(c_, theta);
  }
  SymmetryClass symmetry_class() const override { return SymmetryClass::Solid; }

 private:
  std::shared_ptr<const StoredEnergy> W_;
  double rho_, c_;
  std::string name_;
};

class PerfectGas final : public MaterialModel {
 public:
  PerfectGas(double r, double c, double rho) : r_(r), c_(c), rho_(rho) {}

  std::string name() const override { return "perfect-gas"; }
  double reference_density() const override { return rho_; }
  double free_energy(const Mat3& F, double theta, std::span<const double>) const override {
    return -r_ * theta * std::log(det(F)) / rho_ + thermal_energy(c_, theta);
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double theta, std::span<const double>) const override {
    return (-r_ * theta / rho_) * inverse_transpose(F);
  }
  std::optional<double> free_energy_dtheta(const Mat3& F, double theta, std::span<const double>) const override {
    return -r_ * std::log(det(F)) / rho_ + thermal_energy_dtheta(c_, theta);
  }
  SymmetryClass symmetry_class() const override { return SymmetryClass::Fluid; }

 private:
  double r_, c_, rho_;
};

}  // namespace

std::shared_ptr<const MaterialModel> elastic_model(std::shared_ptr<const StoredEnergy> W, double rho_ref,
                                                   double heat_capacity, std::string name) {
  if (!W) throw Error(ErrorKind::InvalidArgument, "elastic_model needs a stored energy");
  require_positive(rho_ref, "rho_ref");
  return std::make_shared<ElasticModel>(std::move(W), rho_ref, heat_capacity, std::move(name));
}

std::shared_ptr<const MaterialModel> perfect_gas(double r, double heat_capacity, double rho_ref) {
  require_positive(r, "gas_constant");
  require_positive(rho_ref, "rho_ref");
  return std::make_shared<PerfectGas>(r, heat_capacity, rho_ref);
}

// ---------------------------------------------------------------- viscous fluids

namespace {

// Base for models whose free energy is purely thermal.
class ThermalOnlyModel : public MaterialModel {
 public:
  ThermalOnlyModel(double c, double rho) : c_(c), rho_(rho) {}

  double reference_density() const override { return rho_; }
  double free_energy(const Mat3&, double theta, std::span<const double>) const override {
    return thermal_energy(c_, theta);
  }
  std::optional<Mat3> free_energy_dF(const Mat3&, double, std::span<const double>) const override {
    return Mat3::zero();
  }
  std::optional<double> free_energy_dtheta(const Mat3&, double theta, std::span<const double>) const override {
    return thermal_energy_dtheta(c_, theta);
  }
  SymmetryClass symmetry_class() const override { return SymmetryClass::Fluid; }

 protected:
  double c_, rho_;
};

class NewtonianModel final : public ThermalOnlyModel {
 public:
  NewtonianModel(double nu, double c, double rho) : ThermalOnlyModel(c, rho), nu_(nu) {}

  std::string name() const override { return "newtonian"; }
  Mat3 dissipative_stress(const ThermoState& s) const override {
    const Mat3 Finv = inverse(s.F);
    const Mat3 FinvT = transpose(Finv);
    const Mat3 Cinv = Finv * FinvT;
    return nu_ * det(s.F) * (s.H * Cinv + FinvT * transpose(s.H) * FinvT);
  }
  std::shared_ptr<const DissipationPotential> potential() const override { return newtonian_potential(nu_); }

 private:
  double nu_;
};

class ViscousFluid final : public ThermalOnlyModel {
 public:
  ViscousFluid(ReinerRivlinLaw law, double c, double rho, std::string name)
      : ThermalOnlyModel(c, rho), law_(std::move(law)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  Mat3 dissipative_stress(const ThermoState& s) const override {
    const double J = det(s.F);
    const Mat3 Finv = inverse(s.F);
    const Sym3 d = Sym3::sym_of(s.H * Finv);
    const Sym3 sigma = law_.cauchy(rho_ / J, d, s.theta);
    return J * (sigma.to_mat() * transpose(Finv));
  }

 private:
  ReinerRivlinLaw law_;
  std::string name_;
};

}  // namespace

std::shared_ptr<const MaterialModel> newtonian(double nu, double heat_capacity, double rho_ref) {
  require_positive(nu, "nu");
  require_positive(rho_ref, "rho_ref");
  return std::make_shared<NewtonianModel>(nu, heat_capacity, rho_ref);
}

Sym3 ReinerRivlinLaw::cauchy(double rho, const Sym3& d, double theta) const {
  const auto [i1, i2, i3] = principal_invariants(d);
  const std::array<double, 3> iota{i1, i2, i3};
  const double b0 = beta0 ? beta0(rho, iota, theta) : 0.0;
  const double b1 = beta1 ? beta1(rho, iota, theta) : 0.0;
  const double b2 = beta2 ? beta2(rho, iota, theta) : 0.0;
  return b0 * Sym3::identity() + b1 * d + b2 * square(d);
}

ReinerRivlinLaw reiner_rivlin(ReinerRivlinCoefficient beta0, ReinerRivlinCoefficient beta1,
                              ReinerRivlinCoefficient beta2) {
  return ReinerRivlinLaw{std::move(beta0), std::move(beta1), std::move(beta2)};
}

ReinerRivlinLaw example_reiner_rivlin(double nu, double b) {
  require_positive(nu, "nu");
  if (!(b >= 0.0)) throw Error(ErrorKind::InvalidParams, "rr_nonlinear must be >= 0");
  // |d|^2 = tr(d^2) = i1^2 - 2 i2.
  auto beta1 = [nu, b](double, const std::array<double, 3>& i, double) {
    return 2.0 * nu + b * std::sqrt(std::max(0.0, i[0] * i[0] - 2.0 * i[1]));
  };
  auto beta2 = [b](double, const std::array<double, 3>&, double) { return b; };
  return reiner_rivlin({}, beta1, beta2);
}

std::shared_ptr<const MaterialModel> viscous_fluid(ReinerRivlinLaw law, double heat_capacity, double rho_ref,
                                                   std::string name) {
  require_positive(rho_ref, "rho_ref");
  return std::make_shared<ViscousFluid>(std::move(law), heat_capacity, rho_ref, std::move(name));
}

// ---------------------------------------------------------------- Maxwell family

namespace {

class MaxwellFamily : public MaterialModel {
 public:
  MaxwellFamily(std::shared_ptr<const StoredEnergy> W0, std::vector<std::shared_ptr<const StoredEnergy>> Ws,
                double kappa, MaxwellVariant variant, double rho, std::string name)
      : W0_(std::move(W0)), Ws_(std::move(Ws)), kappa_(kappa), variant_(variant), rho_(rho), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  ModelDims dims() const override { return {9 * Ws_.size(), 0}; }
  double reference_density() const override { return rho_; }
  std::size_t strain_blocks() const override { return Ws_.size(); }
  SymmetryClass symmetry_class() const override {
    return variant_ == MaxwellVariant::Fluid && !W0_ ? SymmetryClass::Fluid : SymmetryClass::Solid;
  }

  double free_energy(const Mat3& F, double, std::span<const double> xi) const override {
    check_xi(xi);
    double a = W0_ ? W0_->value(F) : 0.0;
    for (std::size_t b = 0; b < Ws_.size(); ++b) a += Ws_[b]->value(F * inverse(block(xi.data() + 9 * b)));
    return a / rho_;
  }

  std::optional<Mat3> free_energy_dF(const Mat3& F, double, std::span<const double> xi) const override {
    check_xi(xi);
    Mat3 g = W0_ ? stored_energy_gradient(*W0_, F) : Mat3::zero();
    for (std::size_t b = 0; b < Ws_.size(); ++b) {
      const Mat3 FiInv = inverse(block(xi.data() + 9 * b));
      g += stored_energy_gradient(*Ws_[b], F * FiInv) * transpose(FiInv);
    }
    return (1.0 / rho_) * g;
  }

  std::optional<double> free_energy_dtheta(const Mat3&, double, std::span<const double>) const override {
    return 0.0;
  }

  std::optional<std::vector<double>> free_energy_dxi(const Mat3& F, double,
                                                     std::span<const double> xi) const override {
    check_xi(xi);
    std::vector<double> g(xi.size());
    for (std::size_t b = 0; b < Ws_.size(); ++b) put_block(g.data() + 9 * b, branch_force(F, xi, b));
    return g;
  }

  std::vector<double> flow_rule(const ThermoState& s) const override {
    check_xi(s.xi);
    std::vector<double> k(s.xi.size());
    const Mat3 C = transpose(s.F) * s.F;
    for (std::size_t b = 0; b < Ws_.size(); ++b) {
      Mat3 K = (-kappa_ / rho_) * branch_force(s.F, s.xi, b);
      if (variant_ == MaxwellVariant::Fluid) K = K * C;
      put_block(k.data() + 9 * b, K);
    }
    return k;
  }

  std::shared_ptr<const DissipationPotential> potential() const override {
    if (variant_ == MaxwellVariant::Fluid) return fluid_flow_potential(kappa_, Ws_.size());
    return quadratic_flow_potential(kappa_, 9 * Ws_.size());
  }

 protected:
  void check_xi(std::span<const double> xi) const {
    if (xi.size() != 9 * Ws_.size()) throw Error(ErrorKind::DimensionMismatch, name_ + ": Xi must hold F_i blocks");
  }

  // dA/dF_i for branch b: -(1/P) F_i^-T F^T W'(F F_i^-1) F_i^-T.
  Mat3 branch_force(const Mat3& F, std::span<const double> xi, std::size_t b) const {
    const Mat3 FiInv = inverse(block(xi.data() + 9 * b));
    const Mat3 FiInvT = transpose(FiInv);
    const Mat3 Wp = stored_energy_gradient(*Ws_[b], F * FiInv);
    return (-1.0 / rho_) * (FiInvT * transpose(F) * Wp * FiInvT);
  }

  std::shared_ptr<const StoredEnergy> W0_;
  std::vector<std::shared_ptr<const StoredEnergy>> Ws_;
  double kappa_;
  MaxwellVariant variant_;
  double rho_;
  std::string name_;
};

class KelvinVoigt3d final : public MaterialModel {
 public:
  KelvinVoigt3d(std::shared_ptr<const StoredEnergy> W, double nu, double rho, double c)
      : W_(std::move(W)), nu_(nu), rho_(rho), c_(c) {}

  std::string name() const override { return "kelvin-voigt3d"; }
  double reference_density() const override { return rho_; }
  double free_energy(const Mat3& F, double theta, std::span<const double>) const override {
    return W_->value(F) / rho_ + thermal_energy(c_, theta);
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double, std::span<const double>) const override {
    return (1.0 / rho_) * stored_energy_gradient(*W_, F);
  }
  std::optional<double> free_energy_dtheta(const Mat3&, double theta, std::span<const double>) const override {
    return thermal_energy_dtheta(c_, theta);
  }
  Mat3 dissipative_stress(const ThermoState& s) const override {
    const Mat3 Finv = inverse(s.F);
    return nu_ * (sym_mat(s.H * Finv) * transpose(Finv));
  }
  SymmetryClass symmetry_class() const override { return SymmetryClass::Solid; }
  std::shared_ptr<const DissipationPotential> potential() const override { return kelvin_voigt_potential(nu_); }

 private:
  std::shared_ptr<const StoredEnergy> W_;
  double nu_, rho_, c_;
};

}  // namespace

std::shared_ptr<const MaterialModel> maxwell3d(std::shared_ptr<const StoredEnergy> W, double kappa,
                                               MaxwellVariant variant, double rho_ref, std::string name) {
  if (!W) throw Error(ErrorKind::InvalidArgument, "maxwell3d needs a stored energy");
  if (!(kappa >= 0.0)) throw Error(ErrorKind::InvalidParams, "kappa must be >= 0");
  require_positive(rho_ref, "rho_ref");
  if (name.empty()) name = variant == MaxwellVariant::Solid ? "maxwell3d" : "maxwell3d-fluid";
  return std::make_shared<MaxwellFamily>(nullptr, std::vector{std::move(W)}, kappa, variant, rho_ref,
                                         std::move(name));
}

std::shared_ptr<const MaterialModel> kelvin_voigt3d(std::shared_ptr<const StoredEnergy> W, double nu,
                                                    double rho_ref, double heat_capacity) {
  if (!W) throw Error(ErrorKind::InvalidArgument, "kelvin_voigt3d needs a stored energy");
  require_positive(nu, "nu");
  require_positive(rho_ref, "rho_ref");
  return std::make_shared<KelvinVoigt3d>(std::move(W), nu, rho_ref, heat_capacity);
}

std::shared_ptr<const MaterialModel> generalized_maxwell3d(std::shared_ptr<const StoredEnergy> W0,
                                                           std::vector<std::shared_ptr<const StoredEnergy>> branches,
                                                           double kappa, double rho_ref) {
  if (branches.empty()) throw Error(ErrorKind::InvalidParams, "generalized_maxwell3d needs at least one branch");
  for (const auto& w : branches)
    if (!w) throw Error(ErrorKind::InvalidArgument, "null branch energy");
  require_positive(kappa, "kappa");
  require_positive(rho_ref, "rho_ref");
  return std::make_shared<MaxwellFamily>(std::move(W0), std::move(branches), kappa, MaxwellVariant::Solid, rho_ref,
                                         "generalized-maxwell3d");
}

// ---------------------------------------------------------------- dissipation potentials

namespace {

class NewtonianPotential final : public DissipationPotential {
 public:
  explicit NewtonianPotential(double nu) : nu_(nu) {}
  std::string name() const override { return "newtonian"; }
  double value(const Mat3& F, const Mat3& H, double, std::span<const double>,
               std::span<const double>) const override {
    const Mat3 d = sym_mat(H * inverse(F));
    return nu_ * det(F) * ddot(d, d);
  }
  std::optional<Mat3> dH(const Mat3& F, const Mat3& H, double, std::span<const double>,
                         std::span<const double>) const override {
    const Mat3 Finv = inverse(F);
    return 2.0 * nu_ * det(F) * (sym_mat(H * Finv) * transpose(Finv));
  }

 private:
  double nu_;
};

class CoupledRatePotential final : public DissipationPotential {
 public:
  explicit CoupledRatePotential(double nu) : nu_(nu) {}
  std::string name() const override { return "coupled-rate"; }
  double value(const Mat3& F, const Mat3& H, double, std::span<const double>,
               std::span<const double>) const override {
    const Mat3 A = rate(F, H);
    return 0.5 * nu_ * det(F) * ddot(A, A);
  }
  std::optional<Mat3> dH(const Mat3& F, const Mat3& H, double, std::span<const double>,
                         std::span<const double>) const override {
    const Mat3 Finv = inverse(F);
    const Mat3 FinvT = transpose(Finv);
    const Mat3 A = rate(F, H);
    return nu_ * det(F) * (A * (Finv * FinvT) + FinvT * transpose(A) * FinvT);
  }

 private:
  static Mat3 rate(const Mat3& F, const Mat3& H) {
    const Mat3 Finv = inverse(F);
    const Mat3 FinvT = transpose(Finv);
    return H * (Finv * FinvT) + FinvT * transpose(H) * FinvT;
  }
  double nu_;
};

class KelvinVoigtPotential final : public DissipationPotential {
 public:
  explicit KelvinVoigtPotential(double nu) : nu_(nu) {}
  std::string name() const override { return "kelvin-voigt"; }
  double value(const Mat3& F, const Mat3& H, double, std::span<const double>,
               std::span<const double>) const override {
    const Mat3 d = sym_mat(H * inverse(F));
    return 0.5 * nu_ * ddot(d, d);
  }
  std::optional<Mat3> dH(const Mat3& F, const Mat3& H, double, std::span<const double>,
                         std::span<const double>) const override {
    const Mat3 Finv = inverse(F);
    return nu_ * (sym_mat(H * Finv) * transpose(Finv));
  }

 private:
  double nu_;
};

class QuadraticFlowPotential final : public DissipationPotential {
 public:
  QuadraticFlowPotential(double kappa, std::size_t dim) : kappa_(kappa), dim_(dim) {}
  std::string name() const override { return "quadratic-flow"; }
  std::size_t lambda_dim() const override { return dim_; }
  double value(const Mat3&, const Mat3&, double, std::span<const double>,
               std::span<const double> l) const override {
    double s = 0.0;
    for (double x : l) s += x * x;
    return 0.5 * kappa_ * s;
  }
  std::optional<Mat3> dH(const Mat3&, const Mat3&, double, std::span<const double>,
                         std::span<const double>) const override {
    return Mat3::zero();
  }
  std::optional<std::vector<double>> dLambda(const Mat3&, const Mat3&, double, std::span<const double>,
                                             std::span<const double> l) const override {
    std::vector<double> g(l.begin(), l.end());
    for (double& x : g) x *= kappa_;
    return g;
  }

 private:
  double kappa_;
  std::size_t dim_;
};

class FluidFlowPotential final : public DissipationPotential {
 public:
  FluidFlowPotential(double kappa, std::size_t blocks) : kappa_(kappa), blocks_(blocks) {}
  std::string name() const override { return "fluid-flow"; }
  std::size_t lambda_dim() const override { return 9 * blocks_; }
  double value(const Mat3& F, const Mat3&, double, std::span<const double>,
               std::span<const double> l) const override {
    check(l);
    const Mat3 FT = transpose(F);
    double s = 0.0;
    for (std::size_t b = 0; b < blocks_; ++b) {
      const Mat3 m = block(l.data() + 9 * b) * FT;
      s += ddot(m, m);
    }
    return 0.5 * kappa_ * s;
  }
  std::optional<Mat3> dH(const Mat3&, const Mat3&, double, std::span<const double>,
                         std::span<const double>) const override {
    return Mat3::zero();
  }
  std::optional<std::vector<double>> dLambda(const Mat3& F, const Mat3&, double, std::span<const double>,
                                             std::span<const double> l) const override {
    check(l);
    const Mat3 C = transpose(F) * F;
    std::vector<double> g(l.size());
    for (std::size_t b = 0; b < blocks_; ++b) put_block(g.data() + 9 * b, kappa_ * (block(l.data() + 9 * b) * C));
    return g;
  }

 private:
  void check(std::span<const double> l) const {
    if (l.size() != 9 * blocks_) throw Error(ErrorKind::DimensionMismatch, "fluid-flow potential Lambda length");
  }
  double kappa_;
  std::size_t blocks_;
};

class SumPotential final : public DissipationPotential {
 public:
  SumPotential(std::shared_ptr<const DissipationPotential> a, std::shared_ptr<const DissipationPotential> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return a_->name() + "+" + b_->name(); }
  std::size_t lambda_dim() const override { return std::max(a_->lambda_dim(), b_->lambda_dim()); }
  double value(const Mat3& F, const Mat3& H, double t, std::span<const double> pi,
               std::span<const double> l) const override {
    return a_->value(F, H, t, pi, part(*a_, l)) + b_->value(F, H, t, pi, part(*b_, l));
  }
  std::optional<Mat3> dH(const Mat3& F, const Mat3& H, double t, std::span<const double> pi,
                         std::span<const double> l) const override {
    return potential_dH(*a_, F, H, t, pi, part(*a_, l)) + potential_dH(*b_, F, H, t, pi, part(*b_, l));
  }
  std::optional<std::vector<double>> dLambda(const Mat3& F, const Mat3& H, double t, std::span<const double> pi,
                                             std::span<const double> l) const override {
    std::vector<double> g(l.size(), 0.0);
    for (const auto* p : {a_.get(), b_.get()}) {
      if (p->lambda_dim() == 0) continue;
      const auto gp = potential_dLambda(*p, F, H, t, pi, l);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += gp[i];
    }
    return g;
  }

 private:
  static std::span<const double> part(const DissipationPotential& p, std::span<const double> l) {
    return p.lambda_dim() == 0 ? std::span<const double>{} : l;
  }
  std::shared_ptr<const DissipationPotential> a_, b_;
};

class ConcavePotential final : public DissipationPotential {
 public:
  std::string name() const override { return "concave"; }
  double value(const Mat3&, const Mat3& H, double, std::span<const double>,
               std::span<const double>) const override {
    return -ddot(H, H);
  }
  std::optional<Mat3> dH(const Mat3&, const Mat3& H, double, std::span<const double>,
                         std::span<const double>) const override {
    return -2.0 * H;
  }
};

}  // namespace

std::shared_ptr<const DissipationPotential> newtonian_potential(double nu) {
  require_positive(nu, "nu");
  return std::make_shared<NewtonianPotential>(nu);
}

std::shared_ptr<const DissipationPotential> coupled_rate_potential(double nu) {
  require_positive(nu, "nu");
  return std::make_shared<CoupledRatePotential>(nu);
}

std::shared_ptr<const DissipationPotential> kelvin_voigt_potential(double nu) {
  require_positive(nu, "nu");
  return std::make_shared<KelvinVoigtPotential>(nu);
}

std::shared_ptr<const DissipationPotential> quadratic_flow_potential(double kappa, std::size_t dim) {
  if (!(kappa >= 0.0)) throw Error(ErrorKind::InvalidParams, "kappa must be >= 0");
  return std::make_shared<QuadraticFlowPotential>(kappa, dim);
}

std::shared_ptr<const DissipationPotential> fluid_flow_potential(double kappa, std::size_t blocks) {
  if (!(kappa >= 0.0)) throw Error(ErrorKind::InvalidParams, "kappa must be >= 0");
  return std::make_shared<FluidFlowPotential>(kappa, blocks);
}

std::shared_ptr<const DissipationPotential> sum_potential(std::shared_ptr<const DissipationPotential> a,
                                                          std::shared_ptr<const DissipationPotential> b) {
  if (!a || !b) throw Error(ErrorKind::InvalidArgument, "sum_potential needs two potentials");
  if (a->lambda_dim() && b->lambda_dim() && a->lambda_dim() != b->lambda_dim())
    throw Error(ErrorKind::DimensionMismatch, "summed potentials disagree on Lambda length");
  return std::make_shared<SumPotential>(std::move(a), std::move(b));
}

std::shared_ptr<const DissipationPotential> concave_potential() { return std::make_shared<ConcavePotential>(); }

// ---------------------------------------------------------------- counterexamples

std::shared_ptr<const MaterialModel> counterexample_h() {
  LambdaModelSpec spec;
  spec.name = "counterexample-h";
  spec.dissipative_stress = [](const ThermoState& s) { return s.H; };
  return lambda_model(std::move(spec));
}

std::shared_ptr<const MaterialModel> counterexample_skew(const Mat3& W0) {
  if (max_abs(W0 + transpose(W0)) > 0.0 || max_abs(W0) == 0.0)
    throw Error(ErrorKind::InvalidArgument, "counterexample_skew needs a nonzero skew matrix");
  LambdaModelSpec spec;
  spec.name = "counterexample-skew";
  spec.dissipative_stress = [W0](const ThermoState& s) { return s.F * W0; };
  return lambda_model(std::move(spec));
}

namespace {

class BrokenFlowMaxwell final : public MaxwellFamily {
 public:
  explicit BrokenFlowMaxwell(std::shared_ptr<const StoredEnergy> W)
      : MaxwellFamily(nullptr, {std::move(W)}, 1.0, MaxwellVariant::Solid, 1.0, "counterexample-flow") {}

  std::vector<double> flow_rule(const ThermoState& s) const override {
    check_xi(s.xi);
    return {s.F.a.begin(), s.F.a.end()};
  }
  std::shared_ptr<const DissipationPotential> potential() const override { return nullptr; }
};

}  // namespace

std::shared_ptr<const MaterialModel> counterexample_flow(std::shared_ptr<const StoredEnergy> W) {
  if (!W) throw Error(ErrorKind::InvalidArgument, "counterexample_flow needs a stored energy");
  return std::make_shared<BrokenFlowMaxwell>(std::move(W));
}

// ---------------------------------------------------------------- 0d prototypes

namespace {

void check_zero_d(const ZeroDModel& m) {
  if (m.mu.empty() || m.mu.size() != m.nu.size())
    throw Error(ErrorKind::InvalidParams, "0d model needs matching springs and dashpots");
  for (double x : m.mu) require_positive(x, "mu");
  for (double x : m.nu) require_positive(x, "nu");
  if (!(m.mu0 >= 0.0)) throw Error(ErrorKind::InvalidParams, "mu0 must be >= 0");
}

}  // namespace

ZeroDModel maxwell0d(double mu, double nu) {
  ZeroDModel m{ZeroDKind::Maxwell, 0.0, {mu}, {nu}};
  check_zero_d(m);
  return m;
}

ZeroDModel kelvin_voigt0d(double mu, double nu) {
  ZeroDModel m{ZeroDKind::KelvinVoigt, 0.0, {mu}, {nu}};
  check_zero_d(m);
  return m;
}

ZeroDModel generalized_maxwell0d(double mu0, std::vector<double> mu, std::vector<double> nu) {
  ZeroDModel m{ZeroDKind::GeneralizedMaxwell, mu0, std::move(mu), std::move(nu)};
  check_zero_d(m);
  return m;
}

std::vector<double> ZeroDModel::rhs(double load, const std::vector<double>& y) const {
  std::vector<double> dy(y.size());
  if (kind == ZeroDKind::KelvinVoigt) {
    dy[0] = (load - mu[0] * y[0]) / nu[0];
    return dy;
  }
  for (std::size_t k = 0; k < y.size(); ++k) dy[k] = mu[k] / nu[k] * (load - y[k]);
  return dy;
}

double ZeroDModel::response(double load, const std::vector<double>& y) const {
  if (kind == ZeroDKind::KelvinVoigt) return y[0];
  double f = mu0 * load;
  for (std::size_t k = 0; k < y.size(); ++k) f += mu[k] * (load - y[k]);
  return f;
}

double ZeroDModel::free_energy(double load, const std::vector<double>& y) const {
  if (kind == ZeroDKind::KelvinVoigt) return 0.5 * mu[0] * y[0] * y[0];
  double a = 0.5 * mu0 * load * load;
  for (std::size_t k = 0; k < y.size(); ++k) a += 0.5 * mu[k] * (load - y[k]) * (load - y[k]);
  return a;
}

double ZeroDModel::dissipation(double load, const std::vector<double>& y) const {
  const auto dy = rhs(load, y);
  double d = 0.0;
  for (std::size_t k = 0; k < dy.size(); ++k) d += nu[k] * dy[k] * dy[k];
  return d;
}

double ZeroDModel::response_exact(double load, const std::vector<double>& y0, double t) const {
  if (kind == ZeroDKind::KelvinVoigt) {
    const double eq = load / mu[0];
    return eq + (y0[0] - eq) * std::exp(-mu[0] * t / nu[0]);
  }
  std::vector<double> y(y0.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = load + (y0[k] - load) * std::exp(-mu[k] * t / nu[k]);
  return response(load, y);
}

}  // namespace thermovisc
