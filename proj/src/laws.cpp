#include "thermovisc/laws.hpp"

#include <cmath>
#include <sstream>

#include "thermovisc/numdiff.hpp"

namespace thermovisc {

std::vector<double> MaterialModel::sample_internal(Rng& rng) const {
  const std::size_t k = dims().k;
  std::vector<double> xi(k);
  const std::size_t nb = strain_blocks();
  for (std::size_t b = 0; b < nb; ++b) put_block(xi.data() + 9 * b, random_defgrad(rng));
  for (std::size_t i = 9 * nb; i < k; ++i) xi[i] = rng.uniform(-1.0, 1.0);
  return xi;
}

std::vector<double> MaterialModel::reference_change(std::span<const double> v, const Mat3& S) const {
  std::vector<double> out(v.begin(), v.end());
  for (std::size_t b = 0; b < strain_blocks(); ++b) put_block(out.data() + 9 * b, block(v.data() + 9 * b) * S);
  return out;
}

void require_admissible(const Mat3& F) {
  const double d = det(F);
  if (!all_finite(F) || !(d >= 1e-12)) {
    std::ostringstream os;
    os << "det F = " << d << " is below 1e-12";
    throw Error(ErrorKind::NonPositiveDeterminant, os.str());
  }
}

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

double dtheta(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi) {
  if (auto a = model.free_energy_dtheta(F, theta, xi)) return *a;
  return central_derivative([&](double t) { return model.free_energy(F, t, xi); }, theta);
}

}  // namespace

double entropy(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi) {
  require_admissible(F);
  return -dtheta(model, F, theta, xi);
}

double internal_energy(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi) {
  return model.free_energy(F, theta, xi) + theta * entropy(model, F, theta, xi);
}

Mat3 free_energy_gradient_F(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi) {
  require_admissible(F);
  if (auto g = model.free_energy_dF(F, theta, xi)) return *g;
  return central_gradient([&](const Mat3& f) { return model.free_energy(f, theta, xi); }, F);
}

std::vector<double> free_energy_gradient_xi(const MaterialModel& model, const Mat3& F, double theta,
                                            std::span<const double> xi) {
  if (xi.empty()) return {};
  if (auto g = model.free_energy_dxi(F, theta, xi)) return *g;
  return central_gradient([&](const std::vector<double>& x) { return model.free_energy(F, theta, x); },
                          to_vec(xi));
}

Mat3 thermoelastic_stress(const MaterialModel& model, const Mat3& F, double theta, std::span<const double> xi) {
  return model.reference_density() * free_energy_gradient_F(model, F, theta, xi);
}

Mat3 total_first_piola(const MaterialModel& model, const ThermoState& state) {
  return thermoelastic_stress(model, state.F, state.theta, state.xi) + model.dissipative_stress(state);
}

Mat3 cauchy_from_piola(const Mat3& TR, const Mat3& F) {
  require_admissible(F);
  return (1.0 / det(F)) * (TR * transpose(F));
}

DissipationTerms dissipation_terms(const MaterialModel& model, const ThermoState& state) {
  require_admissible(state.F);
  DissipationTerms t;
  t.stress_power = ddot(model.dissipative_stress(state), state.H);
  if (model.dims().k > 0) {
    const auto dA = free_energy_gradient_xi(model, state.F, state.theta, state.xi);
    const auto K = model.flow_rule(state);
    if (K.size() != dA.size()) throw Error(ErrorKind::DimensionMismatch, "flow rule length differs from k");
    double s = 0.0;
    for (std::size_t i = 0; i < K.size(); ++i) s += dA[i] * K[i];
    t.internal_power = model.reference_density() * s;
  }
  t.d_int = t.stress_power - t.internal_power;
  return t;
}

double internal_dissipation(const MaterialModel& model, const ThermoState& state) {
  return dissipation_terms(model, state).d_int;
}

double clausius_duhem_lhs(const MaterialModel& model, const ThermoState& state) {
  return internal_dissipation(model, state) - dot(model.heat_flux(state), state.G) / state.theta;
}

Mat3 potential_dH(const DissipationPotential& pot, const Mat3& F, const Mat3& H, double theta,
                  std::span<const double> pi, std::span<const double> lambda) {
  if (auto g = pot.dH(F, H, theta, pi, lambda)) return *g;
  return central_gradient([&](const Mat3& h) { return pot.value(F, h, theta, pi, lambda); }, H);
}

std::vector<double> potential_dLambda(const DissipationPotential& pot, const Mat3& F, const Mat3& H,
                                      double theta, std::span<const double> pi,
                                      std::span<const double> lambda) {
  if (lambda.empty()) return {};
  if (auto g = pot.dLambda(F, H, theta, pi, lambda)) return *g;
  return central_gradient([&](const std::vector<double>& l) { return pot.value(F, H, theta, pi, l); },
                          to_vec(lambda));
}

namespace {

std::vector<double> lambda_for(const DissipationPotential& pot, const MaterialModel& model,
                               const ThermoState& state) {
  if (pot.lambda_dim() == 0) return {};
  auto lambda = free_energy_gradient_xi(model, state.F, state.theta, state.xi);
  if (lambda.size() != pot.lambda_dim())
    throw Error(ErrorKind::DimensionMismatch, "potential " + pot.name() + " expects a different Lambda length");
  return lambda;
}

}  // namespace

Mat3 stress_from_potential(const DissipationPotential& pot, const MaterialModel& model, const ThermoState& state) {
  require_admissible(state.F);
  const auto lambda = lambda_for(pot, model, state);
  return potential_dH(pot, state.F, state.H, state.theta, state.pi, lambda);
}

std::vector<double> flow_from_potential(const DissipationPotential& pot, const MaterialModel& model,
                                        const ThermoState& state) {
  require_admissible(state.F);
  const auto lambda = lambda_for(pot, model, state);
  if (lambda.empty()) return std::vector<double>(model.dims().k, 0.0);
  auto g = potential_dLambda(pot, state.F, state.H, state.theta, state.pi, lambda);
  const double scale = -1.0 / model.reference_density();
  for (double& x : g) x *= scale;
  return g;
}

namespace {

// Forwards everything to a wrapped model; subclasses override what they change.
class ForwardingModel : public MaterialModel {
 public:
  explicit ForwardingModel(std::shared_ptr<const MaterialModel> base) : base_(std::move(base)) {}

  std::string name() const override { return base_->name(); }
  ModelDims dims() const override { return base_->dims(); }
  double reference_density() const override { return base_->reference_density(); }
  double free_energy(const Mat3& F, double theta, std::span<const double> xi) const override {
    return base_->free_energy(F, theta, xi);
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double theta, std::span<const double> xi) const override {
    return base_->free_energy_dF(F, theta, xi);
  }
  std::optional<double> free_energy_dtheta(const Mat3& F, double theta, std::span<const double> xi) const override {
    return base_->free_energy_dtheta(F, theta, xi);
  }
  std::optional<std::vector<double>> free_energy_dxi(const Mat3& F, double theta,
                                                     std::span<const double> xi) const override {
    return base_->free_energy_dxi(F, theta, xi);
  }
  Mat3 dissipative_stress(const ThermoState& s) const override { return base_->dissipative_stress(s); }
  std::vector<double> flow_rule(const ThermoState& s) const override { return base_->flow_rule(s); }
  Vec3 heat_flux(const ThermoState& s) const override { return base_->heat_flux(s); }
  SymmetryClass symmetry_class() const override { return base_->symmetry_class(); }
  std::size_t strain_blocks() const override { return base_->strain_blocks(); }
  std::shared_ptr<const DissipationPotential> potential() const override { return base_->potential(); }
  std::vector<double> sample_internal(Rng& rng) const override { return base_->sample_internal(rng); }
  std::vector<double> reference_change(std::span<const double> v, const Mat3& S) const override {
    return base_->reference_change(v, S);
  }

 protected:
  std::shared_ptr<const MaterialModel> base_;
};

class PotentialModel final : public ForwardingModel {
 public:
  PotentialModel(std::shared_ptr<const MaterialModel> base, std::shared_ptr<const DissipationPotential> pot,
                 std::string name)
      : ForwardingModel(std::move(base)), pot_(std::move(pot)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  Mat3 dissipative_stress(const ThermoState& s) const override { return stress_from_potential(*pot_, *this, s); }
  std::vector<double> flow_rule(const ThermoState& s) const override { return flow_from_potential(*pot_, *this, s); }
  std::shared_ptr<const DissipationPotential> potential() const override { return pot_; }

 private:
  std::shared_ptr<const DissipationPotential> pot_;
  std::string name_;
};

class HeatFluxModel final : public ForwardingModel {
 public:
  HeatFluxModel(std::shared_ptr<const MaterialModel> base, std::function<Vec3(const ThermoState&)> flux)
      : ForwardingModel(std::move(base)), flux_(std::move(flux)) {}
  Vec3 heat_flux(const ThermoState& s) const override { return flux_(s); }

 private:
  std::function<Vec3(const ThermoState&)> flux_;
};

class LambdaModel final : public MaterialModel {
 public:
  explicit LambdaModel(LambdaModelSpec spec) : spec_(std::move(spec)) {}

  std::string name() const override { return spec_.name; }
  ModelDims dims() const override { return spec_.dims; }
  double reference_density() const override { return spec_.rho_ref; }
  double free_energy(const Mat3& F, double theta, std::span<const double> xi) const override {
    return spec_.free_energy ? spec_.free_energy(F, theta, xi) : 0.0;
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double theta, std::span<const double> xi) const override {
    if (spec_.free_energy_dF) return spec_.free_energy_dF(F, theta, xi);
    if (!spec_.free_energy) return Mat3::zero();
    return std::nullopt;
  }
  std::optional<double> free_energy_dtheta(const Mat3& F, double theta, std::span<const double> xi) const override {
    if (spec_.free_energy_dtheta) return spec_.free_energy_dtheta(F, theta, xi);
    if (!spec_.free_energy) return 0.0;
    return std::nullopt;
  }
  std::optional<std::vector<double>> free_energy_dxi(const Mat3& F, double theta,
                                                     std::span<const double> xi) const override {
    if (spec_.free_energy_dxi) return spec_.free_energy_dxi(F, theta, xi);
    if (!spec_.free_energy) return std::vector<double>(xi.size(), 0.0);
    return std::nullopt;
  }
  Mat3 dissipative_stress(const ThermoState& s) const override {
    return spec_.dissipative_stress ? spec_.dissipative_stress(s) : Mat3::zero();
  }
  std::vector<double> flow_rule(const ThermoState& s) const override {
    return spec_.flow_rule ? spec_.flow_rule(s) : std::vector<double>(spec_.dims.k, 0.0);
  }
  Vec3 heat_flux(const ThermoState& s) const override { return spec_.heat_flux ? spec_.heat_flux(s) : Vec3{}; }
  SymmetryClass symmetry_class() const override { return spec_.symmetry; }
  std::size_t strain_blocks() const override { return spec_.strain_blocks; }

 private:
  LambdaModelSpec spec_;
};

}  // namespace

std::shared_ptr<const MaterialModel> potential_model(std::shared_ptr<const MaterialModel> base,
                                                     std::shared_ptr<const DissipationPotential> pot,
                                                     std::string name) {
  if (!base || !pot) throw Error(ErrorKind::InvalidArgument, "potential_model needs a model and a potential");
  if (pot->lambda_dim() != 0 && pot->lambda_dim() != base->dims().k)
    throw Error(ErrorKind::DimensionMismatch, "potential Lambda length differs from the model's k");
  return std::make_shared<PotentialModel>(std::move(base), std::move(pot), std::move(name));
}

std::shared_ptr<const MaterialModel> with_heat_flux(std::shared_ptr<const MaterialModel> base,
                                                    std::function<Vec3(const ThermoState&)> flux) {
  return std::make_shared<HeatFluxModel>(std::move(base), std::move(flux));
}

std::shared_ptr<const MaterialModel> lambda_model(LambdaModelSpec spec) {
  return std::make_shared<LambdaModel>(std::move(spec));
}

}  // namespace thermovisc
