#include "thermovisc/catalog.hpp"

#include "thermovisc/heat.hpp"

namespace thermovisc {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"svk-elastic", CatalogKind::Lagrangian, "Saint Venant-Kirchhoff elastic solid"},
      {"perfect-gas", CatalogKind::Lagrangian, "perfect gas"},
      {"newtonian", CatalogKind::Lagrangian, "Newtonian fluid"},
      {"reiner-rivlin", CatalogKind::Lagrangian, "Reiner-Rivlin fluid, beta1 = 2 nu + b|d|, beta2 = b"},
      {"kelvin-voigt3d", CatalogKind::Lagrangian, "Kelvin-Voigt solid with SVK energy"},
      {"kelvin-voigt3d-potential", CatalogKind::Lagrangian, "Kelvin-Voigt built from its dissipation potential"},
      {"maxwell3d-svk", CatalogKind::Lagrangian, "3d Maxwell, SVK energy, solid flow rule"},
      {"maxwell3d-fluid-svk", CatalogKind::Lagrangian, "3d Maxwell, SVK energy, fluid flow rule"},
      {"generalized-maxwell3d-svk", CatalogKind::Lagrangian, "SVK spring plus two SVK Maxwell branches"},
      {"counterexample-h", CatalogKind::Lagrangian, "T_R = H", "frame-indifference"},
      {"counterexample-skew", CatalogKind::Lagrangian, "T_Rd = F W0 with W0 skew", "cauchy-symmetry"},
      {"counterexample-flow", CatalogKind::Lagrangian, "Maxwell energy with flow rule K = F", "internal-frame-indifference"},
      {"oldroyd-b", CatalogKind::ComplexFluid, "Oldroyd B fluid"},
      {"zaremba-jaumann", CatalogKind::ComplexFluid, "Zaremba-Jaumann fluid"},
      {"custom", CatalogKind::ComplexFluid, "Gordon-Schowalter derivative with a = slip"},
      {"maxwell0d", CatalogKind::ZeroD, "spring and dashpot in series"},
      {"kelvin-voigt0d", CatalogKind::ZeroD, "spring and dashpot in parallel"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw Error(ErrorKind::ConfigError, "unknown model '" + name + "'");
}

Mat3 counterexample_skew_matrix() { return hat(Vec3{{0.3, -0.2, 0.5}}); }

namespace {

std::shared_ptr<const MaterialModel> with_fourier(std::shared_ptr<const MaterialModel> m, double k) {
  return with_heat_flux(std::move(m), [k](const ThermoState& s) { return fourier_flux(s.F, s.G, k); });
}

}  // namespace

std::shared_ptr<const MaterialModel> make_model(const std::string& name, const MaterialParams& p) {
  const CatalogEntry& e = catalog_entry(name);
  if (e.kind != CatalogKind::Lagrangian) throw Error(ErrorKind::ConfigError, name + " is not a Lagrangian model");
  p.check();
  const double c = p.heat_capacity;
  const double k = p.conductivity;
  auto svk = [&] { return stvenant_kirchhoff(p.lame, p.mu); };

  if (name == "svk-elastic") return with_fourier(elastic_model(svk(), p.rho_ref, c, name), k);
  if (name == "perfect-gas") return with_fourier(perfect_gas(p.gas_constant, c, p.rho_ref), k);
  if (name == "newtonian") return with_fourier(newtonian(p.nu, c, p.rho_ref), k);
  if (name == "reiner-rivlin")
    return with_fourier(viscous_fluid(example_reiner_rivlin(p.nu, p.rr_nonlinear), c, p.rho_ref, name), k);
  if (name == "kelvin-voigt3d") return with_fourier(kelvin_voigt3d(svk(), p.nu, p.rho_ref, c), k);
  if (name == "kelvin-voigt3d-potential") {
    auto base = elastic_model(svk(), p.rho_ref, c, name);
    return with_fourier(potential_model(base, kelvin_voigt_potential(p.nu), name), k);
  }
  if (name == "maxwell3d-svk")
    return with_fourier(maxwell3d(svk(), p.kappa, MaxwellVariant::Solid, p.rho_ref, name), k);
  if (name == "maxwell3d-fluid-svk")
    return with_fourier(maxwell3d(svk(), p.kappa, MaxwellVariant::Fluid, p.rho_ref, name), k);
  if (name == "generalized-maxwell3d-svk") {
    std::vector<std::shared_ptr<const StoredEnergy>> branches{svk(), stvenant_kirchhoff(0.5 * p.lame, 0.5 * p.mu)};
    return with_fourier(generalized_maxwell3d(svk(), std::move(branches), p.kappa, p.rho_ref), k);
  }
  if (name == "counterexample-h") return counterexample_h();
  if (name == "counterexample-skew") return counterexample_skew(counterexample_skew_matrix());
  if (name == "counterexample-flow") return counterexample_flow(svk());
  throw Error(ErrorKind::ConfigError, "unknown model '" + name + "'");
}

ComplexFluidModel make_complex_fluid(const std::string& name, const MaterialParams& p, FreeEnergyKind fe) {
  const CatalogEntry& e = catalog_entry(name);
  if (e.kind != CatalogKind::ComplexFluid) throw Error(ErrorKind::ConfigError, name + " is not a complex fluid");
  p.check();
  const auto [eta_s, eta_p] = p.viscosity_split();
  if (name == "oldroyd-b") return ComplexFluidModel(DerivativeKind::OldroydB, eta_s, eta_p, p.lambda1, fe);
  if (name == "zaremba-jaumann")
    return ComplexFluidModel(DerivativeKind::ZarembaJaumann, eta_s, eta_p, p.lambda1, fe);
  return ComplexFluidModel(DerivativeKind::Custom, eta_s, eta_p, p.lambda1, fe, gordon_schowalter(p.slip));
}

ZeroDModel make_zero_d(const std::string& name, const MaterialParams& p) {
  const CatalogEntry& e = catalog_entry(name);
  if (e.kind != CatalogKind::ZeroD) throw Error(ErrorKind::ConfigError, name + " is not a 0d model");
  if (name == "maxwell0d") return maxwell0d(p.mu, p.nu);
  return kelvin_voigt0d(p.mu, p.nu);
}

}  // namespace thermovisc
