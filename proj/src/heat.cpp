#include "thermovisc/heat.hpp"

#include "thermovisc/error.hpp"
#include "thermovisc/numdiff.hpp"

namespace thermovisc {

Vec3 fourier_flux(const Mat3& F, const Vec3& G, double k) {
  const Mat3 Finv = inverse(F);
  return -k * (Finv * (transpose(Finv) * G));
}

FluxInvariants flux_invariants(const Sym3& B, double theta, const Vec3& K, double distinctness_tol) {
  FluxInvariants inv;
  const auto [i1, i2, i3] = principal_invariants(B);
  inv.iota_b = {i1, i2, i3};
  inv.theta = theta;
  const Vec3 bk = B * K;
  inv.k2 = dot(K, K);
  inv.bk2 = dot(bk, bk);
  inv.kbk = dot(K, bk);
  inv.s = heat_signature(B, K, distinctness_tol);
  return inv;
}

IsotropicFluxCoefficients example_isotropic_coefficients() {
  IsotropicFluxCoefficients c;
  c.alpha0 = [](const FluxInvariants& v) { return -1.0 - 0.1 * v.k2; };
  c.alpha1 = [](const FluxInvariants& v) { return -0.5 / (1.0 + v.iota_b[0]) * v.theta; };
  c.alpha2 = [](const FluxInvariants& v) { return 0.3 * v.s + 0.1 * v.theta; };
  return c;
}

namespace {

double eval(const FluxCoefficient& f, const FluxInvariants& v) { return f ? f(v) : 0.0; }

}  // namespace

Vec3 isotropic_flux(const IsotropicFluxCoefficients& c, const Sym3& B, double theta, const Vec3& K) {
  const FluxInvariants v = flux_invariants(B, theta, K);
  const Vec3 bk = B * K;
  return eval(c.alpha0, v) * K + eval(c.alpha1, v) * bk + eval(c.alpha2, v) * cross(K, bk);
}

double isotropic_flux_cp_margin(const IsotropicFluxCoefficients& c, const Sym3& B, double theta, const Vec3& K) {
  const FluxInvariants v = flux_invariants(B, theta, K);
  return eval(c.alpha0, v) * v.k2 + eval(c.alpha1, v) * v.kbk;
}

Vec3 fluid_flux(const FluidConductivity& cond, const Mat3& F, double theta, const Vec3& G) {
  if (!(theta > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "fluid_flux needs theta > 0");
  const Mat3 Finv = inverse(F);
  const Vec3 k = transpose(Finv) * G;
  return -cond(det(F), theta, norm(k)) * (Finv * k);
}

Vec3 flux_from_diffusion_potential(const DiffusionPotential& pdiff, const Mat3& F, double theta, const Vec3& G) {
  return central_gradient([&](const Vec3& g) { return pdiff(F, theta, g); }, G);
}

DiffusionPotential fourier_diffusion_potential(double k) {
  return [k](const Mat3& F, double, const Vec3& G) {
    const Vec3 kk = inverse_transpose(F) * G;
    return -0.5 * k * dot(kk, kk);
  };
}

}  // namespace thermovisc
