#pragma once

#include <array>
#include <functional>

#include "thermovisc/tensor3.hpp"

namespace thermovisc {

/// Q = -k (F^T F)^-1 G.
Vec3 fourier_flux(const Mat3& F, const Vec3& G, double k);

/// Arguments of the isotropic flux coefficients, in the fixed order
/// (iota(B), theta, |K|^2, |BK|^2, K.BK, s(B,K)).
struct FluxInvariants {
  std::array<double, 3> iota_b{};
  double theta = 1.0;
  double k2 = 0.0;
  double bk2 = 0.0;
  double kbk = 0.0;
  int s = 0;
};

FluxInvariants flux_invariants(const Sym3& B, double theta, const Vec3& K,
                               double distinctness_tol = kDefaultDistinctnessTol);

using FluxCoefficient = std::function<double(const FluxInvariants&)>;

/// alpha0 K + alpha1 BK + alpha2 K x BK. Empty coefficients read as zero.
struct IsotropicFluxCoefficients {
  FluxCoefficient alpha0;
  FluxCoefficient alpha1;
  FluxCoefficient alpha2;
};

/// Example coefficient set with a non-positive Clausius-Planck margin and a
/// nonzero alpha2 term that depends on s(B,K).
IsotropicFluxCoefficients example_isotropic_coefficients();

/// Throws Error(NotPositiveDefinite) for non positive definite B.
Vec3 isotropic_flux(const IsotropicFluxCoefficients& c, const Sym3& B, double theta, const Vec3& K);
/// alpha0 |K|^2 + alpha1 BK.K; the alpha2 term never contributes to q.K.
double isotropic_flux_cp_margin(const IsotropicFluxCoefficients& c, const Sym3& B, double theta, const Vec3& K);

/// Conductivity k(det F, theta, |F^-T G|) of a thermally fluid material.
using FluidConductivity = std::function<double(double, double, double)>;

/// Q = -k(det F, theta, |K|) F^-1 K with K = F^-T G, the pull-back of the
/// Eulerian q = -k K. Q.G = -k |K|^2.
Vec3 fluid_flux(const FluidConductivity& cond, const Mat3& F, double theta, const Vec3& G);

using DiffusionPotential = std::function<double(const Mat3&, double, const Vec3&)>;

/// dP/dG by central differences.
Vec3 flux_from_diffusion_potential(const DiffusionPotential& pdiff, const Mat3& F, double theta, const Vec3& G);
/// -(k/2) G^T C^-1 G, whose gradient is the Fourier flux.
DiffusionPotential fourier_diffusion_potential(double k);

}  // namespace thermovisc
