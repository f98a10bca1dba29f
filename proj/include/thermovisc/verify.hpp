#pragma once

// Randomized property checks. Each check draws n independent samples, sample
// i using Rng::for_sample(seed, i), computes a scaled residual and reduces by
// max (ties go to the smaller index). The OpenMP sweep and the serial sweep
// therefore produce identical reports.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "thermovisc/complex_fluid.hpp"
#include "thermovisc/heat.hpp"
#include "thermovisc/laws.hpp"
#include "thermovisc/models.hpp"
#include "thermovisc/random.hpp"

namespace thermovisc {

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double max_residual = 0.0;
  std::uint64_t worst_index = 0;
  std::string worst_state;
  double tol = 0.0;
  bool pass = true;

  /// check=<name> samples=<n> max_residual=<r> pass=<bool> worst_seed=<k>
  std::string line() const;
};

std::ostream& operator<<(std::ostream& os, const CheckReport& r);

/// Residual of sample i; NaN counts as an infinite residual.
using SampleResidual = std::function<double(std::uint64_t)>;

struct SweepResult {
  double max_residual = 0.0;
  std::uint64_t worst_index = 0;
};

SweepResult sweep_serial(std::size_t n, const SampleResidual& residual);
SweepResult sweep_parallel(std::size_t n, const SampleResidual& residual);

struct CheckOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  bool parallel = true;
};

/// Random state for `model`: det F in [0.2, 5], theta in [0.5, 2], H and G
/// entries in [-1, 1], Xi from model.sample_internal.
ThermoState random_state(const MaterialModel& model, Rng& rng);
std::string describe(const ThermoState& s);

/// |a - b| / (1 + |a| + |b|) in the Frobenius norm.
double scaled_difference(const Mat3& a, const Mat3& b);
double scaled_difference(const std::vector<double>& a, const std::vector<double>& b);

/// T(RF, RH) = R T(F, H) and T(F, H) = T(F, Sym(H F^-1) F) on the total
/// first Piola stress. Throws Error(InvalidArgument) for models with k > 0.
CheckReport check_stress_frame_indifference(const MaterialModel& model, const CheckOptions& opt);
/// T(RF, RH, Xi) = R T(F, H, Xi) and K(RF, RH, Xi) = K(F, H, Xi).
CheckReport check_internal_variable_frame_indifference(const MaterialModel& model, const CheckOptions& opt);
/// T(FS, HS, S^T G, Xi.S) = T(F, H, G, Xi) cof S and K(...) = K.S, where
/// ".S" is MaterialModel::reference_change. Throws Error(InvalidSymmetry)
/// if |det S - 1| > 1e-10.
CheckReport check_material_symmetry(const MaterialModel& model, const Mat3& S, const CheckOptions& opt);
/// F T^T = T F^T.
CheckReport check_cauchy_symmetry(const MaterialModel& model, const CheckOptions& opt);
/// Residual max(-D_int / (1 + |T_Rd:H| + |P dA/dXi.K|), Q.G / (1 + |Q||G|), 0).
CheckReport check_clausius_planck(const MaterialModel& model, const CheckOptions& opt);
/// Complex fluid: residual max(-D / (1 + |sigma:d| + |da/dxi:xi'|), 0) over
/// traceless h and symmetric xi with entries in [-1, 1]. D is the augmented
/// dissipation, which is sigma:d when there is no free energy.
CheckReport check_clausius_planck(const ComplexFluidModel& model, const CheckOptions& opt);

using ScalarFn = std::function<double(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;
using PointSampler = std::function<std::vector<double>(Rng&)>;

/// |g - g_fd| / (1 + |g_fd|) with central differences, step eps^(1/3)(1+|x|).
CheckReport check_gradient(const std::string& name, const ScalarFn& f, const GradientFn& grad,
                           const PointSampler& sampler, const CheckOptions& opt);
/// Gradient checks of every analytic derivative the model supplies.
std::vector<CheckReport> check_model_gradients(const MaterialModel& model, const CheckOptions& opt);
/// Gradient checks of dP/dH and dP/dLambda (when supplied).
std::vector<CheckReport> check_potential_gradients(const DissipationPotential& pot, const CheckOptions& opt);

/// Midpoint convexity in (H, Lambda) at random (F, theta) plus P(F, 0, theta, 0) = 0.
CheckReport check_convexity(const DissipationPotential& pot, const CheckOptions& opt);

/// Ob(R s R^T, R h R^T + W) = R Ob(s, h) R^T - W s* + s* W for random
/// rotations R, skew W, symmetric s.
CheckReport check_objectivity(const ComplexFluidModel& model, const CheckOptions& opt);

/// Merges reports of one check run over several inputs: max residual, pass
/// iff all pass, samples summed.
CheckReport merge_reports(const std::string& name, const std::vector<CheckReport>& parts);

}  // namespace thermovisc
