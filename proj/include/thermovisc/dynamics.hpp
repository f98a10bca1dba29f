#pragma once

// Fixed-step integration of internal-variable ODEs along prescribed motions,
// with dissipation diagnostics recorded at every grid point.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thermovisc/complex_fluid.hpp"
#include "thermovisc/laws.hpp"
#include "thermovisc/models.hpp"
#include "thermovisc/tensor3.hpp"

namespace thermovisc {

using OdeRhs = std::function<std::vector<double>(double, const std::vector<double>&)>;

struct OdeSolution {
  std::vector<double> t;
  std::vector<std::vector<double>> y;
};

/// Classical RK4 with n = round((t1 - t0)/dt) steps; t_i = t0 + i (t1 - t0)/n.
/// Throws Error(InvalidArgument) unless t1 > t0, dt > 0 and dt divides the
/// span to 1e-9 relative; Error(NonFinite) if the state stops being finite.
OdeSolution rk4_integrate(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1, double dt);

struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> xi;
  std::vector<double> raw_dissipation;        ///< sigma:d, or T_Rd:H
  std::vector<double> augmented_dissipation;  ///< D_int
  std::vector<double> free_energy;
  std::vector<Mat3> stress;                   ///< Cauchy stress (or scalar force in entry (0,0) for 0d)
  std::vector<double> stress_fro_norm;
  std::vector<double> clausius_duhem;

  std::size_t size() const { return t.size(); }
  /// Header t,raw_dissipation,augmented_dissipation,free_energy,stress_fro_norm
  /// followed by one row per grid point, 17 significant digits.
  void write_csv(std::ostream& os) const;
};

/// Eulerian velocity gradient at the material point as a function of time.
using VelocityGradient = std::function<Mat3(double)>;

/// Integrates the full 9-component xi under h(t).
Trajectory integrate_complex_fluid(const ComplexFluidModel& model, const VelocityGradient& h, const Mat3& xi0,
                                   double t0, double t1, double dt);

/// Standard normal entries with the mean diagonal removed; seeded.
Mat3 random_traceless_matrix(std::uint64_t seed);
Mat3 project_traceless(const Mat3& m);

struct ShakeConfig {
  Mat3 m = Mat3::zero();
  double omega = 0.75;
  double t_end = 4.0;
  double dt = 1e-3;
  Mat3 xi0 = Mat3::zero();
};

/// h(t) = cos(omega t) m at the fixed point of v(x,t) = cos(omega t) m (x - x0).
/// m is projected onto traceless matrices first.
Trajectory shaking_experiment(const ComplexFluidModel& model, const ShakeConfig& config);

struct ShakeSummary {
  double min_dissipation = 0.0;  ///< minimum over the grid
  /// Minimum of the parabola through the grid minimum and its neighbours;
  /// estimates the continuous-time minimum to O(dt^3).
  double refined_min = 0.0;
  std::optional<double> first_negative_t;
  double max_abs_dissipation = 0.0;
};

/// Summary of the raw (augmented = false) or augmented dissipation column.
ShakeSummary summarize_dissipation(const Trajectory& traj, bool augmented);

/// Shaking runs for several seeds of m = random_traceless_matrix(seed),
/// integrated concurrently; results are ordered like `seeds`.
std::vector<Trajectory> shake_seeds(const ComplexFluidModel& model, const ShakeConfig& base,
                                    const std::vector<std::uint64_t>& seeds);

struct LagrangianMotion {
  std::function<Mat3(double)> F;
  std::function<Mat3(double)> H;
  double theta = 1.0;
  Vec3 G{};
};

/// F(t) = expm((sin(omega t)/omega) m), H = cos(omega t) m F, so that
/// H F^-1 = cos(omega t) m.
LagrangianMotion shaking_motion(const Mat3& m, double omega);

/// Advances Xi by the model's flow rule along `motion`, recording T_Rd:H,
/// D_int, A, |sigma| and the Clausius-Duhem left-hand side.
Trajectory dissipation_trace(const MaterialModel& model, const LagrangianMotion& motion,
                             const std::vector<double>& xi0, double t0, double t1, double dt);

/// Holds F = alpha I and integrates F_i from fi0 (identity when empty).
/// Throws Error(InvalidArgument) for models without internal strain blocks
/// and Error(DetFiCollapse) if some det F_i drops to 1e-12.
Trajectory relaxation_experiment(const MaterialModel& model, double alpha, double t_end, double dt,
                                 std::optional<Mat3> fi0 = std::nullopt);

/// 0d model under constant load from y0 (zeros when empty). The stress
/// column holds the response (force, or strain for Kelvin-Voigt).
Trajectory zero_d_experiment(const ZeroDModel& model, double load, double t_end, double dt,
                             std::vector<double> y0 = {});

}  // namespace thermovisc
