#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "thermovisc/complex_fluid.hpp"
#include "thermovisc/dynamics.hpp"
#include "thermovisc/error.hpp"
#include "thermovisc/models.hpp"
#include "thermovisc/numdiff.hpp"
#include "thermovisc/random.hpp"

using namespace thermovisc;

namespace {

ComplexFluidModel reference_fluid(DerivativeKind kind, FreeEnergyKind fe = FreeEnergyKind::None) {
  const auto [es, ep] = solvent_polymer_split(1.0, 10.0, 1.0);
  return ComplexFluidModel(kind, es, ep, 10.0, fe);
}

Mat3 sym(const Mat3& m) { return 0.5 * (m + transpose(m)); }

// Rotation path Q(t) = expm(t A) with A skew; Omega = Q' Q^T = A.
struct RotationPath {
  Mat3 A;
  Mat3 at(double t) const { return expm(t * A); }
};

}  // namespace

TEST(Rk4, ExponentialDecay) {
  const OdeRhs rhs = [](double, const std::vector<double>& y) { return std::vector<double>{-y[0]}; };
  const OdeSolution s = rk4_integrate(rhs, {1.0}, 0.0, 1.0, 1e-3);
  ASSERT_EQ(s.t.size(), 1001u);
  EXPECT_EQ(s.t.back(), 1.0);
  EXPECT_NEAR(s.y.back()[0], std::exp(-1.0), 1e-12);
}

TEST(Rk4, ZeroRhsIsConstant) {
  const OdeRhs rhs = [](double, const std::vector<double>& y) { return std::vector<double>(y.size(), 0.0); };
  const OdeSolution s = rk4_integrate(rhs, {1.5, -2.0}, 0.0, 2.0, 0.25);
  for (const auto& y : s.y) {
    EXPECT_EQ(y[0], 1.5);
    EXPECT_EQ(y[1], -2.0);
  }
}

TEST(Rk4, FourthOrderConvergence) {
  const OdeRhs rhs = [](double t, const std::vector<double>& y) { return std::vector<double>{std::cos(t) * y[0]}; };
  const double exact = std::exp(std::sin(2.0));
  const double e1 = std::abs(rk4_integrate(rhs, {1.0}, 0.0, 2.0, 0.1).y.back()[0] - exact);
  const double e2 = std::abs(rk4_integrate(rhs, {1.0}, 0.0, 2.0, 0.05).y.back()[0] - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
}

TEST(Rk4, Errors) {
  const OdeRhs rhs = [](double, const std::vector<double>& y) { return y; };
  EXPECT_THROW(rk4_integrate(rhs, {1.0}, 0.0, 1.0, 0.0), Error);
  EXPECT_THROW(rk4_integrate(rhs, {1.0}, 1.0, 0.0, 0.1), Error);
  EXPECT_THROW(rk4_integrate(rhs, {1.0}, 0.0, 1.0, 0.3), Error);
  const OdeRhs blowup = [](double, const std::vector<double>& y) { return std::vector<double>{y[0] * y[0]}; };
  try {
    rk4_integrate(blowup, {1.0}, 0.0, 10.0, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
}

TEST(ZeroDExperiment, MatchesClosedForms) {
  for (const ZeroDModel& m : {maxwell0d(1.0, 1.0), kelvin_voigt0d(1.0, 1.0), maxwell0d(2.0, 1.0)}) {
    const Trajectory tr = zero_d_experiment(m, 1.0, 5.0, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const double exact = m.response_exact(1.0, {0.0}, tr.t[i]);
      worst = std::max(worst, std::abs(tr.stress[i](0, 0) - exact) / std::abs(exact));
    }
    EXPECT_LE(worst, 1e-8);
  }
}

TEST(ShakingExperiment, ZeroMatrixGivesZeroDissipation) {
  ShakeConfig cfg;
  cfg.xi0 = Mat3::diag(1, -0.5, -0.5);
  const Trajectory tr = shaking_experiment(reference_fluid(DerivativeKind::OldroydB), cfg);
  for (double v : tr.raw_dissipation) EXPECT_EQ(v, 0.0);
  const Mat3 end = tr.xi.size() ? block(tr.xi.back().data()) : Mat3::zero();
  EXPECT_LE(fro_norm(end - std::exp(-0.4) * cfg.xi0), 1e-12);
}

TEST(ShakingExperiment, OldroydBGoesNegative) {
  ShakeConfig cfg;
  cfg.m = random_traceless_matrix(0);
  const Trajectory tr = shaking_experiment(reference_fluid(DerivativeKind::OldroydB), cfg);
  ASSERT_EQ(tr.size(), 4001u);
  const ShakeSummary s = summarize_dissipation(tr, false);
  EXPECT_LT(s.min_dissipation, -1e-6 * s.max_abs_dissipation);
  ASSERT_TRUE(s.first_negative_t.has_value());
  EXPECT_LE(s.refined_min, s.min_dissipation);
}

TEST(ShakingExperiment, ZjAugmentedIdentityAlongTrajectory) {
  const auto fluid = reference_fluid(DerivativeKind::ZarembaJaumann, FreeEnergyKind::ZjQuadratic);
  ShakeConfig cfg;
  cfg.m = random_traceless_matrix(3);
  const Trajectory tr = shaking_experiment(fluid, cfg);
  const Mat3 d0 = sym(cfg.m);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const Mat3 xi = block(tr.xi[i].data());
    const Mat3 d = std::cos(0.75 * tr.t[i]) * d0;
    const double expect = 2 * fluid.eta_s() * ddot(d, d) + ddot(xi, xi) / (2 * fluid.eta_p());
    EXPECT_GE(tr.augmented_dissipation[i], -1e-10);
    EXPECT_NEAR(tr.augmented_dissipation[i], expect, 1e-10 * std::max(expect, 1e-300));
  }
}

TEST(ShakingExperiment, PreservesSymmetryOfXi) {
  for (auto kind : {DerivativeKind::OldroydB, DerivativeKind::ZarembaJaumann}) {
    ShakeConfig cfg;
    cfg.m = random_traceless_matrix(7);
    const Trajectory tr = shaking_experiment(reference_fluid(kind), cfg);
    for (const auto& x : tr.xi) {
      const Mat3 xi = block(x.data());
      EXPECT_LE(fro_norm(xi - transpose(xi)), 1e-10);
    }
  }
}

TEST(ShakingExperiment, Reproducible) {
  ShakeConfig cfg;
  cfg.m = random_traceless_matrix(5);
  const auto fluid = reference_fluid(DerivativeKind::OldroydB);
  std::ostringstream a, b;
  shaking_experiment(fluid, cfg).write_csv(a);
  shaking_experiment(fluid, cfg).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "t,raw_dissipation,augmented_dissipation,free_energy,stress_fro_norm");
}

TEST(ShakingExperiment, RefinedMinimumStableUnderStepHalving) {
  for (auto kind : {DerivativeKind::OldroydB, DerivativeKind::ZarembaJaumann}) {
    ShakeConfig cfg;
    cfg.m = random_traceless_matrix(6);
    const auto fluid = reference_fluid(kind);
    const double a = summarize_dissipation(shaking_experiment(fluid, cfg), false).refined_min;
    cfg.dt = 5e-4;
    const double b = summarize_dissipation(shaking_experiment(fluid, cfg), false).refined_min;
    EXPECT_LE(std::abs(a - b), 1e-6 * std::abs(b));
  }
}

TEST(ShakeSeeds, MatchesSequentialRuns) {
  const auto fluid = reference_fluid(DerivativeKind::OldroydB);
  const std::vector<std::uint64_t> seeds{0, 1, 2, 3};
  const auto runs = shake_seeds(fluid, ShakeConfig{}, seeds);
  ASSERT_EQ(runs.size(), seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    ShakeConfig cfg;
    cfg.m = random_traceless_matrix(seeds[i]);
    EXPECT_EQ(runs[i].raw_dissipation, shaking_experiment(fluid, cfg).raw_dissipation);
  }
}

TEST(ShakingExperiment, ObjectiveUnderRotatingFrame) {
  // h* = Q h Q^T + Omega gives xi* = Q xi Q^T for both objective derivatives.
  const RotationPath path{hat(Vec3{{0.4, -0.3, 0.7}})};
  const Mat3 m = project_traceless(random_traceless_matrix(2));
  for (auto kind : {DerivativeKind::OldroydB, DerivativeKind::ZarembaJaumann}) {
    const auto fluid = reference_fluid(kind);
    const Mat3 xi0 = Mat3::diag(0.3, -0.1, 0.2);
    const VelocityGradient h = [&](double t) { return std::cos(0.75 * t) * m; };
    const VelocityGradient hs = [&](double t) {
      const Mat3 Q = path.at(t);
      return Q * h(t) * transpose(Q) + path.A;
    };
    const Trajectory a = integrate_complex_fluid(fluid, h, xi0, 0.0, 4.0, 1e-3);
    const Trajectory b = integrate_complex_fluid(fluid, hs, xi0, 0.0, 4.0, 1e-3);
    for (std::size_t i = 0; i < a.size(); i += 100) {
      const Mat3 Q = path.at(a.t[i]);
      const Mat3 expect = Q * block(a.xi[i].data()) * transpose(Q);
      EXPECT_LE(fro_norm(block(b.xi[i].data()) - expect), 1e-6 * (1 + fro_norm(expect)));
    }
  }
}

TEST(DissipationTrace, ElasticIsZeroAndNewtonianMatchesFormula) {
  const Mat3 m = random_traceless_matrix(4);
  const LagrangianMotion motion = shaking_motion(m, 0.75);
  const auto el = elastic_model(stvenant_kirchhoff(1, 1));
  const Trajectory te = dissipation_trace(*el, motion, {}, 0.0, 2.0, 1e-2);
  for (double v : te.augmented_dissipation) EXPECT_EQ(v, 0.0);

  const auto nw = newtonian(0.8);
  const Trajectory tn = dissipation_trace(*nw, motion, {}, 0.0, 2.0, 1e-2);
  for (std::size_t i = 0; i < tn.size(); ++i) {
    const Mat3 F = motion.F(tn.t[i]);
    const Mat3 d = sym(motion.H(tn.t[i]) * inverse(F));
    const double expect = 2 * 0.8 * det(F) * ddot(d, d);
    EXPECT_NEAR(tn.augmented_dissipation[i], expect, 1e-12 * (1 + expect));
    EXPECT_GE(tn.augmented_dissipation[i], 0.0);
  }
}

TEST(DissipationTrace, ShakingMotionIsConsistent) {
  const Mat3 m = random_traceless_matrix(1);
  const LagrangianMotion motion = shaking_motion(m, 0.75);
  for (double t : {0.1, 1.0, 2.5}) {
    const double dt = 1e-5;
    const Mat3 rate = (1.0 / dt) * (motion.F(t + dt) - motion.F(t));
    EXPECT_LE(fro_norm(rate - motion.H(t + 0.5 * dt)), 1e-8);
  }
}

TEST(DissipationTrace, OldroydBAdapterMatchesShaking) {
  const auto fluid = reference_fluid(DerivativeKind::OldroydB);
  const auto adapter = complex_fluid_as_internal_variable(fluid, 1.0);
  ShakeConfig cfg;
  cfg.m = random_traceless_matrix(0);
  const Trajectory euler = shaking_experiment(fluid, cfg);
  const Trajectory lagr =
      dissipation_trace(*adapter, shaking_motion(cfg.m, cfg.omega), std::vector<double>(6, 0.0), 0.0, 4.0, 1e-3);
  ASSERT_EQ(euler.size(), lagr.size());
  double scale = 0.0;
  for (double v : euler.raw_dissipation) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < euler.size(); ++i)
    EXPECT_NEAR(lagr.raw_dissipation[i], euler.raw_dissipation[i], 1e-12 * (1 + scale));
}

TEST(Relaxation, NaturalStateStaysUnstressed) {
  const auto m = maxwell3d(stvenant_kirchhoff(1, 1), 1.0, MaxwellVariant::Solid);
  const Trajectory tr = relaxation_experiment(*m, 1.0, 2.0, 1e-2);
  for (double v : tr.stress_fro_norm) EXPECT_EQ(v, 0.0);
}

TEST(Relaxation, SvkRelaxesWithNonnegativeDissipation) {
  for (auto variant : {MaxwellVariant::Solid, MaxwellVariant::Fluid}) {
    const auto m = maxwell3d(stvenant_kirchhoff(1, 1), 1.0, variant);
    const Trajectory tr = relaxation_experiment(*m, 1.2, 5.0, 1e-3);
    for (double v : tr.augmented_dissipation) EXPECT_GE(v, 0.0);
    for (std::size_t i = tr.size() / 2 + 1; i < tr.size(); ++i)
      EXPECT_LE(tr.stress_fro_norm[i], tr.stress_fro_norm[i - 1]);
    EXPECT_LT(tr.stress_fro_norm.back(), 0.5 * tr.stress_fro_norm.front());
  }
}

TEST(Relaxation, FrozenWithoutMobility) {
  const auto m = maxwell3d(stvenant_kirchhoff(1, 1), 0.0, MaxwellVariant::Solid);
  const Trajectory tr = relaxation_experiment(*m, 1.2, 1.0, 1e-2);
  for (double v : tr.stress_fro_norm) EXPECT_EQ(v, tr.stress_fro_norm.front());
  EXPECT_GT(tr.stress_fro_norm.front(), 0.0);
}

TEST(Relaxation, Errors) {
  const auto el = elastic_model(stvenant_kirchhoff(1, 1));
  EXPECT_THROW(relaxation_experiment(*el, 1.2, 1.0, 1e-2), Error);
  const auto m = maxwell3d(stvenant_kirchhoff(1, 1), 1.0, MaxwellVariant::Solid);
  try {
    relaxation_experiment(*m, 1.2, 1.0, 1e-2, Mat3::diag(1, 1, 1e-13));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DetFiCollapse);
  }
}
