#include <gtest/gtest.h>

#include <cmath>

#include "thermovisc/complex_fluid.hpp"
#include "thermovisc/error.hpp"
#include "thermovisc/laws.hpp"
#include "thermovisc/models.hpp"
#include "thermovisc/numdiff.hpp"
#include "thermovisc/random.hpp"

using namespace thermovisc;

namespace {

std::vector<double> flat(const Mat3& m) { return {m.a.begin(), m.a.end()}; }

Mat3 sym(const Mat3& m) { return 0.5 * (m + transpose(m)); }

ThermoState random_state(Rng& rng, std::size_t blocks = 0) {
  ThermoState s;
  s.F = random_defgrad(rng);
  s.H = random_matrix(rng);
  s.theta = rng.uniform(0.5, 2.0);
  s.G = random_vector(rng);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto fi = flat(random_defgrad(rng));
    s.xi.insert(s.xi.end(), fi.begin(), fi.end());
  }
  return s;
}

}  // namespace

TEST(StVenantKirchhoff, NaturalStateAndValue) {
  const auto W = stvenant_kirchhoff(0.0, 1.0);
  EXPECT_EQ(W->value(Mat3::identity()), 0.0);
  EXPECT_EQ(fro_norm(stored_energy_gradient(*W, Mat3::identity())), 0.0);
  EXPECT_NEAR(W->value(Mat3::diag(std::sqrt(3.0), 1, 1)), 1.0, 1e-15);
}

TEST(StVenantKirchhoff, FrameIndifferentAndGradient) {
  const auto W = stvenant_kirchhoff(1.2, 0.8);
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = Rng::for_sample(1, i);
    const Mat3 F = random_defgrad(rng);
    const Mat3 R = random_rotation(rng);
    EXPECT_NEAR(W->value(R * F), W->value(F), 1e-12 * (1 + std::abs(W->value(F))));
    const Mat3 g = *W->gradient(F);
    const Mat3 fd = central_gradient([&](const Mat3& x) { return W->value(x); }, F);
    EXPECT_LE(fro_norm(g - fd), 1e-6 * (1 + fro_norm(fd)));
  }
}

TEST(StVenantKirchhoff, RejectsBadModuli) {
  EXPECT_THROW(stvenant_kirchhoff(1.0, 0.0), Error);
  EXPECT_THROW(stvenant_kirchhoff(-1.0, 1.0), Error);
}

TEST(PerfectGas, PressureOnlyAndNoDissipation) {
  const auto gas = perfect_gas(1.0);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::for_sample(2, i);
    const ThermoState s = random_state(rng);
    EXPECT_EQ(internal_dissipation(*gas, s), 0.0);
    const Mat3 sigma = cauchy_from_piola(total_first_piola(*gas, s), s.F);
    const Mat3 p = (-s.theta / det(s.F)) * Mat3::identity();
    EXPECT_LE(fro_norm(sigma - p), 1e-12 * (1 + fro_norm(p)));
  }
  EXPECT_LE(fro_norm(cauchy_from_piola(thermoelastic_stress(*gas, Mat3::identity(), 1.5, {}), Mat3::identity()) +
                     1.5 * Mat3::identity()),
            1e-15);
}

TEST(ReinerRivlin, Values) {
  const auto newt = reiner_rivlin({}, [](double, const std::array<double, 3>&, double) { return 2.0; }, {});
  const Sym3 d = Sym3::sym_of(Mat3::from_rows({{{1, 2, 0}, {0, -1, 0.5}, {0, 0, 0}}}));
  EXPECT_LE(fro_norm(newt.cauchy(1, d, 1).to_mat() - 2.0 * d.to_mat()), 1e-15);

  const auto b0 = reiner_rivlin([](double rho, const std::array<double, 3>&, double t) { return -rho * t; }, {}, {});
  EXPECT_LE(fro_norm(b0.cauchy(2.0, Sym3::zero(), 3.0).to_mat() + 6.0 * Mat3::identity()), 1e-15);

  const auto sq = reiner_rivlin({}, {}, [](double, const std::array<double, 3>&, double) { return 1.0; });
  EXPECT_LE(fro_norm(sq.cauchy(1, Sym3::diag(1, -1, 0), 1).to_mat() - Mat3::diag(1, 1, 0)), 1e-15);
}

TEST(ReinerRivlin, ExampleIsDissipative) {
  const auto m = viscous_fluid(example_reiner_rivlin(1.0, 0.5));
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng = Rng::for_sample(3, i);
    const ThermoState s = random_state(rng);
    EXPECT_GE(internal_dissipation(*m, s), 0.0);
  }
}

TEST(Newtonian, CauchyIsTwoNuD) {
  const auto m = newtonian(0.7);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::for_sample(4, i);
    const ThermoState s = random_state(rng);
    const Mat3 d = sym(s.H * inverse(s.F));
    const Mat3 sigma = cauchy_from_piola(m->dissipative_stress(s), s.F);
    EXPECT_LE(fro_norm(sigma - 1.4 * d), 1e-12 * (1 + fro_norm(d)));
  }
}

TEST(Maxwell3d, StationaryAtNaturalState) {
  const auto m = maxwell3d(stvenant_kirchhoff(1, 1), 1.0, MaxwellVariant::Solid);
  Rng rng(5);
  ThermoState s;
  s.F = random_defgrad(rng);
  s.xi = flat(s.F);
  EXPECT_LE(fro_norm(total_first_piola(*m, s)), 1e-14);
  for (double v : m->flow_rule(s)) EXPECT_LE(std::abs(v), 1e-14);
  EXPECT_EQ(m->dims().k, 9u);
  EXPECT_EQ(m->strain_blocks(), 1u);
}

TEST(Maxwell3d, CauchySymmetric) {
  for (auto variant : {MaxwellVariant::Solid, MaxwellVariant::Fluid}) {
    const auto m = maxwell3d(stvenant_kirchhoff(1, 1), 1.0, variant);
    for (std::uint64_t i = 0; i < 500; ++i) {
      Rng rng = Rng::for_sample(6, i);
      const ThermoState s = random_state(rng, 1);
      const Mat3 T = total_first_piola(*m, s);
      EXPECT_LE(fro_norm(s.F * transpose(T) - T * transpose(s.F)), 1e-10 * (1 + fro_norm(T)));
    }
  }
}

TEST(Maxwell3d, SolidIsotropyAndFluidity) {
  const auto W = stvenant_kirchhoff(1, 1);
  const auto solid = maxwell3d(W, 1.0, MaxwellVariant::Solid);
  const auto fluid = maxwell3d(W, 1.0, MaxwellVariant::Fluid);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::for_sample(7, i);
    const ThermoState s = random_state(rng, 1);
    const Mat3 R = random_rotation(rng);
    const Mat3 S = random_unimodular(rng);
    const Mat3 Fi = block(s.xi.data());

    ThermoState r = s;
    r.F = s.F * R;
    r.xi = flat(Fi * R);
    const Mat3 K = block(solid->flow_rule(s).data());
    EXPECT_LE(fro_norm(block(solid->flow_rule(r).data()) - K * R), 1e-11 * (1 + fro_norm(K)));
    const Mat3 T = thermoelastic_stress(*solid, s.F, 1, s.xi);
    EXPECT_LE(fro_norm(thermoelastic_stress(*solid, r.F, 1, r.xi) - T * R), 1e-11 * (1 + fro_norm(T)));

    ThermoState u = s;
    u.F = s.F * S;
    u.xi = flat(Fi * S);
    const Mat3 Kf = block(fluid->flow_rule(s).data());
    EXPECT_LE(fro_norm(block(fluid->flow_rule(u).data()) - Kf * S), 1e-10 * (1 + fro_norm(Kf)));
  }
}

TEST(Maxwell3d, RejectsNegativeMobility) {
  EXPECT_THROW(maxwell3d(stvenant_kirchhoff(1, 1), -1.0, MaxwellVariant::Solid), Error);
}

TEST(KelvinVoigt3d, Values) {
  const auto W = stvenant_kirchhoff(1, 1);
  const auto m = kelvin_voigt3d(W, 2.0);
  Rng rng(8);
  ThermoState s;
  s.F = random_defgrad(rng);
  EXPECT_LE(fro_norm(total_first_piola(*m, s) - stored_energy_gradient(*W, s.F)), 1e-14);
  ThermoState t;
  t.H = Mat3::diag(1, 0, 0);
  EXPECT_DOUBLE_EQ(ddot(m->dissipative_stress(t), t.H), 2.0);
}

TEST(KelvinVoigt3d, MatchesPotential) {
  const auto m = kelvin_voigt3d(stvenant_kirchhoff(1, 1), 0.6);
  const auto pot = kelvin_voigt_potential(0.6);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::for_sample(9, i);
    const ThermoState s = random_state(rng);
    const Mat3 T = m->dissipative_stress(s);
    EXPECT_LE(fro_norm(stress_from_potential(*pot, *m, s) - T), 1e-10 * (1 + fro_norm(T)));
  }
}

TEST(GeneralizedMaxwell3d, ReducesToMaxwell) {
  const auto W = stvenant_kirchhoff(1, 1);
  const auto gm = generalized_maxwell3d(nullptr, {W}, 1.0);
  const auto m = maxwell3d(W, 1.0, MaxwellVariant::Solid);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::for_sample(10, i);
    const ThermoState s = random_state(rng, 1);
    const Mat3 T = total_first_piola(*m, s);
    EXPECT_LE(fro_norm(total_first_piola(*gm, s) - T), 1e-12 * (1 + fro_norm(T)));
    const auto a = gm->flow_rule(s);
    const auto b = m->flow_rule(s);
    for (std::size_t j = 0; j < 9; ++j) EXPECT_NEAR(a[j], b[j], 1e-12 * (1 + std::abs(b[j])));
  }
}

TEST(GeneralizedMaxwell3d, NaturalBranchesAndDissipation) {
  const auto W0 = stvenant_kirchhoff(2, 1);
  const auto gm = generalized_maxwell3d(W0, {stvenant_kirchhoff(1, 1), stvenant_kirchhoff(0.5, 0.5)}, 1.0);
  EXPECT_EQ(gm->dims().k, 18u);
  Rng rng(11);
  ThermoState s;
  s.F = random_defgrad(rng);
  s.xi = flat(s.F);
  const auto again = flat(s.F);
  s.xi.insert(s.xi.end(), again.begin(), again.end());
  EXPECT_LE(fro_norm(total_first_piola(*gm, s) - stored_energy_gradient(*W0, s.F)), 1e-12);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng r = Rng::for_sample(12, i);
    EXPECT_GE(internal_dissipation(*gm, random_state(r, 2)), 0.0);
  }
}

TEST(ComplexFluid, FlowRuleLimits) {
  for (auto kind : {DerivativeKind::OldroydB, DerivativeKind::ZarembaJaumann}) {
    const ComplexFluidModel m(kind, 0.1, 0.9, 10.0);
    Rng rng(13);
    const Mat3 xi = random_sym(rng).to_mat();
    EXPECT_LE(fro_norm(m.flow(Mat3::zero(), xi) + 0.1 * xi), 1e-15);
    const Mat3 h = random_traceless(rng);
    EXPECT_LE(fro_norm(m.flow(h, Mat3::zero()) - 0.18 * sym(h)), 1e-15);
  }
}

TEST(ComplexFluid, ExplicitFlowRules) {
  const ComplexFluidModel ob(DerivativeKind::OldroydB, 0.1, 0.9, 10.0);
  const ComplexFluidModel zj(DerivativeKind::ZarembaJaumann, 0.1, 0.9, 10.0);
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng::for_sample(14, i);
    const Mat3 h = random_traceless(rng);
    const Mat3 xi = random_sym(rng).to_mat();
    const Mat3 d = sym(h);
    const Mat3 w = 0.5 * (h - transpose(h));
    const Mat3 relax = 0.1 * (-xi + 1.8 * d);
    EXPECT_LE(fro_norm(ob.flow(h, xi) - (h * xi + xi * transpose(h) + relax)), 1e-14);
    EXPECT_LE(fro_norm(zj.flow(h, xi) - (w * xi - xi * w + relax)), 1e-14);
  }
}

TEST(ComplexFluid, ZjAugmentedIdentity) {
  const ComplexFluidModel zj(DerivativeKind::ZarembaJaumann, 0.1, 0.9, 10.0, FreeEnergyKind::ZjQuadratic);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng = Rng::for_sample(15, i);
    const Mat3 h = random_traceless(rng);
    const Mat3 xi = random_sym(rng, -3, 3).to_mat();
    const Mat3 d = sym(h);
    const double expect = 0.2 * ddot(d, d) + ddot(xi, xi) / 1.8;
    EXPECT_NEAR(zj.augmented_dissipation(h, xi), expect, 1e-10 * expect);
  }
}

TEST(ComplexFluid, ZjFreeEnergy) {
  EXPECT_EQ(zj_free_energy(Mat3::zero(), 10, 0.9), 0.0);
  EXPECT_NEAR(zj_free_energy(Mat3::identity(), 10, 0.9), 25.0 / 3.0, 1e-14);
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = Rng::for_sample(16, i);
    const Mat3 xi = random_sym(rng).to_mat();
    const Mat3 g = zj_free_energy_gradient(xi, 10, 0.9);
    const Mat3 fd = central_gradient([](const Mat3& x) { return zj_free_energy(x, 10, 0.9); }, xi);
    EXPECT_LE(fro_norm(g - fd) / (1 + fro_norm(fd)), 1e-8);
  }
}

TEST(ComplexFluid, RejectsBadParameters) {
  EXPECT_THROW(ComplexFluidModel(DerivativeKind::OldroydB, 0.0, 0.9, 10.0), Error);
  EXPECT_THROW(ComplexFluidModel(DerivativeKind::Custom, 0.1, 0.9, 10.0), Error);
}

TEST(ComplexFluid, GordonSchowalterEndpoints) {
  const ComplexFluidModel ob(DerivativeKind::OldroydB, 0.1, 0.9, 10.0);
  const ComplexFluidModel zj(DerivativeKind::ZarembaJaumann, 0.1, 0.9, 10.0);
  const ComplexFluidModel c1(DerivativeKind::Custom, 0.1, 0.9, 10.0, FreeEnergyKind::None, gordon_schowalter(1.0));
  const ComplexFluidModel c0(DerivativeKind::Custom, 0.1, 0.9, 10.0, FreeEnergyKind::None, gordon_schowalter(0.0));
  Rng rng(17);
  const Mat3 h = random_traceless(rng);
  const Mat3 xi = random_sym(rng).to_mat();
  EXPECT_LE(fro_norm(c1.flow(h, xi) - ob.flow(h, xi)), 1e-14);
  EXPECT_LE(fro_norm(c0.flow(h, xi) - zj.flow(h, xi)), 1e-14);
}

TEST(ComplexFluid, InternalVariableAdapter) {
  const ComplexFluidModel zj(DerivativeKind::ZarembaJaumann, 0.1, 0.9, 10.0, FreeEnergyKind::ZjQuadratic);
  const auto m = complex_fluid_as_internal_variable(zj, 1.0);
  EXPECT_EQ(m->dims().k, 6u);
  Rng rng(18);
  ThermoState s;
  s.H = random_traceless(rng);
  const Sym3 xi = random_sym(rng);
  s.xi = pack_sym(xi);
  const double expect = zj.augmented_dissipation(s.H, xi.to_mat());
  EXPECT_NEAR(internal_dissipation(*m, s), expect, 1e-12 * (1 + std::abs(expect)));
}

TEST(ZeroD, MaxwellClosedForm) {
  const ZeroDModel m = maxwell0d(1.0, 1.0);
  EXPECT_NEAR(m.response_exact(1.0, {0.0}, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(m.response_exact(1.0, {0.0}, 1.0), 0.367879441171, 1e-12);
  for (double t : {0.0, 0.5, 3.0}) EXPECT_EQ(m.response_exact(1.0, {1.0}, t), 0.0);
  const auto r = m.rhs(1.0, {0.25});
  EXPECT_DOUBLE_EQ(r[0], 0.75);
}

TEST(ZeroD, KelvinVoigtClosedForm) {
  const ZeroDModel m = kelvin_voigt0d(1.0, 1.0);
  EXPECT_NEAR(m.response_exact(1.0, {0.0}, 1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(m.response_exact(1.0, {0.0}, 1.0), 0.632120558829, 1e-12);
  for (double t : {0.0, 2.0}) EXPECT_DOUBLE_EQ(m.response_exact(2.0, {2.0}, t), 2.0);
  EXPECT_NEAR(m.response_exact(1.0, {0.0}, 60.0), 1.0, 1e-15);
}

TEST(ZeroD, RejectsNonPositive) {
  EXPECT_THROW(maxwell0d(0.0, 1.0), Error);
  EXPECT_THROW(kelvin_voigt0d(1.0, -1.0), Error);
}

TEST(Counterexamples, Construction) {
  EXPECT_EQ(counterexample_h()->dims().k, 0u);
  EXPECT_THROW(counterexample_skew(Mat3::zero()), Error);
  EXPECT_EQ(counterexample_flow(stvenant_kirchhoff(1, 1))->dims().k, 9u);
}
