// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "thermovisc/catalog.hpp"
#include "thermovisc/dynamics.hpp"
#include "thermovisc/heat.hpp"
#include "thermovisc/numdiff.hpp"
#include "thermovisc/verify.hpp"

using namespace thermovisc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

CheckOptions opts(std::size_t n, double tol, std::uint64_t seed = 0) {
  CheckOptions o;
  o.samples = n;
  o.tol = tol;
  o.seed = seed;
  return o;
}

std::vector<std::uint64_t> seeds() { return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}; }

ComplexFluidModel reference_fluid(const std::string& name, FreeEnergyKind fe = FreeEnergyKind::None) {
  MaterialParams p;
  p.eta = 1.0;
  p.lambda1 = 10.0;
  p.lambda2 = 1.0;
  p.omega = 0.75;
  return make_complex_fluid(name, p, fe);
}

ShakeConfig reference_shake(double dt) {
  ShakeConfig c;
  c.omega = 0.75;
  c.t_end = 4.0;
  c.dt = dt;
  c.xi0 = Mat3::zero();
  return c;
}

Outcome negative_dissipation(const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  const ComplexFluidModel fluid = reference_fluid(name);
  const auto coarse = shake_seeds(fluid, reference_shake(1e-3), seeds());
  const auto fine = shake_seeds(fluid, reference_shake(5e-4), seeds());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int negative = 0;
  double worst_ratio = -1.0;
  double worst_drift = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const ShakeSummary a = summarize_dissipation(coarse[i], false);
    const ShakeSummary b = summarize_dissipation(fine[i], false);
    if (a.min_dissipation < -1e-6 * a.max_abs_dissipation) ++negative;
    worst_ratio = std::max(worst_ratio, a.min_dissipation / a.max_abs_dissipation);
    worst_drift = std::max(worst_drift, std::abs(a.refined_min - b.refined_min) / std::abs(b.refined_min));
  }
  std::ostringstream os;
  os << name << " negative_seeds=" << negative << "/10 max(min/max|D|)=" << worst_ratio
     << " dt_halving_drift=" << worst_drift << " runtime_s=" << seconds;
  return {negative >= 8 && worst_drift <= 1e-6 && seconds < 1.0, os.str()};
}

Outcome ac1() { return negative_dissipation("oldroyd-b"); }

Outcome ac2() {
  const ComplexFluidModel fluid = reference_fluid("zaremba-jaumann", FreeEnergyKind::ZjQuadratic);
  const auto runs = shake_seeds(fluid, reference_shake(1e-3), seeds());
  double min_aug = INFINITY;
  double worst_rel = 0.0;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    const Mat3 d0 = 0.5 * (random_traceless_matrix(seeds()[s]) + transpose(random_traceless_matrix(seeds()[s])));
    const Trajectory& tr = runs[s];
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const Mat3 xi = block(tr.xi[i].data());
      const Mat3 d = std::cos(0.75 * tr.t[i]) * d0;
      const double expect = 2.0 * fluid.eta_s() * ddot(d, d) + ddot(xi, xi) / (2.0 * fluid.eta_p());
      const double got = tr.augmented_dissipation[i];
      min_aug = std::min(min_aug, got);
      if (expect > 0.0)
        worst_rel = std::max(worst_rel, std::abs(got - expect) / expect);
      else if (got != 0.0)
        worst_rel = INFINITY;
    }
  }
  std::ostringstream os;
  os << "zaremba-jaumann min_augmented=" << min_aug << " max_rel_identity_error=" << worst_rel;
  return {min_aug >= -1e-10 && worst_rel <= 1e-10, os.str()};
}

Outcome ac3() { return negative_dissipation("zaremba-jaumann"); }

Outcome ac4() {
  double worst = 0.0;
  for (const ZeroDModel& m : {maxwell0d(1.0, 1.0), kelvin_voigt0d(1.0, 1.0)}) {
    const Trajectory tr = zero_d_experiment(m, 1.0, 5.0, 1e-3);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const double exact = m.response_exact(1.0, {0.0}, tr.t[i]);
      const double err = std::abs(tr.stress[i](0, 0) - exact);
      worst = std::max(worst, exact == 0.0 ? (err == 0.0 ? 0.0 : INFINITY) : err / std::abs(exact));
    }
  }
  std::ostringstream os;
  os << "maxwell0d+kelvin-voigt0d max_rel_error=" << worst;
  return {worst <= 1e-8, os.str()};
}

Outcome ac5() {
  bool pass = true;
  std::ostringstream os;
  for (const char* name : {"maxwell3d-svk", "maxwell3d-fluid-svk"}) {
    const auto m = make_model(name, MaterialParams{});
    const CheckReport cp = check_clausius_planck(*m, opts(10000, 1e-10));
    const CheckReport cs = check_cauchy_symmetry(*m, opts(10000, 1e-10));
    pass = pass && cp.pass && cs.pass;
    os << name << ":cp=" << cp.max_residual << ",cauchy=" << cs.max_residual << " ";
  }
  return {pass, os.str()};
}

Outcome ac6() {
  bool pass = true;
  std::ostringstream os;
  for (const char* name : {"kelvin-voigt3d", "newtonian", "reiner-rivlin"}) {
    const CheckReport r = check_stress_frame_indifference(*make_model(name, MaterialParams{}), opts(10000, 1e-11));
    pass = pass && r.pass;
    os << name << "=" << r.max_residual << " ";
  }
  for (const char* name : {"maxwell3d-svk", "maxwell3d-fluid-svk"}) {
    const CheckReport r =
        check_internal_variable_frame_indifference(*make_model(name, MaterialParams{}), opts(10000, 1e-11));
    pass = pass && r.pass;
    os << name << "=" << r.max_residual << " ";
  }
  const CheckReport h = check_stress_frame_indifference(*make_model("counterexample-h", MaterialParams{}),
                                                        opts(10000, 1e-11));
  const CheckReport w =
      check_cauchy_symmetry(*make_model("counterexample-skew", MaterialParams{}), opts(10000, 1e-10));
  pass = pass && !h.pass && !w.pass;
  os << "counterexample-h:frame-indifference=" << (h.pass ? "pass" : "fail")
     << " counterexample-skew:cauchy-symmetry=" << (w.pass ? "pass" : "fail");
  return {pass, os.str()};
}

Outcome ac7() {
  const MaterialParams p;
  const auto solid = make_model("maxwell3d-svk", p);
  const auto fluid = make_model("maxwell3d-fluid-svk", p);
  const auto newt = make_model("newtonian", p);
  Rng rng(2024);
  int rotations_passed = 0;
  for (int i = 0; i < 100; ++i)
    if (check_material_symmetry(*solid, random_rotation(rng), opts(100, 1e-10, i)).pass) ++rotations_passed;
  int solid_failed = 0, fluid_passed = 0, newt_passed = 0;
  for (int i = 0; i < 10; ++i) {
    const Mat3 S = random_unimodular(rng);
    if (!check_material_symmetry(*solid, S, opts(100, 1e-10, i)).pass) ++solid_failed;
    if (check_material_symmetry(*fluid, S, opts(100, 1e-10, i)).pass) ++fluid_passed;
    if (check_material_symmetry(*newt, S, opts(100, 1e-10, i)).pass) ++newt_passed;
  }
  std::ostringstream os;
  os << "solid rotations passed=" << rotations_passed << "/100 solid unimodular failed=" << solid_failed
     << "/10 fluid passed=" << fluid_passed << "/10 newtonian passed=" << newt_passed << "/10";
  return {rotations_passed == 100 && solid_failed == 10 && fluid_passed == 10 && newt_passed == 10, os.str()};
}

Outcome ac8() {
  const FluidConductivity cond = [](double J, double theta, double n) { return 0.5 * J + theta * n * n; };
  const SampleResidual flux_sign = [&](std::uint64_t i) {
    Rng rng = Rng::for_sample(81, i);
    const Mat3 F = random_defgrad(rng);
    const Vec3 G = random_vector(rng);
    const double k = rng.uniform(0.1, 5.0);
    double r = 0.0;
    for (const Vec3& Q : {fourier_flux(F, G, k), fluid_flux(cond, F, rng.uniform(0.5, 2.0), G)})
      r = std::max(r, dot(Q, G) / (1.0 + norm(Q) * norm(G)));
    return r;
  };
  const SweepResult sign = sweep_parallel(10000, flux_sign);

  const auto coeffs = example_isotropic_coefficients();
  const SampleResidual equivariance = [&](std::uint64_t i) {
    Rng rng = Rng::for_sample(82, i);
    const Sym3 B = random_spd_generic(rng);
    const Vec3 K = random_vector(rng);
    const Mat3 R = random_rotation(rng);
    const double theta = rng.uniform(0.5, 2.0);
    const Vec3 q = isotropic_flux(coeffs, B, theta, K);
    const Vec3 qr = isotropic_flux(coeffs, Sym3::sym_of(R * B.to_mat() * transpose(R)), theta, R * K);
    return norm(qr - R * q) / (1.0 + norm(q));
  };
  const SweepResult equi = sweep_parallel(10000, equivariance);

  const SampleResidual signature = [](std::uint64_t i) {
    Rng rng = Rng::for_sample(83, i);
    const Sym3 B = random_spd_generic(rng);
    const Vec3 K = random_vector(rng);
    const Mat3 R = random_rotation(rng);
    const int a = heat_signature(B, K);
    const int b = heat_signature(Sym3::sym_of(R * B.to_mat() * transpose(R)), R * K);
    return a == b ? 0.0 : 1.0;
  };
  const SweepResult sig = sweep_parallel(1000, signature);

  std::ostringstream os;
  os << "max(Q.G/scale)=" << sign.max_residual << " isotropic_equivariance=" << equi.max_residual
     << " signature_mismatches=" << (sig.max_residual > 0.0 ? "yes" : "none");
  return {sign.max_residual <= 1e-14 && equi.max_residual <= 1e-10 && sig.max_residual == 0.0, os.str()};
}

Outcome ac9() {
  const MaterialParams p;
  std::vector<CheckReport> reports;
  for (const char* name : {"svk-elastic", "perfect-gas", "maxwell3d-svk"})
    for (auto& r : check_model_gradients(*make_model(name, p), opts(1000, 1e-6))) reports.push_back(r);

  const ComplexFluidModel zj = reference_fluid("zaremba-jaumann", FreeEnergyKind::ZjQuadratic);
  const ScalarFn f = [&](const std::vector<double>& x) { return zj.free_energy(block(x.data())); };
  const GradientFn g = [&](const std::vector<double>& x) {
    std::vector<double> out(9);
    put_block(out.data(), zj.free_energy_gradient(block(x.data())));
    return out;
  };
  const PointSampler s = [](Rng& rng) {
    std::vector<double> x(9);
    put_block(x.data(), random_sym(rng).to_mat());
    return x;
  };
  reports.push_back(check_gradient("gradient-zj-free-energy", f, g, s, opts(1000, 1e-6)));

  for (const auto& pot : {newtonian_potential(1.0), coupled_rate_potential(1.0), kelvin_voigt_potential(1.0),
                          quadratic_flow_potential(1.0, 9), fluid_flow_potential(1.0), fluid_flow_potential(1.0, 2)})
    for (auto& r : check_potential_gradients(*pot, opts(1000, 1e-6))) reports.push_back(r);

  bool pass = true;
  double worst = 0.0;
  std::string worst_name;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    if (r.max_residual >= worst) {
      worst = r.max_residual;
      worst_name = r.name;
    }
  }
  std::ostringstream os;
  os << "checks=" << reports.size() << " worst=" << worst_name << ":" << worst;
  return {pass, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
  };
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
