#include "thermovisc/verify.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "thermovisc/numdiff.hpp"

namespace thermovisc {

std::string CheckReport::line() const {
  std::ostringstream os;
  os << "check=" << name << " samples=" << samples << " max_residual=" << std::setprecision(6) << max_residual
     << " pass=" << (pass ? "true" : "false") << " worst_seed=" << worst_index;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CheckReport& r) { return os << r.line(); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_residual(const SampleResidual& f, std::uint64_t i) {
  double r;
  try {
    r = f(i);
  } catch (const std::exception&) {
    return kInf;
  }
  return std::isnan(r) ? kInf : r;
}

bool better(double r, std::uint64_t i, const SweepResult& best) {
  return r > best.max_residual || (r == best.max_residual && i < best.worst_index);
}

}  // namespace

SweepResult sweep_serial(std::size_t n, const SampleResidual& residual) {
  SweepResult best{-kInf, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = safe_residual(residual, i);
    if (better(r, i, best)) best = {r, i};
  }
  if (n == 0) best.max_residual = 0.0;
  return best;
}

SweepResult sweep_parallel(std::size_t n, const SampleResidual& residual) {
  SweepResult best{-kInf, 0};
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    SweepResult local{-kInf, 0};
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      const double r = safe_residual(residual, idx);
      if (better(r, idx, local)) local = {r, idx};
    }
#pragma omp critical
    if (better(local.max_residual, local.worst_index, best)) best = local;
  }
  if (n == 0) best.max_residual = 0.0;
  return best;
}

ThermoState random_state(const MaterialModel& model, Rng& rng) {
  ThermoState s;
  s.F = random_defgrad(rng);
  s.H = random_matrix(rng);
  s.theta = rng.uniform(0.5, 2.0);
  s.G = random_vector(rng);
  s.xi = model.sample_internal(rng);
  s.pi.resize(model.dims().m);
  for (double& x : s.pi) x = rng.uniform(-1.0, 1.0);
  return s;
}

std::string describe(const ThermoState& s) {
  std::ostringstream os;
  os << std::setprecision(17) << "F=" << s.F << " H=" << s.H << " theta=" << s.theta << " G=" << s.G << " xi=[";
  for (std::size_t i = 0; i < s.xi.size(); ++i) os << (i ? "," : "") << s.xi[i];
  os << ']';
  return os.str();
}

double scaled_difference(const Mat3& a, const Mat3& b) {
  return fro_norm(a - b) / (1.0 + fro_norm(a) + fro_norm(b));
}

double scaled_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return kInf;
  double d = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(d) / (1.0 + std::sqrt(na) + std::sqrt(nb));
}

namespace {

template <class Draw, class Residual, class Describe>
CheckReport run_check(const std::string& name, const CheckOptions& opt, Draw draw, Residual residual,
                      Describe desc) {
  const SampleResidual fn = [&](std::uint64_t i) {
    Rng rng = Rng::for_sample(opt.seed, i);
    return residual(draw(rng));
  };
  const SweepResult sw = opt.parallel ? sweep_parallel(opt.samples, fn) : sweep_serial(opt.samples, fn);
  CheckReport r;
  r.name = name;
  r.samples = opt.samples;
  r.max_residual = sw.max_residual;
  r.worst_index = sw.worst_index;
  r.tol = opt.tol;
  r.pass = sw.max_residual <= opt.tol;
  if (opt.samples > 0) {
    Rng rng = Rng::for_sample(opt.seed, sw.worst_index);
    try {
      r.worst_state = desc(draw(rng));
    } catch (const std::exception& e) {
      r.worst_state = e.what();
    }
  }
  return r;
}

struct StateAndMatrix {
  ThermoState state;
  Mat3 M;
};

Mat3 sym_mat(const Mat3& m) { return 0.5 * (m + transpose(m)); }

std::string describe_sm(const StateAndMatrix& s) {
  std::ostringstream os;
  os << describe(s.state) << std::setprecision(17) << " R=" << s.M;
  return os.str();
}

}  // namespace

CheckReport check_stress_frame_indifference(const MaterialModel& model, const CheckOptions& opt) {
  if (model.dims().k != 0)
    throw Error(ErrorKind::InvalidArgument, model.name() + " has internal variables; use the internal-variable check");
  auto draw = [&](Rng& rng) {
    StateAndMatrix s{random_state(model, rng), Mat3::identity()};
    s.M = random_rotation(rng);
    return s;
  };
  auto residual = [&](const StateAndMatrix& s) {
    const Mat3& R = s.M;
    const Mat3 T = total_first_piola(model, s.state);
    ThermoState rotated = s.state;
    rotated.F = R * s.state.F;
    rotated.H = R * s.state.H;
    ThermoState reduced = s.state;
    reduced.H = sym_mat(s.state.H * inverse(s.state.F)) * s.state.F;
    return std::max(scaled_difference(total_first_piola(model, rotated), R * T),
                    scaled_difference(T, total_first_piola(model, reduced)));
  };
  return run_check("frame-indifference", opt, draw, residual, describe_sm);
}

CheckReport check_internal_variable_frame_indifference(const MaterialModel& model, const CheckOptions& opt) {
  auto draw = [&](Rng& rng) {
    StateAndMatrix s{random_state(model, rng), Mat3::identity()};
    s.M = random_rotation(rng);
    return s;
  };
  auto residual = [&](const StateAndMatrix& s) {
    const Mat3& R = s.M;
    ThermoState rotated = s.state;
    rotated.F = R * s.state.F;
    rotated.H = R * s.state.H;
    const double rt = scaled_difference(total_first_piola(model, rotated), R * total_first_piola(model, s.state));
    const double rk = scaled_difference(model.flow_rule(rotated), model.flow_rule(s.state));
    return std::max(rt, rk);
  };
  return run_check("internal-frame-indifference", opt, draw, residual, describe_sm);
}

CheckReport check_material_symmetry(const MaterialModel& model, const Mat3& S, const CheckOptions& opt) {
  if (!all_finite(S) || std::abs(det(S) - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidSymmetry, "material symmetry needs det S = 1");
  const Mat3 cofS = cofactor(S);
  auto draw = [&](Rng& rng) { return random_state(model, rng); };
  auto residual = [&](const ThermoState& s) {
    ThermoState moved = s;
    moved.F = s.F * S;
    moved.H = s.H * S;
    moved.G = transpose(S) * s.G;
    moved.xi = model.reference_change(s.xi, S);
    double r = scaled_difference(total_first_piola(model, moved), total_first_piola(model, s) * cofS);
    if (model.dims().k > 0)
      r = std::max(r, scaled_difference(model.flow_rule(moved), model.reference_change(model.flow_rule(s), S)));
    return r;
  };
  return run_check("material-symmetry", opt, draw, residual, [](const ThermoState& s) { return describe(s); });
}

CheckReport check_cauchy_symmetry(const MaterialModel& model, const CheckOptions& opt) {
  auto draw = [&](Rng& rng) { return random_state(model, rng); };
  auto residual = [&](const ThermoState& s) {
    const Mat3 T = total_first_piola(model, s);
    return scaled_difference(s.F * transpose(T), T * transpose(s.F));
  };
  return run_check("cauchy-symmetry", opt, draw, residual, [](const ThermoState& s) { return describe(s); });
}

CheckReport check_clausius_planck(const MaterialModel& model, const CheckOptions& opt) {
  auto draw = [&](Rng& rng) { return random_state(model, rng); };
  auto residual = [&](const ThermoState& s) {
    const DissipationTerms t = dissipation_terms(model, s);
    const Vec3 Q = model.heat_flux(s);
    const double mech = -t.d_int / (1.0 + std::abs(t.stress_power) + std::abs(t.internal_power));
    const double therm = dot(Q, s.G) / (1.0 + norm(Q) * norm(s.G));
    return std::max({mech, therm, 0.0});
  };
  auto desc = [&](const ThermoState& s) {
    std::ostringstream os;
    os << describe(s) << std::setprecision(17) << " D_int=" << internal_dissipation(model, s)
       << " Q.G=" << dot(model.heat_flux(s), s.G);
    return os.str();
  };
  return run_check("clausius-planck", opt, draw, residual, desc);
}

namespace {

struct FluidSample {
  Mat3 h;
  Mat3 xi;
};

}  // namespace

CheckReport check_clausius_planck(const ComplexFluidModel& model, const CheckOptions& opt) {
  auto draw = [](Rng& rng) {
    FluidSample s;
    s.h = random_matrix(rng);
    const double third = trace(s.h) / 3.0;
    for (std::size_t i = 0; i < 3; ++i) s.h(i, i) -= third;
    s.xi = random_sym(rng).to_mat();
    return s;
  };
  auto residual = [&](const FluidSample& s) {
    const double raw = model.raw_dissipation(s.h, s.xi);
    const double fe = ddot(model.free_energy_gradient(s.xi), model.flow(s.h, s.xi));
    const double d = model.augmented_dissipation(s.h, s.xi);
    return std::max(-d / (1.0 + std::abs(raw) + std::abs(fe)), 0.0);
  };
  auto desc = [&](const FluidSample& s) {
    std::ostringstream os;
    os << std::setprecision(17) << "h=" << s.h << " xi=" << s.xi
       << " dissipation=" << model.augmented_dissipation(s.h, s.xi);
    return os.str();
  };
  return run_check("clausius-planck", opt, draw, residual, desc);
}

namespace {

double gradient_error(const ScalarFn& f, const std::vector<double>& g, const std::vector<double>& x) {
  const auto fd = central_gradient(f, x);
  if (g.size() != fd.size()) return kInf;
  double d = 0.0, n = 0.0;
  for (std::size_t i = 0; i < fd.size(); ++i) {
    d += (g[i] - fd[i]) * (g[i] - fd[i]);
    n += fd[i] * fd[i];
  }
  return std::sqrt(d) / (1.0 + std::sqrt(n));
}

std::vector<double> flat(const Mat3& m) { return {m.a.begin(), m.a.end()}; }
Mat3 unflat(const std::vector<double>& v) { return block(v.data()); }

std::string describe_point(const std::vector<double>& x) {
  std::ostringstream os;
  os << std::setprecision(17) << "x=[";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ']';
  return os.str();
}

}  // namespace

CheckReport check_gradient(const std::string& name, const ScalarFn& f, const GradientFn& grad,
                           const PointSampler& sampler, const CheckOptions& opt) {
  auto residual = [&](const std::vector<double>& x) { return gradient_error(f, grad(x), x); };
  return run_check(name, opt, sampler, residual, describe_point);
}

std::vector<CheckReport> check_model_gradients(const MaterialModel& model, const CheckOptions& opt) {
  std::vector<CheckReport> out;
  Rng probe_rng = Rng::for_sample(opt.seed, 0);
  const ThermoState probe = random_state(model, probe_rng);
  auto draw = [&](Rng& rng) { return random_state(model, rng); };
  auto desc = [](const ThermoState& s) { return describe(s); };

  if (model.free_energy_dF(probe.F, probe.theta, probe.xi)) {
    auto residual = [&](const ThermoState& s) {
      const ScalarFn f = [&](const std::vector<double>& x) { return model.free_energy(unflat(x), s.theta, s.xi); };
      return gradient_error(f, flat(*model.free_energy_dF(s.F, s.theta, s.xi)), flat(s.F));
    };
    out.push_back(run_check("gradient-dF", opt, draw, residual, desc));
  }
  if (model.free_energy_dtheta(probe.F, probe.theta, probe.xi)) {
    auto residual = [&](const ThermoState& s) {
      const ScalarFn f = [&](const std::vector<double>& x) { return model.free_energy(s.F, x[0], s.xi); };
      return gradient_error(f, {*model.free_energy_dtheta(s.F, s.theta, s.xi)}, {s.theta});
    };
    out.push_back(run_check("gradient-dtheta", opt, draw, residual, desc));
  }
  if (model.dims().k > 0 && model.free_energy_dxi(probe.F, probe.theta, probe.xi)) {
    auto residual = [&](const ThermoState& s) {
      const ScalarFn f = [&](const std::vector<double>& x) { return model.free_energy(s.F, s.theta, x); };
      return gradient_error(f, *model.free_energy_dxi(s.F, s.theta, s.xi), s.xi);
    };
    out.push_back(run_check("gradient-dxi", opt, draw, residual, desc));
  }
  return out;
}

namespace {

struct PotentialSample {
  Mat3 F;
  double theta = 1.0;
  Mat3 H, H2;
  std::vector<double> lambda, lambda2;
};

PotentialSample draw_potential(const DissipationPotential& pot, Rng& rng) {
  PotentialSample s;
  s.F = random_defgrad(rng);
  s.theta = rng.uniform(0.5, 2.0);
  s.H = random_matrix(rng);
  s.H2 = random_matrix(rng);
  s.lambda.resize(pot.lambda_dim());
  s.lambda2.resize(pot.lambda_dim());
  for (double& x : s.lambda) x = rng.uniform(-1.0, 1.0);
  for (double& x : s.lambda2) x = rng.uniform(-1.0, 1.0);
  return s;
}

std::string describe_potential(const PotentialSample& s) {
  std::ostringstream os;
  os << std::setprecision(17) << "F=" << s.F << " theta=" << s.theta << " H=" << s.H << " H2=" << s.H2;
  return os.str();
}

}  // namespace

std::vector<CheckReport> check_potential_gradients(const DissipationPotential& pot, const CheckOptions& opt) {
  std::vector<CheckReport> out;
  const std::vector<double> no_pi;
  Rng probe_rng = Rng::for_sample(opt.seed, 0);
  const PotentialSample probe = draw_potential(pot, probe_rng);
  auto draw = [&](Rng& rng) { return draw_potential(pot, rng); };
  if (pot.dH(probe.F, probe.H, probe.theta, no_pi, probe.lambda)) {
    auto residual = [&](const PotentialSample& s) {
      const ScalarFn f = [&](const std::vector<double>& x) {
        return pot.value(s.F, unflat(x), s.theta, no_pi, s.lambda);
      };
      return gradient_error(f, flat(*pot.dH(s.F, s.H, s.theta, no_pi, s.lambda)), flat(s.H));
    };
    out.push_back(run_check("gradient-" + pot.name() + "-dH", opt, draw, residual, describe_potential));
  }
  if (pot.lambda_dim() > 0 && pot.dLambda(probe.F, probe.H, probe.theta, no_pi, probe.lambda)) {
    auto residual = [&](const PotentialSample& s) {
      const ScalarFn f = [&](const std::vector<double>& x) { return pot.value(s.F, s.H, s.theta, no_pi, x); };
      return gradient_error(f, *pot.dLambda(s.F, s.H, s.theta, no_pi, s.lambda), s.lambda);
    };
    out.push_back(run_check("gradient-" + pot.name() + "-dLambda", opt, draw, residual, describe_potential));
  }
  return out;
}

CheckReport check_convexity(const DissipationPotential& pot, const CheckOptions& opt) {
  const std::vector<double> no_pi;
  auto draw = [&](Rng& rng) { return draw_potential(pot, rng); };
  auto residual = [&](const PotentialSample& s) {
    std::vector<double> mid(s.lambda.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (s.lambda[i] + s.lambda2[i]);
    const double p1 = pot.value(s.F, s.H, s.theta, no_pi, s.lambda);
    const double p2 = pot.value(s.F, s.H2, s.theta, no_pi, s.lambda2);
    const double pm = pot.value(s.F, 0.5 * (s.H + s.H2), s.theta, no_pi, mid);
    const std::vector<double> zero(s.lambda.size(), 0.0);
    const double p0 = pot.value(s.F, Mat3::zero(), s.theta, no_pi, zero);
    const double convex = (pm - 0.5 * (p1 + p2)) / (1.0 + std::abs(p1) + std::abs(p2));
    return std::max({convex, std::abs(p0), 0.0});
  };
  return run_check("convexity", opt, draw, residual, describe_potential);
}

namespace {

struct ObjectivitySample {
  Mat3 sigma, h, R, W;
};

}  // namespace

CheckReport check_objectivity(const ComplexFluidModel& model, const CheckOptions& opt) {
  auto draw = [](Rng& rng) {
    ObjectivitySample s;
    s.sigma = random_sym(rng).to_mat();
    s.h = random_matrix(rng);
    s.R = random_rotation(rng);
    s.W = random_skew(rng);
    return s;
  };
  auto residual = [&](const ObjectivitySample& s) {
    const Mat3 RT = transpose(s.R);
    const Mat3 sig = s.R * s.sigma * RT;
    const Mat3 lhs = model.objective_term(sig, s.R * s.h * RT + s.W);
    const Mat3 rhs = s.R * model.objective_term(s.sigma, s.h) * RT - s.W * sig + sig * s.W;
    return scaled_difference(lhs, rhs);
  };
  auto desc = [](const ObjectivitySample& s) {
    std::ostringstream os;
    os << std::setprecision(17) << "sigma=" << s.sigma << " h=" << s.h << " R=" << s.R << " W=" << s.W;
    return os.str();
  };
  return run_check("objectivity", opt, draw, residual, desc);
}

CheckReport merge_reports(const std::string& name, const std::vector<CheckReport>& parts) {
  CheckReport r;
  r.name = name;
  bool first = true;
  for (const auto& p : parts) {
    r.samples += p.samples;
    r.pass = r.pass && p.pass;
    r.tol = std::max(r.tol, p.tol);
    if (first || p.max_residual > r.max_residual) {
      r.max_residual = p.max_residual;
      r.worst_index = p.worst_index;
      r.worst_state = p.worst_state;
      first = false;
    }
  }
  return r;
}

}  // namespace thermovisc
