#include "thermovisc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "thermovisc/numdiff.hpp"
#include "thermovisc/random.hpp"

namespace thermovisc {

namespace {

bool finite(const std::vector<double>& y) {
  for (double x : y)
    if (!std::isfinite(x)) return false;
  return true;
}

void axpy(std::vector<double>& out, const std::vector<double>& y, double a, const std::vector<double>& k) {
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
}

}  // namespace

OdeSolution rk4_integrate(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1, double dt) {
  if (!(t1 > t0) || !(dt > 0.0) || !std::isfinite(t1 - t0))
    throw Error(ErrorKind::InvalidArgument, "rk4 needs t1 > t0 and dt > 0");
  const double span = t1 - t0;
  const double steps = std::round(span / dt);
  if (steps < 1.0 || std::abs(steps * dt - span) > 1e-9 * span)
    throw Error(ErrorKind::InvalidArgument, "dt must divide the time span");
  const auto n = static_cast<std::size_t>(steps);
  const double h = span / static_cast<double>(n);
  if (!finite(y0)) throw Error(ErrorKind::NonFinite, "initial state is not finite");

  OdeSolution sol;
  sol.t.reserve(n + 1);
  sol.y.reserve(n + 1);
  sol.t.push_back(t0);
  sol.y.push_back(y0);
  std::vector<double> y = std::move(y0), tmp(y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + span * static_cast<double>(i) / static_cast<double>(n);
    const auto k1 = rhs(t, y);
    axpy(tmp, y, 0.5 * h, k1);
    const auto k2 = rhs(t + 0.5 * h, tmp);
    axpy(tmp, y, 0.5 * h, k2);
    const auto k3 = rhs(t + 0.5 * h, tmp);
    axpy(tmp, y, h, k3);
    const auto k4 = rhs(t + h, tmp);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (!finite(y)) {
      std::ostringstream os;
      os << "state became non-finite at step " << i + 1;
      throw Error(ErrorKind::NonFinite, os.str());
    }
    sol.t.push_back(i + 1 == n ? t1 : t0 + span * static_cast<double>(i + 1) / static_cast<double>(n));
    sol.y.push_back(y);
  }
  return sol;
}

void Trajectory::write_csv(std::ostream& os) const {
  os << "t,raw_dissipation,augmented_dissipation,free_energy,stress_fro_norm\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  for (std::size_t i = 0; i < t.size(); ++i)
    os << t[i] << ',' << raw_dissipation[i] << ',' << augmented_dissipation[i] << ',' << free_energy[i] << ','
       << stress_fro_norm[i] << '\n';
  os.flags(flags);
  os.precision(prec);
}

namespace {

Mat3 as_mat(const std::vector<double>& y) { return block(y.data()); }

std::vector<double> as_vec(const Mat3& m) { return {m.a.begin(), m.a.end()}; }

void reserve(Trajectory& tr, std::size_t n) {
  tr.raw_dissipation.reserve(n);
  tr.augmented_dissipation.reserve(n);
  tr.free_energy.reserve(n);
  tr.stress.reserve(n);
  tr.stress_fro_norm.reserve(n);
  tr.clausius_duhem.reserve(n);
}

}  // namespace

Trajectory integrate_complex_fluid(const ComplexFluidModel& model, const VelocityGradient& h, const Mat3& xi0,
                                   double t0, double t1, double dt) {
  const OdeRhs rhs = [&](double t, const std::vector<double>& y) { return as_vec(model.flow(h(t), as_mat(y))); };
  OdeSolution sol = rk4_integrate(rhs, as_vec(xi0), t0, t1, dt);
  Trajectory tr;
  reserve(tr, sol.t.size());
  for (std::size_t i = 0; i < sol.t.size(); ++i) {
    const Mat3 hi = h(sol.t[i]);
    const Mat3 xi = as_mat(sol.y[i]);
    const Mat3 sigma = model.stress(hi, xi);
    const double aug = model.augmented_dissipation(hi, xi);
    tr.raw_dissipation.push_back(model.raw_dissipation(hi, xi));
    tr.augmented_dissipation.push_back(aug);
    tr.free_energy.push_back(model.free_energy(xi));
    tr.stress.push_back(sigma);
    tr.stress_fro_norm.push_back(fro_norm(sigma));
    tr.clausius_duhem.push_back(aug);
  }
  tr.t = std::move(sol.t);
  tr.xi = std::move(sol.y);
  return tr;
}

Mat3 random_traceless_matrix(std::uint64_t seed) {
  Rng rng(seed);
  return random_traceless(rng);
}

Mat3 project_traceless(const Mat3& m) {
  Mat3 out = m;
  const double third = trace(m) / 3.0;
  for (std::size_t i = 0; i < 3; ++i) out(i, i) -= third;
  return out;
}

Trajectory shaking_experiment(const ComplexFluidModel& model, const ShakeConfig& config) {
  if (!(config.omega > 0.0)) throw Error(ErrorKind::InvalidParams, "omega must be > 0");
  const Mat3 m = project_traceless(config.m);
  const double omega = config.omega;
  return integrate_complex_fluid(
      model, [m, omega](double t) { return std::cos(omega * t) * m; }, config.xi0, 0.0, config.t_end, config.dt);
}

ShakeSummary summarize_dissipation(const Trajectory& traj, bool augmented) {
  const auto& col = augmented ? traj.augmented_dissipation : traj.raw_dissipation;
  ShakeSummary s;
  if (col.empty()) return s;
  s.min_dissipation = col.front();
  for (std::size_t i = 0; i < col.size(); ++i) {
    s.min_dissipation = std::min(s.min_dissipation, col[i]);
    s.max_abs_dissipation = std::max(s.max_abs_dissipation, std::abs(col[i]));
    if (!s.first_negative_t && col[i] < 0.0) s.first_negative_t = traj.t[i];
  }
  const auto it = std::min_element(col.begin(), col.end());
  const auto i = static_cast<std::size_t>(it - col.begin());
  s.refined_min = s.min_dissipation;
  if (i > 0 && i + 1 < col.size()) {
    const double a = col[i - 1], b = col[i], c = col[i + 1];
    const double curv = a - 2.0 * b + c;
    if (curv > 0.0) s.refined_min = std::min(b, b - (c - a) * (c - a) / (8.0 * curv));
  }
  return s;
}

std::vector<Trajectory> shake_seeds(const ComplexFluidModel& model, const ShakeConfig& base,
                                    const std::vector<std::uint64_t>& seeds) {
  std::vector<Trajectory> out(seeds.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      ShakeConfig cfg = base;
      cfg.m = random_traceless_matrix(seeds[static_cast<std::size_t>(i)]);
      out[static_cast<std::size_t>(i)] = shaking_experiment(model, cfg);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

LagrangianMotion shaking_motion(const Mat3& m, double omega) {
  LagrangianMotion motion;
  motion.F = [m, omega](double t) { return expm((std::sin(omega * t) / omega) * m); };
  motion.H = [m, omega](double t) { return std::cos(omega * t) * m * expm((std::sin(omega * t) / omega) * m); };
  return motion;
}

Trajectory dissipation_trace(const MaterialModel& model, const LagrangianMotion& motion,
                             const std::vector<double>& xi0, double t0, double t1, double dt) {
  const ModelDims dims = model.dims();
  auto state_at = [&](double t, const std::vector<double>& xi) {
    ThermoState s;
    s.F = motion.F(t);
    s.H = motion.H(t);
    s.theta = motion.theta;
    s.G = motion.G;
    s.xi = xi;
    return s;
  };
  {
    const ThermoState s0 = state_at(t0, xi0);
    require_valid(s0, {dims.k, 0});
  }
  const OdeRhs rhs = [&](double t, const std::vector<double>& xi) {
    if (dims.k == 0) return std::vector<double>{};
    return model.flow_rule(state_at(t, xi));
  };
  OdeSolution sol = rk4_integrate(rhs, xi0, t0, t1, dt);
  Trajectory tr;
  reserve(tr, sol.t.size());
  for (std::size_t i = 0; i < sol.t.size(); ++i) {
    const ThermoState s = state_at(sol.t[i], sol.y[i]);
    const DissipationTerms terms = dissipation_terms(model, s);
    const Mat3 sigma = cauchy_from_piola(total_first_piola(model, s), s.F);
    tr.raw_dissipation.push_back(terms.stress_power);
    tr.augmented_dissipation.push_back(terms.d_int);
    tr.free_energy.push_back(model.free_energy(s.F, s.theta, s.xi));
    tr.stress.push_back(sigma);
    tr.stress_fro_norm.push_back(fro_norm(sigma));
    tr.clausius_duhem.push_back(terms.d_int - dot(model.heat_flux(s), s.G) / s.theta);
  }
  tr.t = std::move(sol.t);
  tr.xi = std::move(sol.y);
  return tr;
}

namespace {

void require_fi(const MaterialModel& model, std::span<const double> xi) {
  for (std::size_t b = 0; b < model.strain_blocks(); ++b) {
    const double d = det(block(xi.data() + 9 * b));
    if (!(d > 1e-12)) {
      std::ostringstream os;
      os << "det F_i = " << d << " in block " << b;
      throw Error(ErrorKind::DetFiCollapse, os.str());
    }
  }
}

// Wraps a model so every flow evaluation first checks det F_i.
class FiGuard final : public MaterialModel {
 public:
  explicit FiGuard(const MaterialModel& m) : m_(m) {}
  std::string name() const override { return m_.name(); }
  ModelDims dims() const override { return m_.dims(); }
  double reference_density() const override { return m_.reference_density(); }
  double free_energy(const Mat3& F, double t, std::span<const double> xi) const override {
    return m_.free_energy(F, t, xi);
  }
  std::optional<Mat3> free_energy_dF(const Mat3& F, double t, std::span<const double> xi) const override {
    return m_.free_energy_dF(F, t, xi);
  }
  std::optional<double> free_energy_dtheta(const Mat3& F, double t, std::span<const double> xi) const override {
    return m_.free_energy_dtheta(F, t, xi);
  }
  std::optional<std::vector<double>> free_energy_dxi(const Mat3& F, double t,
                                                     std::span<const double> xi) const override {
    return m_.free_energy_dxi(F, t, xi);
  }
  Mat3 dissipative_stress(const ThermoState& s) const override { return m_.dissipative_stress(s); }
  std::vector<double> flow_rule(const ThermoState& s) const override {
    require_fi(m_, s.xi);
    return m_.flow_rule(s);
  }
  Vec3 heat_flux(const ThermoState& s) const override { return m_.heat_flux(s); }
  std::size_t strain_blocks() const override { return m_.strain_blocks(); }

 private:
  const MaterialModel& m_;
};

}  // namespace

Trajectory relaxation_experiment(const MaterialModel& model, double alpha, double t_end, double dt,
                                 std::optional<Mat3> fi0) {
  if (model.strain_blocks() == 0) throw Error(ErrorKind::InvalidArgument, model.name() + " has no internal strain");
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidParams, "alpha must be > 0");
  const Mat3 Fi0 = fi0.value_or(Mat3::identity());
  std::vector<double> xi0(model.dims().k);
  for (std::size_t b = 0; b < model.strain_blocks(); ++b) put_block(xi0.data() + 9 * b, Fi0);
  require_fi(model, xi0);
  LagrangianMotion motion;
  motion.F = [alpha](double) { return alpha * Mat3::identity(); };
  motion.H = [](double) { return Mat3::zero(); };
  const FiGuard guarded(model);
  Trajectory tr = dissipation_trace(guarded, motion, xi0, 0.0, t_end, dt);
  for (const auto& xi : tr.xi) require_fi(model, xi);
  return tr;
}

Trajectory zero_d_experiment(const ZeroDModel& model, double load, double t_end, double dt,
                             std::vector<double> y0) {
  if (y0.empty()) y0.assign(model.size(), 0.0);
  if (y0.size() != model.size()) throw Error(ErrorKind::DimensionMismatch, "0d initial state length");
  const OdeRhs rhs = [&](double, const std::vector<double>& y) { return model.rhs(load, y); };
  OdeSolution sol = rk4_integrate(rhs, y0, 0.0, t_end, dt);
  Trajectory tr;
  reserve(tr, sol.t.size());
  for (const auto& y : sol.y) {
    const double r = model.response(load, y);
    const double rate = model.kind == ZeroDKind::KelvinVoigt ? model.rhs(load, y)[0] : 0.0;
    tr.raw_dissipation.push_back(load * rate);
    tr.augmented_dissipation.push_back(model.dissipation(load, y));
    tr.free_energy.push_back(model.free_energy(load, y));
    tr.stress.push_back(Mat3::diag(r, 0.0, 0.0));
    tr.stress_fro_norm.push_back(std::abs(r));
    tr.clausius_duhem.push_back(model.dissipation(load, y));
  }
  tr.t = std::move(sol.t);
  tr.xi = std::move(sol.y);
  return tr;
}

}  // namespace thermovisc
