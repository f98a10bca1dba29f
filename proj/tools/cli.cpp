#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "thermovisc/catalog.hpp"
#include "thermovisc/dynamics.hpp"
#include "thermovisc/error.hpp"
#include "thermovisc/numdiff.hpp"
#include "thermovisc/random.hpp"

namespace thermovisc {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Number of reference changes S drawn for the material-symmetry check.
constexpr int kSymmetryDraws = 10;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

struct CommonArgs {
  std::string model;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::optional<double> t_end;
  double dt = 1e-3;
  std::string out;
  std::string config;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App& cmd, CommonArgs& a) {
  cmd.add_option("--model", a.model, "model name from the catalog");
  cmd.add_option("--seed", a.seed, "random seed");
  cmd.add_option("--samples", a.samples, "samples per check")->check(CLI::PositiveNumber);
  cmd.add_option("--t-end", a.t_end, "end time");
  cmd.add_option("--dt", a.dt, "time step")->check(CLI::PositiveNumber);
  cmd.add_option("--out", a.out, "output file");
  cmd.add_option("--config", a.config, "key = value parameter file");
  for (const auto& name : MaterialParams::names()) {
    std::string flags = "--" + name;
    std::string dashed = name;
    for (char& c : dashed)
      if (c == '_') c = '-';
    if (dashed != name) flags += ",--" + dashed;
    cmd.add_option_function<std::string>(
        flags, [&a, name](const std::string& v) { a.overrides[name] = v; }, "material parameter");
  }
}

MaterialParams resolve_params(const CommonArgs& a) {
  MaterialParams p;
  if (!a.config.empty()) thermovisc::apply(p, parse_key_values_file(a.config));
  for (const auto& [name, text] : a.overrides) p.set(name, parse_real(text));
  return p;
}

FreeEnergyKind parse_free_energy(const std::string& s, FreeEnergyKind fallback) {
  if (s.empty()) return fallback;
  if (s == "none") return FreeEnergyKind::None;
  if (s == "zj") return FreeEnergyKind::ZjQuadratic;
  throw Error(ErrorKind::ConfigError, "--free-energy must be none or zj");
}

Mat3 parse_m(const std::string& spec, std::uint64_t seed, std::ostream& err) {
  if (spec.empty()) return random_traceless_matrix(seed);
  if (spec == "zero") return Mat3::zero();
  if (spec.rfind("seed:", 0) == 0) {
    const double v = parse_real(spec.substr(5));
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
      throw Error(ErrorKind::ConfigError, "seed:<n> needs a non-negative integer");
    return random_traceless_matrix(static_cast<std::uint64_t>(v));
  }
  std::vector<double> entries;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) entries.push_back(parse_real(tok));
  if (entries.size() != 9)
    throw Error(ErrorKind::ConfigError, "--m needs zero, seed:<n> or nine comma-separated entries");
  const Mat3 m = block(entries.data());
  if (trace(m) != 0.0) err << "warning: trace of m projected off\n";
  return project_traceless(m);
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot open '" + path + "' for writing");
  body(f);
  if (!f) throw Error(ErrorKind::ConfigError, "failed writing '" + path + "'");
}

int cmd_shake(const CommonArgs& a, const std::string& m_spec, const std::string& fe, std::ostream& out,
              std::ostream& err) {
  const std::string name = a.model.empty() ? "oldroyd-b" : a.model;
  if (catalog_entry(name).kind != CatalogKind::ComplexFluid)
    throw Error(ErrorKind::ConfigError, "shake needs oldroyd-b, zaremba-jaumann or custom");
  const MaterialParams p = resolve_params(a);
  const FreeEnergyKind kind = parse_free_energy(fe, FreeEnergyKind::None);
  const ComplexFluidModel model = make_complex_fluid(name, p, kind);

  ShakeConfig cfg;
  cfg.m = parse_m(m_spec, a.seed, err);
  cfg.omega = p.omega;
  cfg.t_end = a.t_end.value_or(4.0);
  cfg.dt = a.dt;
  const Trajectory traj = shaking_experiment(model, cfg);
  if (!a.out.empty()) write_file(a.out, [&](std::ostream& f) { traj.write_csv(f); });

  const ShakeSummary s = summarize_dissipation(traj, true);
  out << "min_dissipation=" << fmt(s.min_dissipation)
      << " first_negative_t=" << (s.first_negative_t ? fmt(*s.first_negative_t) : std::string("none"));
  if (kind != FreeEnergyKind::None) out << " min_raw_dissipation=" << fmt(summarize_dissipation(traj, false).min_dissipation);
  out << "\n";
  return kExitOk;
}

int cmd_relax(const CommonArgs& a, double alpha, double strain, std::ostream& out) {
  const std::string name = a.model.empty() ? "maxwell0d" : a.model;
  const CatalogEntry& e = catalog_entry(name);
  const MaterialParams p = resolve_params(a);
  const double t_end = a.t_end.value_or(5.0);

  Trajectory traj;
  if (e.kind == CatalogKind::ZeroD) {
    const ZeroDModel m = make_zero_d(name, p);
    if (m.kind == ZeroDKind::KelvinVoigt) throw Error(ErrorKind::ConfigError, "relax needs a Maxwell-family model");
    traj = zero_d_experiment(m, strain, t_end, a.dt);
  } else if (e.kind == CatalogKind::Lagrangian && e.designated_check.empty()) {
    const auto m = make_model(name, p);
    if (m->strain_blocks() == 0) throw Error(ErrorKind::ConfigError, "relax needs a Maxwell-family model");
    traj = relaxation_experiment(*m, alpha, t_end, a.dt);
  } else {
    throw Error(ErrorKind::ConfigError, "relax needs a Maxwell-family model");
  }
  if (!a.out.empty()) write_file(a.out, [&](std::ostream& f) { traj.write_csv(f); });

  const double s0 = traj.stress_fro_norm.front();
  if (s0 == 0.0)
    out << "final_over_initial=zero_stress\n";
  else
    out << "final_over_initial=" << fmt(traj.stress_fro_norm.back() / s0) << "\n";
  return kExitOk;
}

int cmd_check(const CommonArgs& a, const std::string& fe, const std::vector<std::string>& expect_fail,
              bool serial, std::ostream& out) {
  if (a.model.empty()) throw Error(ErrorKind::ConfigError, "check needs --model");
  const MaterialParams p = resolve_params(a);
  CheckOptions opt;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.parallel = !serial;
  const FreeEnergyKind fallback =
      a.model == "zaremba-jaumann" ? FreeEnergyKind::ZjQuadratic : FreeEnergyKind::None;
  const auto reports = check_battery(a.model, p, parse_free_energy(fe, fallback), opt);

  std::set<std::string> names;
  for (const auto& r : reports) names.insert(r.name);
  for (const auto& x : expect_fail)
    if (!names.count(x)) throw Error(ErrorKind::ConfigError, "--expect-fail " + x + " is not in the battery");

  const std::set<std::string> expected(expect_fail.begin(), expect_fail.end());
  bool ok = true;
  for (const auto& r : reports) {
    out << r.line() << "\n";
    if (r.pass == static_cast<bool>(expected.count(r.name))) ok = false;
  }
  if (!a.out.empty())
    write_file(a.out, [&](std::ostream& f) {
      for (const auto& r : reports) f << r.line() << " worst_state=" << r.worst_state << "\n";
    });
  return ok ? kExitOk : kExitCheckFailed;
}

CheckOptions with_tol(CheckOptions opt, double tol) {
  opt.tol = tol;
  return opt;
}

std::vector<CheckReport> lagrangian_battery(const CatalogEntry& e, const MaterialModel& model,
                                            const CheckOptions& opt) {
  std::vector<CheckReport> r;
  const bool internal = model.dims().k > 0;
  const auto frame = [&] {
    return internal ? check_internal_variable_frame_indifference(model, with_tol(opt, 1e-11))
                    : check_stress_frame_indifference(model, with_tol(opt, 1e-11));
  };
  if (!e.designated_check.empty()) {
    if (e.designated_check == "cauchy-symmetry")
      r.push_back(check_cauchy_symmetry(model, with_tol(opt, 1e-10)));
    else
      r.push_back(frame());
    return r;
  }

  r.push_back(frame());
  if (model.symmetry_class() != SymmetryClass::None) {
    Rng rng(splitmix64(opt.seed ^ 0x5e11a5ULL));
    CheckOptions sub = with_tol(opt, 1e-10);
    sub.samples = std::max<std::size_t>(1, opt.samples / kSymmetryDraws);
    std::vector<CheckReport> parts;
    for (int i = 0; i < kSymmetryDraws; ++i) {
      const Mat3 S =
          model.symmetry_class() == SymmetryClass::Solid ? random_rotation(rng) : random_unimodular(rng);
      sub.seed = opt.seed + static_cast<std::uint64_t>(i);
      parts.push_back(check_material_symmetry(model, S, sub));
    }
    r.push_back(merge_reports("material-symmetry", parts));
  }
  r.push_back(check_cauchy_symmetry(model, with_tol(opt, 1e-10)));
  r.push_back(check_clausius_planck(model, with_tol(opt, 1e-10)));
  for (auto& g : check_model_gradients(model, with_tol(opt, 1e-6))) r.push_back(std::move(g));
  if (const auto pot = model.potential()) {
    r.push_back(check_convexity(*pot, with_tol(opt, 1e-12)));
    for (auto& g : check_potential_gradients(*pot, with_tol(opt, 1e-6))) r.push_back(std::move(g));
  }
  return r;
}

std::vector<CheckReport> fluid_battery(const ComplexFluidModel& model, const CheckOptions& opt) {
  std::vector<CheckReport> r;
  r.push_back(check_objectivity(model, with_tol(opt, 1e-11)));
  r.push_back(check_clausius_planck(model, with_tol(opt, 1e-10)));
  if (model.free_energy_kind() != FreeEnergyKind::None) {
    const ScalarFn f = [&](const std::vector<double>& x) { return model.free_energy(block(x.data())); };
    const GradientFn g = [&](const std::vector<double>& x) {
      std::vector<double> out(9);
      put_block(out.data(), model.free_energy_gradient(block(x.data())));
      return out;
    };
    const PointSampler s = [](Rng& rng) {
      std::vector<double> x(9);
      put_block(x.data(), random_sym(rng).to_mat());
      return x;
    };
    r.push_back(check_gradient("gradient-free-energy", f, g, s, with_tol(opt, 1e-6)));
  }
  return r;
}

}  // namespace

std::vector<CheckReport> check_battery(const std::string& name, const MaterialParams& params,
                                       FreeEnergyKind free_energy, const CheckOptions& opt) {
  const CatalogEntry& e = catalog_entry(name);
  switch (e.kind) {
    case CatalogKind::Lagrangian: return lagrangian_battery(e, *make_model(name, params), opt);
    case CatalogKind::ComplexFluid: return fluid_battery(make_complex_fluid(name, params, free_energy), opt);
    case CatalogKind::ZeroD: break;
  }
  throw Error(ErrorKind::ConfigError, name + " has no check battery");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-strain thermo-visco-elastic toolkit", "thermovisc"};
  app.require_subcommand(1);

  CommonArgs shake_args, relax_args, check_args;
  std::string m_spec, shake_fe, check_fe;
  double alpha = 1.2;
  double strain = 1.0;
  std::vector<std::string> expect_fail;
  bool serial = false;

  CLI::App* shake = app.add_subcommand("shake", "shaking experiment on a complex fluid");
  add_common(*shake, shake_args);
  shake->add_option("--m", m_spec, "zero, seed:<n>, or nine comma-separated entries");
  shake->add_option("--free-energy", shake_fe, "none or zj");

  CLI::App* relax = app.add_subcommand("relax", "stress relaxation under held strain");
  add_common(*relax, relax_args);
  relax->add_option("--alpha", alpha, "held stretch F = alpha I (3d models)");
  relax->add_option("--strain", strain, "held strain (0d models)");

  CLI::App* check = app.add_subcommand("check", "randomized verification battery");
  add_common(*check, check_args);
  check->add_option("--free-energy", check_fe, "none or zj");
  check->add_option("--expect-fail", expect_fail, "check expected to fail (repeatable)");
  check->add_flag("--serial", serial, "use the serial sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*shake) return cmd_shake(shake_args, m_spec, shake_fe, out, err);
    if (*relax) return cmd_relax(relax_args, alpha, strain, out);
    return cmd_check(check_args, check_fe, expect_fail, serial, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::NonFinite:
      case ErrorKind::DetFiCollapse:
      case ErrorKind::NotPositiveDefinite:
        return kExitNumeric;
      default:
        return kExitConfig;
    }
  }
}

}  // namespace thermovisc
