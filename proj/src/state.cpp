#include "thermovisc/state.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace thermovisc {

std::optional<ErrorKind> validate(const ThermoState& state, ModelDims dims) noexcept {
  const double d = det(state.F);
  if (!all_finite(state.F) || !(d > 0.0)) return ErrorKind::NonPositiveDeterminant;
  if (!(state.theta > 0.0) || !std::isfinite(state.theta)) return ErrorKind::NonPositiveTemperature;
  if (state.xi.size() != dims.k || state.pi.size() != dims.m) return ErrorKind::DimensionMismatch;
  if (!all_finite(state.H)) return ErrorKind::NonFinite;
  for (double x : state.G.v)
    if (!std::isfinite(x)) return ErrorKind::NonFinite;
  for (double x : state.xi)
    if (!std::isfinite(x)) return ErrorKind::NonFinite;
  for (double x : state.pi)
    if (!std::isfinite(x)) return ErrorKind::NonFinite;
  return std::nullopt;
}

std::optional<ErrorKind> validate(const EulerianState& state) noexcept {
  if (!all_finite(state.h)) return ErrorKind::NonFinite;
  if (state.incompressible && std::abs(trace(state.h)) > 1e-12 * fro_norm(state.h))
    return ErrorKind::InvalidArgument;
  return std::nullopt;
}

void require_valid(const ThermoState& state, ModelDims dims) {
  if (auto err = validate(state, dims)) {
    std::ostringstream os;
    os << "invalid state (k=" << dims.k << ", m=" << dims.m << ", xi=" << state.xi.size()
       << ", pi=" << state.pi.size() << ", det F=" << det(state.F) << ", theta=" << state.theta << ")";
    throw Error(*err, os.str());
  }
}

std::pair<double, double> solvent_polymer_split(double eta, double lambda1, double lambda2) {
  if (!(eta > 0.0) || !(lambda2 > 0.0) || !(lambda1 > lambda2))
    throw Error(ErrorKind::InvalidParams, "need eta > 0 and lambda1 > lambda2 > 0");
  const double ratio = lambda2 / lambda1;
  const double eta_s = ratio * eta;
  return {eta_s, eta - eta_s};
}

namespace {

struct Field {
  const char* name;
  double MaterialParams::*member;
};

constexpr Field kFields[] = {
    {"rho_ref", &MaterialParams::rho_ref},       {"mu", &MaterialParams::mu},
    {"lame", &MaterialParams::lame},             {"nu", &MaterialParams::nu},
    {"eta", &MaterialParams::eta},               {"lambda1", &MaterialParams::lambda1},
    {"lambda2", &MaterialParams::lambda2},       {"kappa", &MaterialParams::kappa},
    {"conductivity", &MaterialParams::conductivity}, {"omega", &MaterialParams::omega},
    {"gas_constant", &MaterialParams::gas_constant}, {"heat_capacity", &MaterialParams::heat_capacity},
    {"rr_nonlinear", &MaterialParams::rr_nonlinear}, {"slip", &MaterialParams::slip},
};

}  // namespace

void MaterialParams::set(std::string_view name, double value) {
  if (name == "eta_s") {
    eta_s = value;
    return;
  }
  if (name == "eta_p") {
    eta_p = value;
    return;
  }
  for (const auto& f : kFields) {
    if (name == f.name) {
      this->*f.member = value;
      return;
    }
  }
  throw Error(ErrorKind::ConfigError, "unknown parameter '" + std::string(name) + "'");
}

const std::vector<std::string>& MaterialParams::names() {
  static const std::vector<std::string> all = [] {
    std::vector<std::string> v;
    for (const auto& f : kFields) v.emplace_back(f.name);
    v.emplace_back("eta_s");
    v.emplace_back("eta_p");
    return v;
  }();
  return all;
}

std::pair<double, double> MaterialParams::viscosity_split() const {
  if (eta_s && eta_p) return {*eta_s, *eta_p};
  auto split = solvent_polymer_split(eta, lambda1, lambda2);
  if (eta_s) split.first = *eta_s;
  if (eta_p) split.second = *eta_p;
  return split;
}

void MaterialParams::check() const {
  const std::pair<const char*, double> positive[] = {
      {"rho_ref", rho_ref}, {"mu", mu},         {"nu", nu},
      {"eta", eta},         {"lambda1", lambda1}, {"lambda2", lambda2},
      {"conductivity", conductivity}, {"omega", omega}, {"gas_constant", gas_constant},
  };
  for (const auto& [name, value] : positive)
    if (!(value > 0.0) || !std::isfinite(value))
      throw Error(ErrorKind::InvalidParams, std::string(name) + " must be > 0");
  if (!(kappa >= 0.0)) throw Error(ErrorKind::InvalidParams, "kappa must be >= 0");
  if (!(heat_capacity >= 0.0)) throw Error(ErrorKind::InvalidParams, "heat_capacity must be >= 0");
  if (eta_s && !(*eta_s > 0.0)) throw Error(ErrorKind::InvalidParams, "eta_s must be > 0");
  if (eta_p && !(*eta_p > 0.0)) throw Error(ErrorKind::InvalidParams, "eta_p must be > 0");
}

double parse_real(std::string_view token) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw Error(ErrorKind::ConfigError, "not a real number: '" + std::string(token) + "'");
  return value;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, double> parse_key_values(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected 'name = value'");
    const auto key = trim(view.substr(0, eq));
    const auto val = trim(view.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": empty name");
    try {
      out[std::string(key)] = parse_real(val);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::map<std::string, double> parse_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
  return parse_key_values(in);
}

void apply(MaterialParams& params, const std::map<std::string, double>& values) {
  for (const auto& [k, v] : values) params.set(k, v);
}

}  // namespace thermovisc
