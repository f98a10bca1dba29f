#pragma once

// Models addressable by name from the command line.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thermovisc/complex_fluid.hpp"
#include "thermovisc/laws.hpp"
#include "thermovisc/models.hpp"
#include "thermovisc/state.hpp"

namespace thermovisc {

enum class CatalogKind { Lagrangian, ComplexFluid, ZeroD };

struct CatalogEntry {
  std::string name;
  CatalogKind kind;
  std::string summary;
  /// Counterexamples only: the one check the model is built to break. Their
  /// check battery consists of that check alone.
  std::string designated_check{};
};

const std::vector<CatalogEntry>& catalog();
/// Throws Error(ConfigError) for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

/// Lagrangian models. Every one of them carries the Fourier heat flux with
/// the configured conductivity, except the counterexamples.
std::shared_ptr<const MaterialModel> make_model(const std::string& name, const MaterialParams& params);

/// oldroyd-b, zaremba-jaumann, or custom (Gordon-Schowalter with a = slip).
ComplexFluidModel make_complex_fluid(const std::string& name, const MaterialParams& params,
                                     FreeEnergyKind free_energy = FreeEnergyKind::None);

/// maxwell0d, kelvin-voigt0d.
ZeroDModel make_zero_d(const std::string& name, const MaterialParams& params);

/// Skew matrix used by counterexample-skew.
Mat3 counterexample_skew_matrix();

}  // namespace thermovisc
