#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thermovisc/complex_fluid.hpp"
#include "thermovisc/state.hpp"
#include "thermovisc/verify.hpp"

namespace thermovisc {

/// Exit codes: 0 success or expected outcome, 1 check failure, 2 usage or
/// configuration error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The check battery `check --model name` runs, in report order.
std::vector<CheckReport> check_battery(const std::string& model, const MaterialParams& params,
                                       FreeEnergyKind free_energy, const CheckOptions& opt);

}  // namespace thermovisc
