// Copyright 2026 The dapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dapt_tools/cli.hpp"

#include "dapt_tools/commands.hpp"
#include "dapt_tools/config.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace dapt::tools {

namespace {

/// Flags write into a scratch config; only flags that were given are copied
/// over the file-loaded config afterwards.
class FlagLayer {
 public:
  template <typename T>
  void add(CLI::App& app, const std::string& flag, T RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app.add_option(flag, scratch_.*field, help);
    overlays_.push_back({opt, [this, field](RunConfig& dst) { dst.*field = scratch_.*field; }});
  }

  void add_flag(CLI::App& app, const std::string& flag, bool RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app.add_flag(flag, scratch_.*field, help);
    overlays_.push_back({opt, [this, field](RunConfig& dst) { dst.*field = scratch_.*field; }});
  }

  void apply(RunConfig& dst) const {
    for (const auto& [opt, copy] : overlays_) {
      if (opt->count() > 0) copy(dst);
    }
  }

 private:
  RunConfig scratch_;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overlays_;
};

void add_common(CLI::App& app, FlagLayer& flags) {
  flags.add(app, "--model", &RunConfig::model, "gamma, spin-half or file");
  flags.add(app, "--b", &RunConfig::b, "Field strength (energy units)");
  flags.add(app, "--theta", &RunConfig::theta, "Polar angle of the field, radians");
  flags.add(app, "--w", &RunConfig::w, "Rotation frequency; v = w / (2 pi cycles)");
  flags.add(app, "--cycles", &RunConfig::cycles, "Field turns covered by s in [0, 1]");
  flags.add(app, "--hamiltonian-file", &RunConfig::hamiltonian_file, "Sampled Hamiltonian for --model file");
  flags.add(app, "--v", &RunConfig::v, "Sweep rate for --model file");
  flags.add(app, "-N,--nodes", &RunConfig::nodes, "Grid nodes (built-in models)");
  flags.add(app, "-P,--order", &RunConfig::order, "Order cap 0, 1 or 2");
  flags.add(app, "--degeneracy-tol", &RunConfig::degeneracy_tol, "Relative eigenvalue clustering tolerance");
  flags.add(app, "--rank-tol", &RunConfig::rank_tol, "Smallest admissible frame-overlap singular value");
  flags.add(app, "--gap-floor", &RunConfig::gap_floor, "Smallest admissible gap; negative for 1e-6 max|E|");
  flags.add(app, "--threshold", &RunConfig::threshold, "Validity threshold for adiabatic_ok");
  flags.add_flag(app, "--high-order", &RunConfig::high_order, "Fourth-order transport and stencils");
  flags.add(app, "--max-phase-step", &RunConfig::max_phase_step, "RK4 phase per substep, radians");
  flags.add(app, "-o,--out", &RunConfig::out, "Output prefix for .csv and .json");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Degenerate adiabatic perturbation theory: holonomies, corrections and validity margins"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));
  std::string config_path;
  app.add_option("-c,--config", config_path, "JSON config file; flags override its fields");

  using Command = nlohmann::json (*)(const RunConfig&);
  struct Sub {
    const char* name;
    const char* help;
    Command run;
  };
  const std::vector<Sub> subs{
      {"evolve", "Exact propagation against the order-P series", cmd_evolve},
      {"holonomy", "Wilczek-Zee unitaries and the corrected phase", cmd_holonomy},
      {"dapt", "Series coefficients order by order", cmd_dapt},
      {"validate", "Adiabaticity margins", cmd_validate},
      {"sweep", "Residuals and fitted orders over a list of v", cmd_sweep},
      {"fit-order", "Fit convergence orders from a sweep CSV", cmd_fit_order},
  };
  std::map<CLI::App*, std::pair<Command, std::unique_ptr<FlagLayer>>> commands;
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    auto flags = std::make_unique<FlagLayer>();
    add_common(*cmd, *flags);
    if (std::string(sub.name) == "sweep") {
      flags->add(*cmd, "--v-list", &RunConfig::v_list, "Sweep rates");
      flags->add(*cmd, "--w-list", &RunConfig::w_list, "Rotation frequencies (built-in models)");
      flags->add(*cmd, "-j,--workers", &RunConfig::workers, "Worker threads; 0 uses all cores");
    }
    if (std::string(sub.name) == "fit-order") flags->add(*cmd, "-i,--input", &RunConfig::input, "Sweep CSV");
    commands.emplace(cmd, std::make_pair(sub.run, std::move(flags)));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(ErrorKind::kConfigError);
  }

  try {
    for (const auto& [cmd, entry] : commands) {
      if (!cmd->parsed()) continue;
      RunConfig config = config_path.empty() ? RunConfig{} : load_config_file(config_path);
      entry.second->apply(config);
      if (config.out.empty()) config.out = "dapt_" + cmd->get_name();
      const nlohmann::json summary = entry.first(config);
      std::cout << summary.dump(2) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "dapt: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "dapt: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dapt::tools
