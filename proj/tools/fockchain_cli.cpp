// Copyright 2026 fockchain developers
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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fockchain/cli.hpp"

namespace {

// Runs a command with output going to --out (when given) or stdout.
int with_output(const std::string& out_path,
                const std::function<int(std::ostream&)>& command) {
  if (out_path.empty()) return command(std::cout);
  std::ofstream file(out_path);
  if (!file) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return fockchain::kParseError;
  }
  return command(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fockchain: compiles two-mode fixed-photon-number entangled states "
      "into heralded beam-splitter chains and simulates them exactly"};
  app.require_subcommand(1);

  fockchain::RunConfig config;
  std::string out_path;

  auto add_common = [&](CLI::App* cmd, bool with_target) {
    cmd->add_option("--transmittance", config.transmittance,
                    "Conditioning beam-splitter transmittance in (0,1)");
    cmd->add_option("--out", out_path, "Write the report to a file");
    if (with_target) {
      cmd->add_option("--target", config.target_file,
                      "Target JSON file: {\"n_total\": N, \"coefficients\": "
                      "[[re, im], ...]}");
      cmd->add_option("--preset", config.preset, "Named target, e.g. noon:4");
      cmd->add_option("--seed", config.seed, "Seed for solver multi-start");
    }
  };

  CLI::App* generate =
      app.add_subcommand("generate", "Compile and simulate a target state");
  add_common(generate, true);
  generate->add_option("--format", config.format,
                       "Report format: text or structured");
  generate->add_option("--fidelity-threshold", config.fidelity_threshold,
                       "Exit nonzero below this fidelity");
  generate->add_option("--solver-tolerance", config.solver_tolerance,
                       "Per-stage solver residual tolerance");

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "Run the four-photon generator benchmark");
  add_common(fig2, false);
  fig2->add_option("--format", config.format,
                   "Report format: text or structured");

  fockchain::SweepSpec sweep_spec;
  std::string axis = "transmittance";
  CLI::App* sweep =
      app.add_subcommand("sweep", "Emit CSV rows over a parameter axis");
  add_common(sweep, true);
  sweep->add_option("--axis", axis, "Sweep axis: transmittance or photons");
  sweep->add_option("--from", sweep_spec.from, "Axis start (transmittance)");
  sweep->add_option("--to", sweep_spec.to, "Axis end (transmittance)");
  sweep->add_option("--steps", sweep_spec.steps, "Number of points");
  sweep->add_option("--max-n", sweep_spec.max_n,
                    "Largest photon number (photons axis)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fockchain::kParseError;
  }

  try {
    if (generate->parsed()) {
      return with_output(out_path, [&](std::ostream& out) {
        return fockchain::cmd_generate(config, out, std::cerr);
      });
    }
    if (fig2->parsed()) {
      return with_output(out_path, [&](std::ostream& out) {
        return fockchain::cmd_fig2(config, out, std::cerr);
      });
    }
    if (axis != "transmittance" && axis != "photons") {
      std::cerr << "error: sweep axis must be transmittance or photons\n";
      return fockchain::kParseError;
    }
    sweep_spec.axis = axis == "transmittance"
                          ? fockchain::SweepAxis::kTransmittance
                          : fockchain::SweepAxis::kPhotons;
    return with_output(out_path, [&](std::ostream& out) {
      return fockchain::cmd_sweep(config, sweep_spec, out, std::cerr);
    });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
