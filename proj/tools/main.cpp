// Copyright 2026 The rbaddr Authors
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

// rbaddr: simultaneous randomized benchmarking simulator and analysis tool.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rbaddr/commands.hpp"
#include "rbaddr/io.hpp"

int main(int argc, char** argv) {
  using namespace rbaddr;
  CLI::App app{"Simultaneous randomized benchmarking and addressability analysis"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SimulateOptions sim;
  std::string lengths;
  auto* simulate = app.add_subcommand("simulate", "run Experiments 1-3, fit and report");
  simulate->add_option("--config", sim.config, "INI configuration file")->check(CLI::ExistingFile);
  simulate->add_option("--preset", sim.preset, "ideal, sample_a_depolarizing, sample_a_crosstalk, sample_a, sample_b");
  simulate->add_option("--model", sim.model, "ideal, depolarizing, decoherence, crosstalk, crosstalk+decoherence");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--lengths", lengths, "comma-separated sequence lengths");
  simulate->add_option("--K", sim.K, "sequences per length");
  simulate->add_option("--threads", sim.threads, "worker threads (0: all cores)");
  simulate->add_option("--granularity", sim.granularity, "per_generator or per_clifford");
  simulate->add_option("--out", sim.out, "output directory (default $RB_ADDR_OUT or ./rbaddr_out)");

  FitCommandOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit curves from a CSV file");
  fit_cmd->add_option("curves", fit.curves, "curves CSV (experiment,projection,m,mean,stderr,K)")->required();
  fit_cmd->add_option("--out", fit.out, "output directory");
  fit_cmd->add_option("--label", fit.label, "sample label for the report");

  PredictOptions pred;
  auto* predict = app.add_subcommand("predict", "exact model predictions without Monte Carlo");
  predict->add_option("--config", pred.config, "INI configuration file")->check(CLI::ExistingFile);
  predict->add_option("--preset", pred.preset, "device preset");
  predict->add_option("--mu-scale", pred.mu_scale, "scale factor applied to mu1 and mu2");
  predict->add_option("--out", pred.out, "output directory");

  VerifyCommandOptions ver;
  auto* verify = app.add_subcommand("verify", "run the oracle suite");
  verify->add_option("--level", ver.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--tolerance", ver.tolerance, "twirl oracle tolerance");
  verify->add_option("--seed", ver.seed, "seed for random channels");

  DumpGroupOptions dump;
  auto* dump_cmd = app.add_subcommand("dump-group", "write a group table as CSV");
  dump_cmd->add_option("--group", dump.group, "C1, CxC, CxI or IxC");
  dump_cmd->add_option("--out", dump.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (simulate->parsed()) {
    if (!lengths.empty()) {
      try {
        sim.lengths = parse_lengths(lengths);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
    }
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (fit_cmd->parsed()) return cmd_fit(fit, std::cout, std::cerr);
  if (predict->parsed()) return cmd_predict(pred, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(ver, std::cout, std::cerr);
  if (dump_cmd->parsed()) return cmd_dump_group(dump, std::cout, std::cerr);
  return kExitUsage;
}
