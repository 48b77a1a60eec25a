// Copyright 2026 The kidecomp Authors
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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kidecomp/cli/commands.hpp"
#include "kidecomp/error.hpp"

namespace {

void add_common(CLI::App* cmd, std::string& seed, kidecomp::cli::RunOptions& opts) {
  cmd->add_option("--seed", seed, "Random seed (default: $KIDECOMP_SEED or 0)");
  cmd->add_option("--tol", opts.tolerances, "Tolerance override name=value")->take_all();
  cmd->add_option("--output", opts.output, "Write the report here instead of stdout");
  cmd->add_option("--format", opts.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace kidecomp::cli;

  CLI::App app{"Koashi-Imoto decomposition of density-matrix families"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string seed;

  std::string input;
  auto* dec = app.add_subcommand("decompose", "Maximal decomposition report");
  dec->add_option("input", input, "Family file")->required();
  add_common(dec, seed, opts);

  CheckInputs ci;
  auto* chk = app.add_subcommand("check", "Evaluate a predicate on a family");
  chk->add_option("kind", ci.kind, "broadcast | imprint | clone | channel")
      ->required()
      ->check(CLI::IsMember({"broadcast", "imprint", "clone", "channel"}));
  chk->add_option("input", ci.input, "Family file")->required();
  chk->add_option("--kraus", ci.kraus, "Kraus operator file (channel)");
  chk->add_option("--sigma", ci.sigma, "Environment-side family (imprint)");
  chk->add_option("--dim-a", ci.dim_a, "Dimension of A (clone)");
  chk->add_option("--dim-b", ci.dim_b, "Dimension of B (clone)");
  add_common(chk, seed, opts);

  EntropyInputs ei;
  auto* ent = app.add_subcommand("entropy", "Classical, nonclassical and redundant entropies");
  ent->add_option("input", ei.input, "Family file");
  ent->add_option("--weights", ei.weights, "Comma separated prior overriding the file");
  ent->add_option("--tensor", ei.tensor, "Two family files whose product is analysed")
      ->expected(2);
  add_common(ent, seed, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    opts.seed = seed.empty() ? env_seed() : parse_seed(seed);
  } catch (const kidecomp::Error& e) {
    std::cerr << "kidecomp: " << e.what() << "\n";
    return kExitValidation;
  }

  if (dec->parsed()) return run_decompose(input, opts, std::cout, std::cerr);
  if (chk->parsed()) return run_check(ci, opts, std::cout, std::cerr);
  return run_entropy(ei, opts, std::cout, std::cerr);
}
