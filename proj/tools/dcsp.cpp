// Copyright 2026 The dcsp Authors
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
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dcsp/io.hpp"

namespace {

void add_instance_options(CLI::App* cmd, dcsp::RunConfig& cfg) {
  cmd->add_option("instance", cfg.instance_path,
                  "instance file (.col needs --colors, anything else is "
                  "parsed as CSP text)")
      ->required();
  cmd->add_option("--colors", cfg.colors,
                  "number of colors for DIMACS graph coloring inputs");
}

void add_run_options(CLI::App* cmd, dcsp::RunConfig& cfg, bool* seed_given) {
  static const std::map<std::string, dcsp::Policy> policies{
      {"baseline", dcsp::Policy::Baseline}, {"ekbm", dcsp::Policy::Ekbm}};
  static const std::map<std::string, dcsp::RunConfig::Scheduler> schedulers{
      {"sync", dcsp::RunConfig::Scheduler::Sync},
      {"async", dcsp::RunConfig::Scheduler::Async}};
  static const std::map<std::string, dcsp::RunConfig::Format> formats{
      {"csv", dcsp::RunConfig::Format::Csv},
      {"json", dcsp::RunConfig::Format::Json}};
  cmd->add_option("--policy", cfg.policy, "knowledge base policy")
      ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case))
      ->default_str("ekbm");
  cmd->add_option("--scheduler", cfg.scheduler, "agent scheduling")
      ->transform(CLI::CheckedTransformer(schedulers, CLI::ignore_case))
      ->default_str("sync");
  cmd->add_option("--seed", cfg.seed,
                  "RNG seed for message delays (required with async)")
      ->each([seed_given](const std::string&) { *seed_given = true; });
  cmd->add_option("--max-rounds", cfg.max_rounds,
                  "round cap for the synchronous scheduler")
      ->default_val(100);
  cmd->add_option("--max-events", cfg.max_events,
                  "delivery cap for the asynchronous scheduler")
      ->default_val(1'000'000);
  cmd->add_option("--max-delay", cfg.max_delay,
                  "maximum random message delay in ticks")
      ->default_val(4);
  cmd->add_option("--format", cfg.format, "report format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dcsp — hyper-resolution consistency engine for distributed CSPs"};
  app.require_subcommand(1);

  dcsp::RunConfig cfg;
  bool seed_given = false;

  CLI::App* run = app.add_subcommand(
      "run", "run one policy and print the per-round report");
  add_instance_options(run, cfg);
  add_run_options(run, cfg, &seed_given);
  run->add_option("--trace", cfg.trace_path,
                  "write the message-level event trace to this file");

  CLI::App* compare = app.add_subcommand(
      "compare", "run baseline and ekbm side by side and print totals");
  add_instance_options(compare, cfg);
  add_run_options(compare, cfg, &seed_given);

  CLI::App* validate =
      app.add_subcommand("validate", "check instance invariants");
  add_instance_options(validate, cfg);

  CLI::App* solve = app.add_subcommand(
      "solve-oracle", "brute-force satisfiability by full enumeration");
  add_instance_options(solve, cfg);
  solve->add_option("--cap", cfg.oracle_cap,
                    "largest assignment space the oracle will enumerate")
      ->default_val(dcsp::kDefaultOracleCap);

  CLI11_PARSE(app, argc, argv);
  cfg.seed_set = seed_given;

  if (run->parsed()) return dcsp::cmd_run(cfg, std::cout, std::cerr);
  if (compare->parsed()) return dcsp::cmd_compare(cfg, std::cout, std::cerr);
  if (validate->parsed()) return dcsp::cmd_validate(cfg, std::cout, std::cerr);
  return dcsp::cmd_solve_oracle(cfg, std::cout, std::cerr);
}
