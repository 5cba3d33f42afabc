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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcsp/kb.hpp"
#include "dcsp/model.hpp"
#include "dcsp/oracle.hpp"

namespace dcsp {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// DIMACS graph coloring input: `c` comments, a `p edge <vertices> <edges>`
// header, and `e <u> <v>` lines with 1-based vertex ids. Every edge compiles
// to pairwise not-equal nogoods over the shared domain {1..colors}; duplicate
// and reversed edges collapse. An edge-count mismatch is reported through
// `warnings` (when given), not an error.
CspInstance parse_dimacs_col(const std::string& text, int colors,
                             std::vector<std::string>* warnings = nullptr);

// Line-oriented extensional CSP format:
//   # comment
//   var <name> <value>...          declare a variable with its domain
//   nogood [<name>=<value>]...     forbid a combination (may be empty)
//   neq <name> <name>              sugar for pairwise not-equal nogoods
// Names are [A-Za-z_][A-Za-z0-9_]* and must be declared before use. With
// validate (the default), instance invariants are checked and violations
// raise ParseError.
CspInstance parse_csp_text(const std::string& text, bool validate = true);

// Canonical `var`/`nogood` rendering; parse_csp_text(serialize_csp_text(i))
// reproduces i for every valid instance.
std::string serialize_csp_text(const CspInstance& inst);

// Reads a file and dispatches on extension: `.col` requires colors >= 1,
// anything else parses as CSP text. Throws on unreadable files and parse
// failures.
CspInstance load_instance(const std::string& path, int colors,
                          std::vector<std::string>* warnings = nullptr);

struct RunConfig {
  std::string instance_path;
  Policy policy = Policy::Ekbm;
  enum class Scheduler { Sync, Async } scheduler = Scheduler::Sync;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int max_rounds = 100;
  std::int64_t max_events = 1'000'000;
  int max_delay = 4;
  int colors = 0;  // 0 = not given; required for .col inputs
  enum class Format { Csv, Json } format = Format::Csv;
  std::string trace_path;  // empty = no trace
  std::int64_t oracle_cap = kDefaultOracleCap;
};

// Exit statuses shared by the commands:
//   0 saturated / ok, 1 refuted / unsat, 2 error, 3 truncated run.
inline constexpr int kExitSaturated = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitTruncated = 3;

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
// Runs both policies under identical scheduling and prints the comparison.
// Exit 2 on verdict mismatch, 3 when either run truncated, else 0.
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out,
                 std::ostream& err);
int cmd_solve_oracle(const RunConfig& config, std::ostream& out,
                     std::ostream& err);

}  // namespace dcsp
