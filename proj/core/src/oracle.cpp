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

#include "dcsp/oracle.hpp"

#include <stdexcept>

namespace dcsp {

namespace {

void check_cap(const CspInstance& inst, std::int64_t cap) {
  std::int64_t product = 1;
  for (const auto& dom : inst.domains) {
    if (dom.empty()) return;  // zero assignments, trivially under any cap
    if (product > cap / static_cast<std::int64_t>(dom.size()))
      throw std::runtime_error(
          "oracle: assignment space exceeds the enumeration cap of " +
          std::to_string(cap));
    product *= static_cast<std::int64_t>(dom.size());
  }
}

// A complete assignment satisfies a nogood unless it matches every literal.
bool violates(const std::vector<Value>& assignment, const Nogood& n) {
  for (const Literal& l : n)
    if (assignment[l.var] != l.val) return false;
  return true;
}

// Calls fn for every complete assignment; stops early if fn returns false.
template <typename Fn>
void for_each_assignment(const CspInstance& inst, Fn&& fn) {
  const int n = inst.var_count;
  for (const auto& dom : inst.domains)
    if (dom.empty()) return;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Value> assignment(n);
  for (int v = 0; v < n; ++v) assignment[v] = inst.domains[v][0];
  for (;;) {
    if (!fn(assignment)) return;
    int v = n;
    while (v > 0) {
      --v;
      if (++idx[v] < inst.domains[v].size()) {
        assignment[v] = inst.domains[v][idx[v]];
        break;
      }
      idx[v] = 0;
      assignment[v] = inst.domains[v][0];
      if (v == 0) return;
    }
    if (n == 0) return;  // single empty assignment already visited
  }
}

}  // namespace

OracleResult brute_force_solve(const CspInstance& inst, std::int64_t cap) {
  check_cap(inst, cap);
  OracleResult result;
  for_each_assignment(inst, [&](const std::vector<Value>& assignment) {
    for (const Nogood& g : inst.initial_nogoods)
      if (violates(assignment, g)) return true;
    if (result.model_count == 0) result.witness = assignment;
    ++result.model_count;
    return true;
  });
  result.status = result.model_count > 0 ? OracleResult::Status::Sat
                                         : OracleResult::Status::Unsat;
  return result;
}

bool entails(const CspInstance& inst, const Nogood& n, std::int64_t cap) {
  check_cap(inst, cap);
  bool entailed = true;
  for_each_assignment(inst, [&](const std::vector<Value>& assignment) {
    for (const Nogood& g : inst.initial_nogoods)
      if (violates(assignment, g)) return true;
    if (violates(assignment, n)) {
      entailed = false;
      return false;
    }
    return true;
  });
  return entailed;
}

}  // namespace dcsp
