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
#include <vector>

#include "dcsp/model.hpp"

namespace dcsp {

// Independent ground truth by exhaustive enumeration. Deliberately free of
// propagation or learning so it shares nothing with the engine it checks.

inline constexpr std::int64_t kDefaultOracleCap = 10'000'000;

struct OracleResult {
  enum class Status { Sat, Unsat };
  Status status = Status::Unsat;
  std::vector<Value> witness;  // first model in enumeration order (Sat only)
  std::int64_t model_count = 0;
};

// Enumerates complete assignments in mixed-radix order over variable index
// order and counts those violating no initial nogood. Throws
// std::runtime_error when the assignment space exceeds cap.
OracleResult brute_force_solve(const CspInstance& inst,
                               std::int64_t cap = kDefaultOracleCap);

// True iff every complete assignment satisfying all initial nogoods also
// satisfies n. Same cap behaviour as brute_force_solve.
bool entails(const CspInstance& inst, const Nogood& n,
             std::int64_t cap = kDefaultOracleCap);

}  // namespace dcsp
