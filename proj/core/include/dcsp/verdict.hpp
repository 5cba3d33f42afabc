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

#include <optional>
#include <string>

#include "dcsp/model.hpp"

namespace dcsp {

// How a simulation run ended. Refuted means some agent derived the empty
// nogood, proving the instance over-constrained. Saturated means quiescence:
// no messages in flight and nothing new to generate. Saturation alone does
// not certify satisfiability; tests pair it with the oracle.
struct Verdict {
  enum class Outcome { Refuted, Saturated };
  Outcome outcome = Outcome::Saturated;
  // Synchronous runs: index of the last executed round. Asynchronous runs:
  // tick of the last processed event.
  int rounds = 0;
  std::optional<Nogood> witness;  // the empty nogood, Refuted only

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline std::string outcome_name(Verdict::Outcome o) {
  return o == Verdict::Outcome::Refuted ? "refuted" : "saturated";
}

}  // namespace dcsp
