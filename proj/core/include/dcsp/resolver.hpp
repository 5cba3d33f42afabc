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
#include <map>
#include <set>
#include <vector>

#include "dcsp/kb.hpp"
#include "dcsp/model.hpp"

namespace dcsp {

// Output of one resolution pass. Each resolvent is the canonical union of
// one tail per bucket; raw_count counts surviving combination events, so a
// nogood reachable through two different tail choices contributes twice to
// raw_count but once to distinct.
struct GenerationBatch {
  std::vector<Nogood> resolvents;  // emission order, duplicates retained
  std::vector<Nogood> distinct;    // first-occurrence order, no duplicates
  std::int64_t raw_count = 0;      // == resolvents.size()
  bool has_empty = false;          // an empty resolvent was derived
};

// Resolves the owner's domain clause against one tail per bucket, over the
// whole cross product. Returns an empty batch when any bucket is empty
// (resolution is inapplicable, not an error). Under Ekbm, false resolvents
// are dropped before counting; Baseline keeps them. Emission order is
// lexicographic over the chosen tail tuples, buckets in domain order.
GenerationBatch generate_full(const NogoodStore& store, Policy policy);

// Same cross product restricted to combinations that use at least one tail
// from new_tails, i.e. the full product minus the all-old product. The
// all-old combinations were already emitted by earlier passes.
GenerationBatch generate_incremental(
    const NogoodStore& store, const std::map<Value, std::set<Tail>>& new_tails,
    Policy policy);

}  // namespace dcsp
