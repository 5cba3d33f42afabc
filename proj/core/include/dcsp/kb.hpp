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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dcsp/model.hpp"

namespace dcsp {

// How an agent maintains its knowledge base.
//  - Baseline: plain consistency bookkeeping. Exact duplicates are dropped,
//    everything else is kept forever.
//  - Ekbm: managed knowledge base. False nogoods are filtered, and insertion
//    performs bidirectional subsumption: a received nogood subsumed by a
//    stored one is dropped, and an added nogood eliminates every stored
//    nogood it subsumes.
enum class Policy { Baseline, Ekbm };

std::string policy_name(Policy p);  // "baseline" / "ekbm"

enum class UpdateStatus { DroppedDuplicate, DroppedSubsumed, Added };

struct UpdateOutcome {
  UpdateStatus status = UpdateStatus::DroppedDuplicate;
  // Stored nogoods removed by this insertion (Ekbm adds only), in canonical
  // order.
  std::vector<Nogood> eliminated;
};

// One agent's knowledge base: every held nogood mentions the owner variable,
// and for each owner literal (owner, d) the bucket of value d holds the
// nogood's remainder ("tail"). The domain disjunction itself is metadata,
// not a stored nogood, and does not count toward size().
//
// new_tails tracks the tails inserted since the last take_new_tails() call,
// so resolution can run incrementally over fresh material only.
class NogoodStore {
 public:
  // Seeds the store with every initial nogood of the instance that mentions
  // owner, routed through the same policy discipline as update().
  NogoodStore(VarId owner, const CspInstance& inst, Policy policy);

  VarId owner() const { return owner_; }
  Policy policy() const { return policy_; }
  const std::vector<Value>& domain() const { return domain_; }
  const std::set<Nogood>& stored() const { return stored_; }
  const std::map<Value, std::set<Tail>>& buckets() const { return buckets_; }
  const std::set<Tail>& bucket(Value d) const { return buckets_.at(d); }
  const std::map<Value, std::set<Tail>>& new_tails() const {
    return new_tails_;
  }

  // Count of stored nogoods (domain clause excluded).
  int size() const { return static_cast<int>(stored_.size()); }

  // True when every bucket is nonempty, i.e. hyper-resolution of the domain
  // clause is applicable.
  bool can_resolve() const;

  bool has_new_tails() const;

  // Returns the accumulated new tails and clears the accumulator; callers
  // treat the returned tails as "new" and the remaining bucket contents as
  // "old" for the next generation round.
  std::map<Value, std::set<Tail>> take_new_tails();

  // Inserts a received nogood under this store's policy. Throws
  // std::invalid_argument when the nogood does not mention the owner (a
  // routing bug). Under Ekbm a false nogood is dropped defensively and
  // reported as a duplicate drop.
  UpdateOutcome update(const Nogood& received);

 private:
  void insert(const Nogood& g);
  void remove(const Nogood& g);

  VarId owner_;
  Policy policy_;
  std::vector<Value> domain_;
  std::set<Nogood> stored_;
  std::map<Value, std::set<Tail>> buckets_;
  std::map<Value, std::set<Tail>> new_tails_;
};

}  // namespace dcsp
