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

#include "dcsp/kb.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcsp {

std::string policy_name(Policy p) {
  return p == Policy::Baseline ? "baseline" : "ekbm";
}

NogoodStore::NogoodStore(VarId owner, const CspInstance& inst, Policy policy)
    : owner_(owner), policy_(policy), domain_(inst.domains.at(owner)) {
  for (Value d : domain_) {
    buckets_[d];
    new_tails_[d];
  }
  for (const Nogood& g : inst.initial_nogoods)
    if (g.mentions(owner_)) update(g);
}

bool NogoodStore::can_resolve() const {
  for (const auto& [d, tails] : buckets_)
    if (tails.empty()) return false;
  return !buckets_.empty();
}

bool NogoodStore::has_new_tails() const {
  for (const auto& [d, tails] : new_tails_)
    if (!tails.empty()) return true;
  return false;
}

std::map<Value, std::set<Tail>> NogoodStore::take_new_tails() {
  std::map<Value, std::set<Tail>> out = std::move(new_tails_);
  new_tails_.clear();
  for (Value d : domain_) new_tails_[d];
  return out;
}

void NogoodStore::insert(const Nogood& g) {
  stored_.insert(g);
  for (const Literal& l : g) {
    if (l.var != owner_) continue;
    Tail tail = erase_literal(g, l);
    buckets_[l.val].insert(tail);
    new_tails_[l.val].insert(tail);
  }
}

void NogoodStore::remove(const Nogood& g) {
  stored_.erase(g);
  for (const Literal& l : g) {
    if (l.var != owner_) continue;
    Tail tail = erase_literal(g, l);
    buckets_[l.val].erase(tail);
    new_tails_[l.val].erase(tail);
  }
}

UpdateOutcome NogoodStore::update(const Nogood& received) {
  if (!received.mentions(owner_))
    throw std::invalid_argument("NogoodStore::update: nogood " +
                                to_string(received) +
                                " does not mention the owner variable " +
                                default_label(owner_));
  // Senders filter false nogoods under Ekbm; re-check here so a mixed-policy
  // peer cannot corrupt the store. Counted as a plain drop.
  if (policy_ == Policy::Ekbm && is_false_nogood(received))
    return {UpdateStatus::DroppedDuplicate, {}};
  if (stored_.contains(received)) return {UpdateStatus::DroppedDuplicate, {}};

  UpdateOutcome outcome;
  if (policy_ == Policy::Ekbm) {
    // A subsumption partner must share the received nogood's owner literal,
    // so only the matching bucket needs scanning. Non-false nogoods carry
    // exactly one owner literal.
    Literal owner_lit{};
    for (const Literal& l : received)
      if (l.var == owner_) owner_lit = l;
    Tail received_tail = erase_literal(received, owner_lit);
    std::vector<Tail> beaten;
    for (const Tail& t : buckets_.at(owner_lit.val)) {
      if (subsumes(t, received_tail))
        return {UpdateStatus::DroppedSubsumed, {}};
      if (subsumes(received_tail, t)) beaten.push_back(t);
    }
    for (const Tail& t : beaten)
      outcome.eliminated.push_back(merge(t, Nogood({owner_lit})));
    std::sort(outcome.eliminated.begin(), outcome.eliminated.end());
    for (const Nogood& g : outcome.eliminated) remove(g);
  }
  insert(received);
  outcome.status = UpdateStatus::Added;
  return outcome;
}

}  // namespace dcsp
