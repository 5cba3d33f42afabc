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

#include "dcsp/resolver.hpp"

#include <algorithm>
#include <unordered_set>

namespace dcsp {

namespace {

// Depth-first lexicographic walk of the bucket cross product. In incremental
// mode, subtrees that can no longer reach a new tail are pruned whole, so
// the walk never pays for the all-old product it is excluding. Unions are
// built by merging the pre-sorted tails level by level.
struct CrossProduct {
  const std::vector<std::vector<Tail>>& tails;
  const std::vector<std::vector<char>>& fresh;
  const std::vector<char>& has_new_at_or_after;
  bool incremental;
  Policy policy;
  GenerationBatch& batch;
  std::unordered_set<Nogood> seen;
  std::vector<std::vector<Literal>> acc;  // merged literals per level

  void walk(std::size_t level, bool prefix_has_new) {
    if (level == tails.size()) {
      emit();
      return;
    }
    const std::vector<Tail>& bucket = tails[level];
    const bool need_new_here =
        incremental && !prefix_has_new &&
        !(level + 1 < tails.size() && has_new_at_or_after[level + 1]);
    for (std::size_t j = 0; j < bucket.size(); ++j) {
      const bool tail_new = incremental && fresh[level][j] != 0;
      if (need_new_here && !tail_new) continue;
      merge_into(level, bucket[j]);
      walk(level + 1, prefix_has_new || tail_new || !incremental);
    }
  }

  void merge_into(std::size_t level, const Tail& t) {
    const std::vector<Literal>& base = acc[level];
    std::vector<Literal>& out = acc[level + 1];
    out.clear();
    std::merge(base.begin(), base.end(), t.begin(), t.end(),
               std::back_inserter(out));
  }

  void emit() {
    std::vector<Literal> lits = acc[tails.size()];
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    Nogood resolvent(std::move(lits));
    if (policy == Policy::Ekbm && is_false_nogood(resolvent)) return;
    if (resolvent.empty()) batch.has_empty = true;
    if (seen.insert(resolvent).second) batch.distinct.push_back(resolvent);
    batch.resolvents.push_back(std::move(resolvent));
  }
};

GenerationBatch generate(const NogoodStore& store,
                         const std::map<Value, std::set<Tail>>* new_tails,
                         Policy policy) {
  GenerationBatch batch;
  const std::vector<Value>& domain = store.domain();
  const std::size_t m = domain.size();
  if (m == 0) return batch;

  std::vector<std::vector<Tail>> tails(m);
  std::vector<std::vector<char>> fresh(m);
  std::vector<char> bucket_has_new(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::set<Tail>* fresh_set = nullptr;
    if (new_tails) {
      auto it = new_tails->find(domain[i]);
      if (it != new_tails->end()) fresh_set = &it->second;
    }
    for (const Tail& t : store.bucket(domain[i])) {
      tails[i].push_back(t);
      const bool is_new = fresh_set && fresh_set->contains(t);
      fresh[i].push_back(is_new ? 1 : 0);
      if (is_new) bucket_has_new[i] = 1;
    }
    if (tails[i].empty()) return batch;  // rule inapplicable
  }

  std::vector<char> has_new_at_or_after(m, 0);
  for (std::size_t i = m; i-- > 0;)
    has_new_at_or_after[i] =
        (bucket_has_new[i] || (i + 1 < m && has_new_at_or_after[i + 1])) ? 1
                                                                         : 0;
  if (new_tails && !has_new_at_or_after[0]) return batch;  // nothing new

  CrossProduct walker{tails,     fresh,  has_new_at_or_after,
                      new_tails != nullptr, policy, batch,
                      {},        {}};
  walker.acc.resize(m + 1);
  walker.walk(0, false);
  batch.raw_count = static_cast<std::int64_t>(batch.resolvents.size());
  return batch;
}

}  // namespace

GenerationBatch generate_full(const NogoodStore& store, Policy policy) {
  return generate(store, nullptr, policy);
}

GenerationBatch generate_incremental(
    const NogoodStore& store, const std::map<Value, std::set<Tail>>& new_tails,
    Policy policy) {
  return generate(store, &new_tails, policy);
}

}  // namespace dcsp
