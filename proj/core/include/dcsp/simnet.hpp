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
#include <set>
#include <string>
#include <string_view>

#include "dcsp/kb.hpp"
#include "dcsp/metrics.hpp"
#include "dcsp/model.hpp"
#include "dcsp/resolver.hpp"
#include "dcsp/verdict.hpp"

namespace dcsp {

// One agent per variable. Agents exchange nogoods over per-ordered-pair FIFO
// channels; a resolvent is routed to every agent whose variable it mentions
// (including the producer itself, through its loopback channel, when the
// resolvent mentions the producer's own variable).

enum class MessageKind { AddNogood, Halt };

inline std::string_view message_kind_name(MessageKind k) {
  return k == MessageKind::AddNogood ? "add" : "halt";
}

// The set of variables occurring in a nogood — the recipients of its
// message. Empty for the empty nogood, which is never routed (the producer
// reports refutation instead).
std::set<VarId> related_agents(const Nogood& n);

// Hooks into the deterministic event stream. Used for traces, audits, and
// test assertions; every callback order is part of the determinism contract.
class SimObserver {
 public:
  virtual ~SimObserver() = default;
  virtual void on_send(std::int64_t tick, VarId src, VarId dst,
                       std::int64_t channel_seq, MessageKind kind,
                       const Nogood& payload) {
    (void)tick, (void)src, (void)dst, (void)channel_seq, (void)kind,
        (void)payload;
  }
  virtual void on_deliver(std::int64_t tick, VarId src, VarId dst,
                          std::int64_t channel_seq, MessageKind kind,
                          const Nogood& payload, std::string_view outcome,
                          std::int64_t eliminated) {
    (void)tick, (void)src, (void)dst, (void)channel_seq, (void)kind,
        (void)payload, (void)outcome, (void)eliminated;
  }
  virtual void on_generated(std::int64_t tick, VarId agent,
                            const GenerationBatch& batch) {
    (void)tick, (void)agent, (void)batch;
  }
  virtual void on_nogood_stored(VarId agent, const Nogood& g) {
    (void)agent, (void)g;
  }
  virtual void on_nogood_eliminated(VarId agent, const Nogood& g) {
    (void)agent, (void)g;
  }
};

// Serializes the event stream to a line-delimited text form, one record per
// line. Byte-identical across runs with identical inputs.
class TraceRecorder : public SimObserver {
 public:
  explicit TraceRecorder(const CspInstance& inst) : labels_(inst.labels) {}
  const std::string& text() const { return text_; }

  void on_send(std::int64_t tick, VarId src, VarId dst,
               std::int64_t channel_seq, MessageKind kind,
               const Nogood& payload) override;
  void on_deliver(std::int64_t tick, VarId src, VarId dst,
                  std::int64_t channel_seq, MessageKind kind,
                  const Nogood& payload, std::string_view outcome,
                  std::int64_t eliminated) override;
  void on_generated(std::int64_t tick, VarId agent,
                    const GenerationBatch& batch) override;

 private:
  std::vector<std::string> labels_;
  std::string text_;
};

struct RunResult {
  Verdict verdict;
  RunReport report;
};

// Lock-step rounds. Round 0: every agent initializes its store and resolves
// over the whole knowledge base, routing resolvents to related agents.
// Round r >= 1: every agent drains the messages sent in round r-1 (applied
// in (sender, emission order)), then every agent holding new tails resolves
// incrementally and routes. Stops on refutation, on a round with no sends
// (Saturated), or after max_rounds rounds (Saturated, truncated report).
// Throws std::invalid_argument on an invalid instance or max_rounds <= 0.
RunResult run_synchronous(const CspInstance& inst, Policy policy,
                          int max_rounds, SimObserver* observer = nullptr);

// Discrete-event loop. Every sent message gets deliver_tick = send_tick +
// uniform(1..max_delay) from the seeded generator, clamped up so deliveries
// on one channel never reorder. Events are processed in (deliver_tick,
// channel id, queue order). A delivery that adds a nogood immediately
// triggers incremental resolution and routing. Stops on refutation (after a
// Halt flood), on an empty queue (Saturated), or after max_events processed
// deliveries (truncated). Identical (inst, policy, seed, max_delay) give
// byte-identical event streams.
RunResult run_async(const CspInstance& inst, Policy policy, std::uint64_t seed,
                    int max_delay, std::int64_t max_events,
                    SimObserver* observer = nullptr);

}  // namespace dcsp
