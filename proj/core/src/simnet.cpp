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

#include "dcsp/simnet.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>
#include <vector>

namespace dcsp {

std::set<VarId> related_agents(const Nogood& n) {
  std::set<VarId> vars;
  for (const Literal& l : n) vars.insert(l.var);
  return vars;
}

void TraceRecorder::on_send(std::int64_t tick, VarId src, VarId dst,
                            std::int64_t channel_seq, MessageKind kind,
                            const Nogood& payload) {
  text_ += "send t=" + std::to_string(tick) + " ch=" + labels_[src] + ">" +
           labels_[dst] + " seq=" + std::to_string(channel_seq) + " " +
           std::string(message_kind_name(kind));
  if (kind == MessageKind::AddNogood) text_ += " " + to_string(payload, labels_);
  text_ += "\n";
}

void TraceRecorder::on_deliver(std::int64_t tick, VarId src, VarId dst,
                               std::int64_t channel_seq, MessageKind kind,
                               const Nogood& payload, std::string_view outcome,
                               std::int64_t eliminated) {
  text_ += "recv t=" + std::to_string(tick) + " ch=" + labels_[src] + ">" +
           labels_[dst] + " seq=" + std::to_string(channel_seq) + " " +
           std::string(message_kind_name(kind));
  if (kind == MessageKind::AddNogood) text_ += " " + to_string(payload, labels_);
  text_ += " outcome=" + std::string(outcome) +
           " elim=" + std::to_string(eliminated) + "\n";
}

void TraceRecorder::on_generated(std::int64_t tick, VarId agent,
                                 const GenerationBatch& batch) {
  text_ += "gen t=" + std::to_string(tick) + " agent=" + labels_[agent] +
           " raw=" + std::to_string(batch.raw_count) +
           " distinct=" + std::to_string(batch.distinct.size()) +
           " empty=" + (batch.has_empty ? std::string("1") : std::string("0")) +
           "\n";
}

namespace {

constexpr std::string_view kOutcomeAdded = "added";
constexpr std::string_view kOutcomeDuplicate = "duplicate";
constexpr std::string_view kOutcomeSubsumed = "subsumed";
constexpr std::string_view kOutcomeHalted = "halted";
constexpr std::string_view kOutcomeIgnored = "ignored";

// State shared by both schedulers: the agents, the report, per-channel send
// counters, and the observer plumbing.
struct SimCore {
  const CspInstance& inst;
  Policy policy;
  SimObserver* obs;
  int n;
  std::vector<NogoodStore> stores;
  std::vector<char> halted;
  std::vector<std::int64_t> channel_send_seq;  // indexed src * n + dst
  RunReport report;
  bool refuted = false;

  SimCore(const CspInstance& instance, Policy pol, const char* scheduler,
          SimObserver* observer)
      : inst(instance), policy(pol), obs(observer), n(instance.var_count) {
    const ValidationResult vr = validate_instance(inst);
    if (!vr.ok())
      throw std::invalid_argument("invalid instance: " + vr.summary());
    halted.assign(n, 0);
    channel_send_seq.assign(static_cast<std::size_t>(n) * n, 0);
    report.policy = policy;
    report.scheduler = scheduler;
    report.agent_labels = inst.labels;
    report.instance_digest = instance_digest(inst);
    stores.reserve(n);
    for (VarId v = 0; v < n; ++v) {
      stores.emplace_back(v, inst, policy);
      if (obs)
        for (const Nogood& g : stores.back().stored())
          obs->on_nogood_stored(v, g);
      record_event(report,
                   {0, v, MetricsEventKind::KbSize, stores.back().size()});
    }
  }

  // An initial empty nogood mentions no variable, so no store holds it;
  // it refutes the instance outright before any resolution.
  bool initially_refuted() const {
    for (const Nogood& g : inst.initial_nogoods)
      if (g.empty()) return true;
    return false;
  }

  std::int64_t next_seq(VarId src, VarId dst) {
    return channel_send_seq[static_cast<std::size_t>(src) * n + dst]++;
  }

  UpdateOutcome apply(std::int64_t tick, VarId src, VarId dst,
                      std::int64_t seq, const Nogood& payload) {
    const int round = static_cast<int>(tick);
    UpdateOutcome outcome = stores[dst].update(payload);
    record_event(report, {round, dst, MetricsEventKind::Received, 1});
    std::string_view name = kOutcomeDuplicate;
    switch (outcome.status) {
      case UpdateStatus::Added:
        name = kOutcomeAdded;
        record_event(report, {round, dst, MetricsEventKind::Added, 1});
        break;
      case UpdateStatus::DroppedDuplicate:
        record_event(report,
                     {round, dst, MetricsEventKind::DroppedDuplicate, 1});
        break;
      case UpdateStatus::DroppedSubsumed:
        name = kOutcomeSubsumed;
        record_event(report,
                     {round, dst, MetricsEventKind::DroppedSubsumed, 1});
        break;
    }
    if (!outcome.eliminated.empty())
      record_event(
          report,
          {round, dst, MetricsEventKind::Eliminated,
           static_cast<std::int64_t>(outcome.eliminated.size())});
    record_event(report, {round, dst, MetricsEventKind::KbSize,
                          stores[dst].size()});
    if (obs) {
      obs->on_deliver(tick, src, dst, seq, MessageKind::AddNogood, payload,
                      name,
                      static_cast<std::int64_t>(outcome.eliminated.size()));
      if (outcome.status == UpdateStatus::Added)
        obs->on_nogood_stored(dst, payload);
      for (const Nogood& g : outcome.eliminated)
        obs->on_nogood_eliminated(dst, g);
    }
    return outcome;
  }

  // Resolves for agent v, consuming its new tails. `full` marks the very
  // first pass over the whole knowledge base. Returns an empty batch without
  // consuming anything when some bucket is still empty, so accumulated
  // novelty is kept for the round that makes resolution applicable.
  GenerationBatch generate(std::int64_t tick, VarId v, bool full) {
    GenerationBatch batch;
    if (!stores[v].can_resolve()) return batch;
    if (full) {
      stores[v].take_new_tails();
      batch = generate_full(stores[v], policy);
    } else {
      batch = generate_incremental(stores[v], stores[v].take_new_tails(),
                                   policy);
    }
    record_event(report, {static_cast<int>(tick), v,
                          MetricsEventKind::Generated, batch.raw_count});
    if (obs) obs->on_generated(tick, v, batch);
    if (batch.has_empty) refuted = true;
    return batch;
  }
};

struct QueuedMessage {
  MessageKind kind = MessageKind::AddNogood;
  Nogood payload;
  VarId src = 0;
  VarId dst = 0;
  std::int64_t send_tick = 0;
  std::int64_t deliver_tick = 0;
  std::int64_t channel_seq = 0;
};

}  // namespace

RunResult run_synchronous(const CspInstance& inst, Policy policy,
                          int max_rounds, SimObserver* observer) {
  if (max_rounds <= 0)
    throw std::invalid_argument("run_synchronous: max_rounds must be positive");
  SimCore core(inst, policy, "sync", observer);

  Verdict verdict;
  std::vector<QueuedMessage> previous;  // sent in the previous round
  int round = 0;
  VarId first_refuter = -1;

  if (core.initially_refuted()) {
    verdict = {Verdict::Outcome::Refuted, 0, Nogood{}};
  } else {
    for (round = 0;; ++round) {
      // Delivery phase: messages sent in round-1, applied per destination in
      // (sender, emission order). `previous` is already in that order.
      for (VarId dst = 0; dst < core.n; ++dst)
        for (const QueuedMessage& msg : previous)
          if (msg.dst == dst)
            core.apply(round, msg.src, dst, msg.channel_seq, msg.payload);

      // Generation phase. All agents act on this round's state; producers
      // that derive the empty nogood do not route their batch.
      std::vector<QueuedMessage> outbox;
      for (VarId v = 0; v < core.n; ++v) {
        if (round > 0 && !core.stores[v].has_new_tails()) continue;
        GenerationBatch batch = core.generate(round, v, round == 0);
        if (batch.has_empty) {
          if (first_refuter < 0) first_refuter = v;
          continue;
        }
        for (const Nogood& g : batch.distinct) {
          for (VarId dst : related_agents(g)) {
            QueuedMessage msg;
            msg.payload = g;
            msg.src = v;
            msg.dst = dst;
            msg.send_tick = round;
            msg.channel_seq = core.next_seq(v, dst);
            record_event(core.report, {round, v, MetricsEventKind::Sent, 1});
            if (core.obs)
              core.obs->on_send(round, v, dst, msg.channel_seq,
                                MessageKind::AddNogood, g);
            outbox.push_back(std::move(msg));
          }
        }
      }
      for (VarId v = 0; v < core.n; ++v)
        record_event(core.report,
                     {round, v, MetricsEventKind::KbSize, core.stores[v].size()});

      if (core.refuted) {
        // Propagate Halt so the trace shows the shutdown; the round is over,
        // undelivered messages are discarded.
        for (VarId dst = 0; dst < core.n; ++dst) {
          if (dst == first_refuter) continue;
          std::int64_t seq = core.next_seq(first_refuter, dst);
          if (core.obs) {
            core.obs->on_send(round, first_refuter, dst, seq,
                              MessageKind::Halt, Nogood{});
            core.obs->on_deliver(round, first_refuter, dst, seq,
                                 MessageKind::Halt, Nogood{}, kOutcomeHalted,
                                 0);
          }
        }
        verdict = {Verdict::Outcome::Refuted, round, Nogood{}};
        break;
      }
      if (outbox.empty()) {
        verdict = {Verdict::Outcome::Saturated, round, std::nullopt};
        break;
      }
      if (round == max_rounds) {
        core.report.truncated = true;
        verdict = {Verdict::Outcome::Saturated, round, std::nullopt};
        break;
      }
      previous = std::move(outbox);
    }
  }

  core.report.verdict = verdict;
  finalize_report(core.report);
  return {verdict, core.report};
}

RunResult run_async(const CspInstance& inst, Policy policy, std::uint64_t seed,
                    int max_delay, std::int64_t max_events,
                    SimObserver* observer) {
  if (max_delay < 1)
    throw std::invalid_argument("run_async: max_delay must be >= 1");
  if (max_events <= 0)
    throw std::invalid_argument("run_async: max_events must be positive");
  SimCore core(inst, policy, "async", observer);

  std::mt19937_64 rng(seed);
  const std::size_t channels = static_cast<std::size_t>(core.n) * core.n;
  std::vector<std::deque<QueuedMessage>> queue(channels);
  std::vector<std::int64_t> last_deliver(channels, 0);
  std::int64_t pending = 0;
  std::int64_t tick = 0;
  VarId first_refuter = -1;

  auto send = [&](VarId src, VarId dst, MessageKind kind, const Nogood& g,
                  std::int64_t send_tick) {
    QueuedMessage msg;
    msg.kind = kind;
    msg.payload = g;
    msg.src = src;
    msg.dst = dst;
    msg.send_tick = send_tick;
    const std::size_t ch = static_cast<std::size_t>(src) * core.n + dst;
    std::int64_t delay =
        1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(
                                                  max_delay));
    msg.deliver_tick = std::max(send_tick + delay, last_deliver[ch]);
    last_deliver[ch] = msg.deliver_tick;
    msg.channel_seq = core.next_seq(src, dst);
    if (kind == MessageKind::AddNogood)
      record_event(core.report, {static_cast<int>(send_tick), src,
                                 MetricsEventKind::Sent, 1});
    if (core.obs)
      core.obs->on_send(send_tick, src, dst, msg.channel_seq, kind, g);
    queue[ch].push_back(std::move(msg));
    ++pending;
  };

  auto route = [&](VarId v, const GenerationBatch& batch,
                   std::int64_t send_tick) {
    for (const Nogood& g : batch.distinct)
      for (VarId dst : related_agents(g))
        send(v, dst, MessageKind::AddNogood, g, send_tick);
  };

  // The first refuter floods Halt to everyone; later refuters only stop
  // themselves (the flood is already in flight).
  auto halt_flood = [&](VarId refuter, std::int64_t at_tick) {
    core.halted[refuter] = 1;
    if (first_refuter >= 0) return;
    first_refuter = refuter;
    for (VarId dst = 0; dst < core.n; ++dst)
      if (dst != refuter)
        send(refuter, dst, MessageKind::Halt, Nogood{}, at_tick);
  };

  if (core.initially_refuted()) {
    Verdict verdict{Verdict::Outcome::Refuted, 0, Nogood{}};
    core.report.verdict = verdict;
    finalize_report(core.report);
    return {verdict, core.report};
  }

  // Tick 0: every agent resolves over its freshly initialized store.
  for (VarId v = 0; v < core.n; ++v) {
    GenerationBatch batch = core.generate(0, v, true);
    if (batch.has_empty)
      halt_flood(v, 0);
    else if (!core.refuted)
      route(v, batch, 0);
  }

  std::int64_t processed = 0;
  while (pending > 0) {
    if (processed >= max_events) {
      core.report.truncated = true;
      break;
    }
    // Next event: smallest (deliver tick, channel id); FIFO within the
    // channel is queue order.
    std::size_t best = channels;
    for (std::size_t ch = 0; ch < channels; ++ch) {
      if (queue[ch].empty()) continue;
      if (best == channels ||
          queue[ch].front().deliver_tick < queue[best].front().deliver_tick)
        best = ch;
    }
    QueuedMessage msg = std::move(queue[best].front());
    queue[best].pop_front();
    --pending;
    ++processed;
    tick = msg.deliver_tick;

    if (msg.kind == MessageKind::Halt) {
      core.halted[msg.dst] = 1;
      if (core.obs)
        core.obs->on_deliver(tick, msg.src, msg.dst, msg.channel_seq,
                             MessageKind::Halt, Nogood{}, kOutcomeHalted, 0);
      continue;
    }
    if (core.halted[msg.dst]) {
      if (core.obs)
        core.obs->on_deliver(tick, msg.src, msg.dst, msg.channel_seq,
                             MessageKind::AddNogood, msg.payload,
                             kOutcomeIgnored, 0);
      continue;
    }
    UpdateOutcome outcome =
        core.apply(tick, msg.src, msg.dst, msg.channel_seq, msg.payload);
    if (outcome.status != UpdateStatus::Added) continue;
    if (!core.stores[msg.dst].has_new_tails()) continue;
    GenerationBatch batch = core.generate(tick, msg.dst, false);
    if (batch.has_empty)
      halt_flood(msg.dst, tick);
    else
      route(msg.dst, batch, tick);
  }

  Verdict verdict;
  if (core.refuted)
    verdict = {Verdict::Outcome::Refuted, static_cast<int>(tick), Nogood{}};
  else
    verdict = {Verdict::Outcome::Saturated, static_cast<int>(tick),
               std::nullopt};
  core.report.verdict = verdict;
  finalize_report(core.report);
  return {verdict, core.report};
}

}  // namespace dcsp
