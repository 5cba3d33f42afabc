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
#include <string>
#include <vector>

#include "dcsp/kb.hpp"
#include "dcsp/verdict.hpp"

namespace dcsp {

// Per-agent counters for one round (synchronous) or one tick (asynchronous).
// Invariant: added + dropped_duplicate + dropped_subsumed == received.
struct AgentRound {
  std::int64_t generated = 0;  // resolution combination events (raw count)
  std::int64_t sent = 0;
  std::int64_t received = 0;
  std::int64_t added = 0;
  std::int64_t dropped_duplicate = 0;
  std::int64_t dropped_subsumed = 0;
  std::int64_t eliminated = 0;
  std::int64_t kb_size_after = kKbUnset;

  static constexpr std::int64_t kKbUnset = -1;  // filled by finalize_report

  friend bool operator==(const AgentRound&, const AgentRound&) = default;
};

struct RoundMetrics {
  int round = 0;
  std::vector<AgentRound> agents;

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

// Full record of one run, the unit of comparison between policies.
struct RunReport {
  Policy policy = Policy::Baseline;
  std::string scheduler;  // "sync" / "async"
  Verdict verdict;
  bool truncated = false;
  std::vector<std::string> agent_labels;
  std::uint64_t instance_digest = 0;
  std::vector<RoundMetrics> rounds;  // indexed contiguously from 0

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

enum class MetricsEventKind {
  Generated,
  Sent,
  Received,
  Added,
  DroppedDuplicate,
  DroppedSubsumed,
  Eliminated,
  KbSize,  // absolute snapshot, not an increment
};

struct MetricsEvent {
  int round = 0;
  VarId agent = 0;
  MetricsEventKind kind = MetricsEventKind::Generated;
  std::int64_t amount = 0;
};

// Applies one event, extending the round list contiguously as needed.
// Throws std::invalid_argument if the event's round precedes the current
// last round or the agent index is out of range.
void record_event(RunReport& report, const MetricsEvent& event);

// Carries kb_size_after forward through cells no event touched. Idempotent.
void finalize_report(RunReport& report);

enum class ReportFormat { Csv, Json };

// Byte-stable rendering. Csv: a `# summary` line, a header row, then one row
// per (round, agent). Json: a single compact object with fixed key order.
std::string emit_report(const RunReport& report, ReportFormat format);

// Side-by-side totals of two runs over the same instance.
struct PolicyComparison {
  Policy policy_a = Policy::Baseline;
  Policy policy_b = Policy::Baseline;
  Verdict verdict_a;
  Verdict verdict_b;
  bool verdicts_agree = false;
  bool truncated = false;  // either run truncated

  struct RoundTotals {
    int round = 0;
    std::int64_t generated_a = 0;
    std::int64_t generated_b = 0;
    std::int64_t kb_a = 0;
    std::int64_t kb_b = 0;
  };
  std::vector<RoundTotals> rounds;

  std::vector<std::string> agent_labels;
  std::vector<std::int64_t> agent_generated_a;
  std::vector<std::int64_t> agent_generated_b;
  std::int64_t total_generated_a = 0;
  std::int64_t total_generated_b = 0;
};

// Throws std::invalid_argument when the reports carry different instance
// digests. A run that ended early keeps its last KB totals in later rounds.
PolicyComparison compare_reports(const RunReport& a, const RunReport& b);

std::string emit_comparison(const PolicyComparison& cmp);

}  // namespace dcsp
