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

#include "dcsp/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dcsp {

void record_event(RunReport& report, const MetricsEvent& event) {
  const int agents = static_cast<int>(report.agent_labels.size());
  if (event.agent < 0 || event.agent >= agents)
    throw std::invalid_argument("record_event: agent index out of range");
  if (event.round < 0)
    throw std::invalid_argument("record_event: negative round");
  int last = report.rounds.empty() ? -1 : report.rounds.back().round;
  if (event.round < last)
    throw std::invalid_argument("record_event: out-of-order round " +
                                std::to_string(event.round) + " after " +
                                std::to_string(last));
  while (last < event.round) {
    ++last;
    RoundMetrics rm;
    rm.round = last;
    rm.agents.resize(agents);
    report.rounds.push_back(std::move(rm));
  }
  AgentRound& cell = report.rounds.back().agents[event.agent];
  switch (event.kind) {
    case MetricsEventKind::Generated: cell.generated += event.amount; break;
    case MetricsEventKind::Sent: cell.sent += event.amount; break;
    case MetricsEventKind::Received: cell.received += event.amount; break;
    case MetricsEventKind::Added: cell.added += event.amount; break;
    case MetricsEventKind::DroppedDuplicate:
      cell.dropped_duplicate += event.amount;
      break;
    case MetricsEventKind::DroppedSubsumed:
      cell.dropped_subsumed += event.amount;
      break;
    case MetricsEventKind::Eliminated: cell.eliminated += event.amount; break;
    case MetricsEventKind::KbSize: cell.kb_size_after = event.amount; break;
  }
}

void finalize_report(RunReport& report) {
  for (std::size_t a = 0; a < report.agent_labels.size(); ++a) {
    std::int64_t running = 0;
    for (RoundMetrics& rm : report.rounds) {
      AgentRound& cell = rm.agents[a];
      if (cell.kb_size_after == AgentRound::kKbUnset)
        cell.kb_size_after = running;
      else
        running = cell.kb_size_after;
    }
  }
}

namespace {

std::string summary_line(const RunReport& r) {
  std::string s = "# policy=" + policy_name(r.policy) +
                  " scheduler=" + r.scheduler +
                  " verdict=" + outcome_name(r.verdict.outcome) +
                  " rounds=" + std::to_string(r.verdict.rounds) +
                  " truncated=" + (r.truncated ? "true" : "false");
  if (r.verdict.witness) s += " witness=" + to_string(*r.verdict.witness);
  return s;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string emit_report(const RunReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << summary_line(report) << "\n";
    out << "round,agent,generated,sent,received,added,dropped_duplicate,"
           "dropped_subsumed,eliminated,kb_size_after\n";
    for (const RoundMetrics& rm : report.rounds) {
      for (std::size_t a = 0; a < rm.agents.size(); ++a) {
        const AgentRound& c = rm.agents[a];
        out << rm.round << ',' << report.agent_labels[a] << ',' << c.generated
            << ',' << c.sent << ',' << c.received << ',' << c.added << ','
            << c.dropped_duplicate << ',' << c.dropped_subsumed << ','
            << c.eliminated << ',' << c.kb_size_after << "\n";
      }
    }
    return out.str();
  }
  out << "{\"policy\":\"" << policy_name(report.policy) << "\""
      << ",\"scheduler\":\"" << json_escape(report.scheduler) << "\""
      << ",\"verdict\":{\"outcome\":\"" << outcome_name(report.verdict.outcome)
      << "\",\"rounds\":" << report.verdict.rounds;
  if (report.verdict.witness)
    out << ",\"witness\":\"" << json_escape(to_string(*report.verdict.witness))
        << "\"";
  out << "},\"truncated\":" << (report.truncated ? "true" : "false")
      << ",\"agents\":[";
  for (std::size_t a = 0; a < report.agent_labels.size(); ++a) {
    if (a) out << ',';
    out << '"' << json_escape(report.agent_labels[a]) << '"';
  }
  out << "],\"rounds\":[";
  for (std::size_t r = 0; r < report.rounds.size(); ++r) {
    const RoundMetrics& rm = report.rounds[r];
    if (r) out << ',';
    out << "{\"round\":" << rm.round << ",\"per_agent\":[";
    for (std::size_t a = 0; a < rm.agents.size(); ++a) {
      const AgentRound& c = rm.agents[a];
      if (a) out << ',';
      out << "{\"agent\":\"" << json_escape(report.agent_labels[a]) << "\""
          << ",\"generated\":" << c.generated << ",\"sent\":" << c.sent
          << ",\"received\":" << c.received << ",\"added\":" << c.added
          << ",\"dropped_duplicate\":" << c.dropped_duplicate
          << ",\"dropped_subsumed\":" << c.dropped_subsumed
          << ",\"eliminated\":" << c.eliminated
          << ",\"kb_size_after\":" << c.kb_size_after << "}";
    }
    out << "]}";
  }
  out << "]}";
  return out.str();
}

PolicyComparison compare_reports(const RunReport& a, const RunReport& b) {
  if (a.instance_digest != b.instance_digest)
    throw std::invalid_argument(
        "compare_reports: reports come from different instances");
  if (a.agent_labels != b.agent_labels)
    throw std::invalid_argument("compare_reports: agent sets differ");

  PolicyComparison cmp;
  cmp.policy_a = a.policy;
  cmp.policy_b = b.policy;
  cmp.verdict_a = a.verdict;
  cmp.verdict_b = b.verdict;
  cmp.verdicts_agree = a.verdict.outcome == b.verdict.outcome;
  cmp.truncated = a.truncated || b.truncated;
  cmp.agent_labels = a.agent_labels;
  const std::size_t agents = a.agent_labels.size();
  cmp.agent_generated_a.assign(agents, 0);
  cmp.agent_generated_b.assign(agents, 0);

  const std::size_t rounds = std::max(a.rounds.size(), b.rounds.size());
  std::int64_t kb_a = 0, kb_b = 0;
  for (std::size_t r = 0; r < rounds; ++r) {
    PolicyComparison::RoundTotals t;
    t.round = static_cast<int>(r);
    if (r < a.rounds.size()) {
      kb_a = 0;
      for (std::size_t i = 0; i < agents; ++i) {
        t.generated_a += a.rounds[r].agents[i].generated;
        cmp.agent_generated_a[i] += a.rounds[r].agents[i].generated;
        kb_a += a.rounds[r].agents[i].kb_size_after;
      }
    }
    t.kb_a = kb_a;
    if (r < b.rounds.size()) {
      kb_b = 0;
      for (std::size_t i = 0; i < agents; ++i) {
        t.generated_b += b.rounds[r].agents[i].generated;
        cmp.agent_generated_b[i] += b.rounds[r].agents[i].generated;
        kb_b += b.rounds[r].agents[i].kb_size_after;
      }
    }
    t.kb_b = kb_b;
    cmp.rounds.push_back(t);
  }
  for (std::size_t i = 0; i < agents; ++i) {
    cmp.total_generated_a += cmp.agent_generated_a[i];
    cmp.total_generated_b += cmp.agent_generated_b[i];
  }
  return cmp;
}

std::string emit_comparison(const PolicyComparison& cmp) {
  std::ostringstream out;
  out << "policy_a=" << policy_name(cmp.policy_a)
      << " policy_b=" << policy_name(cmp.policy_b)
      << " verdict_a=" << outcome_name(cmp.verdict_a.outcome)
      << " verdict_b=" << outcome_name(cmp.verdict_b.outcome)
      << " agree=" << (cmp.verdicts_agree ? "yes" : "no")
      << " truncated=" << (cmp.truncated ? "true" : "false") << "\n";
  out << "round,generated_a,generated_b,kb_a,kb_b\n";
  for (const auto& t : cmp.rounds)
    out << t.round << ',' << t.generated_a << ',' << t.generated_b << ','
        << t.kb_a << ',' << t.kb_b << "\n";
  out << "agent,total_generated_a,total_generated_b\n";
  for (std::size_t i = 0; i < cmp.agent_labels.size(); ++i)
    out << cmp.agent_labels[i] << ',' << cmp.agent_generated_a[i] << ','
        << cmp.agent_generated_b[i] << "\n";
  out << "total," << cmp.total_generated_a << ',' << cmp.total_generated_b
      << "\n";
  return out.str();
}

}  // namespace dcsp
