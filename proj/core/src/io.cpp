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

#include "dcsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "dcsp/metrics.hpp"
#include "dcsp/simnet.hpp"

namespace dcsp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected ") + what + ", got '" +
                                  tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line_no, std::string("expected ") + what + ", got '" +
                                  tok + "'");
  return value;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

CspInstance parse_dimacs_col(const std::string& text, int colors,
                             std::vector<std::string>* warnings) {
  if (colors < 1)
    throw std::invalid_argument("parse_dimacs_col: colors must be >= 1");
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int vertices = -1;
  long declared_edges = -1;
  std::set<std::pair<int, int>> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_cr(raw);
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (vertices >= 0) throw ParseError(line_no, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "edge")
        throw ParseError(line_no, "malformed header, expected 'p edge <n> <m>'");
      vertices = parse_int(tok[2], line_no, "vertex count");
      declared_edges = parse_int(tok[3], line_no, "edge count");
      if (vertices < 0) throw ParseError(line_no, "negative vertex count");
      continue;
    }
    if (tok[0] == "e") {
      if (vertices < 0)
        throw ParseError(line_no, "edge before the 'p edge' header");
      if (tok.size() != 3)
        throw ParseError(line_no, "malformed edge, expected 'e <u> <v>'");
      int u = parse_int(tok[1], line_no, "vertex id");
      int v = parse_int(tok[2], line_no, "vertex id");
      if (u < 1 || u > vertices || v < 1 || v > vertices)
        throw ParseError(line_no, "vertex id out of range 1.." +
                                      std::to_string(vertices));
      if (u == v)
        throw ParseError(line_no,
                         "self-loop edge " + std::to_string(u) +
                             "-" + std::to_string(v) + " is not colorable");
      edges.insert({std::min(u, v), std::max(u, v)});
      continue;
    }
    throw ParseError(line_no, "unrecognized line '" + line + "'");
  }
  if (vertices < 0) throw ParseError(0, "missing 'p edge' header");
  if (warnings && declared_edges >= 0 &&
      declared_edges != static_cast<long>(edges.size()))
    warnings->push_back("edge count mismatch: header declares " +
                        std::to_string(declared_edges) + ", found " +
                        std::to_string(edges.size()) +
                        " distinct edges");

  std::vector<std::vector<Value>> domains(vertices);
  for (auto& dom : domains)
    for (int d = 1; d <= colors; ++d) dom.push_back(d);
  CspInstance inst = CspInstance::create(std::move(domains), {});
  std::vector<Nogood> nogoods;
  for (const auto& [u, v] : edges) {
    std::vector<Nogood> pairwise = compile_neq_constraint(u - 1, v - 1, inst);
    nogoods.insert(nogoods.end(), pairwise.begin(), pairwise.end());
  }
  return CspInstance::create(std::move(inst.domains), std::move(nogoods),
                             std::move(inst.labels));
}

CspInstance parse_csp_text(const std::string& text, bool validate) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<std::vector<Value>> domains;
  std::vector<std::string> names;
  std::map<std::string, VarId> by_name;
  std::vector<Nogood> nogoods;
  std::vector<std::pair<VarId, VarId>> neqs;

  auto lookup = [&](const std::string& name, int at_line) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw ParseError(at_line, "undeclared variable '" + name + "'");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_cr(raw);
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "var") {
      if (tok.size() < 2)
        throw ParseError(line_no, "var needs a name and a domain");
      const std::string& name = tok[1];
      if (!is_identifier(name))
        throw ParseError(line_no, "bad variable name '" + name + "'");
      if (by_name.contains(name))
        throw ParseError(line_no, "duplicate variable '" + name + "'");
      std::vector<Value> dom;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        int d = parse_int(tok[i], line_no, "domain value");
        if (d < 0)
          throw ParseError(line_no, "negative domain value " + tok[i]);
        dom.push_back(d);
      }
      if (dom.empty()) throw ParseError(line_no, "empty domain for " + name);
      by_name[name] = static_cast<VarId>(names.size());
      names.push_back(name);
      domains.push_back(std::move(dom));
      continue;
    }
    if (tok[0] == "nogood") {
      std::vector<Literal> lits;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        std::size_t eq = tok[i].find('=');
        if (eq == std::string::npos)
          throw ParseError(line_no,
                           "expected <name>=<value>, got '" + tok[i] + "'");
        VarId var = lookup(tok[i].substr(0, eq), line_no);
        int val = parse_int(tok[i].substr(eq + 1), line_no, "value");
        lits.push_back({var, val});
      }
      nogoods.push_back(Nogood(std::move(lits)));
      continue;
    }
    if (tok[0] == "neq") {
      if (tok.size() != 3)
        throw ParseError(line_no, "neq needs exactly two variable names");
      neqs.emplace_back(lookup(tok[1], line_no), lookup(tok[2], line_no));
      continue;
    }
    throw ParseError(line_no, "unrecognized directive '" + tok[0] + "'");
  }

  CspInstance inst =
      CspInstance::create(std::move(domains), {}, std::move(names));
  for (const auto& [u, v] : neqs) {
    std::vector<Nogood> pairwise = compile_neq_constraint(u, v, inst);
    nogoods.insert(nogoods.end(), pairwise.begin(), pairwise.end());
  }
  inst = CspInstance::create(std::move(inst.domains), std::move(nogoods),
                             std::move(inst.labels));
  if (validate) {
    ValidationResult vr = validate_instance(inst);
    if (!vr.ok()) throw ParseError(0, "invalid instance: " + vr.summary());
  }
  return inst;
}

std::string serialize_csp_text(const CspInstance& inst) {
  std::ostringstream out;
  for (int v = 0; v < inst.var_count; ++v) {
    out << "var " << inst.labels[v];
    for (Value d : inst.domains[v]) out << ' ' << d;
    out << "\n";
  }
  for (const Nogood& g : inst.initial_nogoods) {
    out << "nogood";
    for (const Literal& l : g)
      out << ' ' << inst.labels[l.var] << '=' << l.val;
    out << "\n";
  }
  return out.str();
}

CspInstance load_instance(const std::string& path, int colors,
                          std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool is_col =
      path.size() >= 4 && path.compare(path.size() - 4, 4, ".col") == 0;
  if (is_col) {
    if (colors < 1)
      throw std::runtime_error(
          "DIMACS input needs --colors (number of colors >= 1)");
    return parse_dimacs_col(buf.str(), colors, warnings);
  }
  return parse_csp_text(buf.str());
}

namespace {

int verdict_exit_code(const RunResult& rr, const RunReport& report) {
  if (rr.verdict.outcome == Verdict::Outcome::Refuted) return kExitRefuted;
  if (report.truncated) return kExitTruncated;
  return kExitSaturated;
}

RunResult dispatch_run(const CspInstance& inst, const RunConfig& cfg,
                       Policy policy, SimObserver* obs) {
  if (cfg.scheduler == RunConfig::Scheduler::Sync)
    return run_synchronous(inst, policy, cfg.max_rounds, obs);
  return run_async(inst, policy, cfg.seed, cfg.max_delay, cfg.max_events, obs);
}

void check_async_seed(const RunConfig& cfg) {
  if (cfg.scheduler == RunConfig::Scheduler::Async && !cfg.seed_set)
    throw std::runtime_error("async scheduling requires --seed");
}

void print_warnings(const std::vector<std::string>& warnings,
                    std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_async_seed(cfg);
    std::vector<std::string> warnings;
    CspInstance inst = load_instance(cfg.instance_path, cfg.colors, &warnings);
    print_warnings(warnings, err);
    TraceRecorder trace(inst);
    SimObserver* obs = cfg.trace_path.empty() ? nullptr : &trace;
    RunResult rr = dispatch_run(inst, cfg, cfg.policy, obs);
    out << emit_report(rr.report, cfg.format == RunConfig::Format::Csv
                                      ? ReportFormat::Csv
                                      : ReportFormat::Json);
    if (!cfg.trace_path.empty()) {
      std::ofstream tf(cfg.trace_path, std::ios::binary);
      if (!tf) throw std::runtime_error("cannot write trace to '" +
                                        cfg.trace_path + "'");
      tf << trace.text();
    }
    return verdict_exit_code(rr, rr.report);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_async_seed(cfg);
    std::vector<std::string> warnings;
    CspInstance inst = load_instance(cfg.instance_path, cfg.colors, &warnings);
    print_warnings(warnings, err);
    RunResult baseline = dispatch_run(inst, cfg, Policy::Baseline, nullptr);
    RunResult ekbm = dispatch_run(inst, cfg, Policy::Ekbm, nullptr);
    PolicyComparison cmp = compare_reports(baseline.report, ekbm.report);
    out << emit_comparison(cmp);
    if (!cmp.verdicts_agree) return kExitError;
    if (cmp.truncated) return kExitTruncated;
    return kExitSaturated;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(cfg.instance_path, std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot open '" + cfg.instance_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string& path = cfg.instance_path;
    const bool is_col =
        path.size() >= 4 && path.compare(path.size() - 4, 4, ".col") == 0;
    CspInstance inst;
    std::vector<std::string> warnings;
    if (is_col) {
      if (cfg.colors < 1)
        throw std::runtime_error(
            "DIMACS input needs --colors (number of colors >= 1)");
      inst = parse_dimacs_col(buf.str(), cfg.colors, &warnings);
    } else {
      inst = parse_csp_text(buf.str(), /*validate=*/false);
    }
    print_warnings(warnings, err);
    ValidationResult vr = validate_instance(inst);
    if (vr.ok()) {
      out << "ok: " << inst.var_count << " variables, "
          << inst.initial_nogoods.size() << " nogoods\n";
      return kExitSaturated;
    }
    for (const Violation& v : vr.violations)
      out << "violation: " << v.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_solve_oracle(const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  try {
    std::vector<std::string> warnings;
    CspInstance inst = load_instance(cfg.instance_path, cfg.colors, &warnings);
    print_warnings(warnings, err);
    OracleResult res = brute_force_solve(inst, cfg.oracle_cap);
    if (res.status == OracleResult::Status::Sat) {
      out << "status=sat model_count=" << res.model_count << " witness=";
      for (int v = 0; v < inst.var_count; ++v) {
        if (v) out << ' ';
        out << to_string(Literal{v, res.witness[v]}, inst.labels);
      }
      out << "\n";
      return kExitSaturated;
    }
    out << "status=unsat model_count=0\n";
    return kExitRefuted;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace dcsp
