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

#include "dcsp/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dcsp {

Nogood::Nogood(std::vector<Literal> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Nogood::contains(Literal l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Nogood::mentions(VarId var) const {
  for (const Literal& l : lits_)
    if (l.var == var) return true;
  return false;
}

Nogood canonicalize(std::vector<Literal> literals) {
  return Nogood(std::move(literals));
}

bool is_false_nogood(const Nogood& n) {
  // Literals are sorted and unique, so two literals on the same variable are
  // adjacent and necessarily carry different values.
  const auto& lits = n.literals();
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].var == lits[i - 1].var) return true;
  return false;
}

bool subsumes(const Nogood& a, const Nogood& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Nogood merge(const Nogood& a, const Nogood& b) {
  std::vector<Literal> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Nogood(std::move(out));
}

Nogood erase_literal(const Nogood& n, Literal l) {
  std::vector<Literal> out;
  out.reserve(n.size());
  for (const Literal& x : n)
    if (x != l) out.push_back(x);
  return Nogood(std::move(out));
}

CspInstance CspInstance::create(std::vector<std::vector<Value>> domains,
                                std::vector<Nogood> nogoods,
                                std::vector<std::string> labels) {
  CspInstance inst;
  inst.var_count = static_cast<int>(domains.size());
  inst.domains = std::move(domains);
  std::sort(nogoods.begin(), nogoods.end());
  nogoods.erase(std::unique(nogoods.begin(), nogoods.end()), nogoods.end());
  inst.initial_nogoods = std::move(nogoods);
  inst.labels = std::move(labels);
  inst.labels.resize(inst.var_count);
  for (int v = 0; v < inst.var_count; ++v)
    if (inst.labels[v].empty()) inst.labels[v] = default_label(v);
  return inst;
}

std::vector<Nogood> compile_neq_constraint(VarId u, VarId v,
                                           const CspInstance& inst) {
  if (u == v)
    throw std::invalid_argument(
        "compile_neq_constraint: self-loop constraint on variable " +
        default_label(u));
  if (u < 0 || v < 0 || u >= inst.var_count || v >= inst.var_count)
    throw std::invalid_argument("compile_neq_constraint: variable out of range");
  const auto& du = inst.domains[u];
  const auto& dv = inst.domains[v];
  std::vector<Nogood> out;
  for (Value d : du) {
    if (std::find(dv.begin(), dv.end(), d) == dv.end()) continue;
    out.push_back(Nogood({Literal{u, d}, Literal{v, d}}));
  }
  return out;
}

std::string ValidationResult::summary() const {
  std::string s;
  for (const Violation& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.message;
  }
  return s;
}

ValidationResult validate_instance(const CspInstance& inst) {
  ValidationResult r;
  auto label = [&](VarId v) {
    return v >= 0 && v < static_cast<int>(inst.labels.size())
               ? inst.labels[v]
               : default_label(v);
  };
  if (inst.var_count != static_cast<int>(inst.domains.size()))
    r.violations.push_back({ViolationKind::DomainCountMismatch,
                            "declared " + std::to_string(inst.var_count) +
                                " variables but " +
                                std::to_string(inst.domains.size()) +
                                " domains"});
  if (!inst.labels.empty() &&
      inst.labels.size() != inst.domains.size())
    r.violations.push_back({ViolationKind::LabelCountMismatch,
                            "label count does not match variable count"});
  for (std::size_t v = 0; v < inst.domains.size(); ++v) {
    const auto& dom = inst.domains[v];
    if (dom.empty())
      r.violations.push_back({ViolationKind::EmptyDomain,
                              "empty domain for " + label(static_cast<int>(v))});
    std::set<Value> seen;
    for (Value d : dom) {
      if (d < 0)
        r.violations.push_back(
            {ViolationKind::NegativeDomainValue,
             "negative domain value " + std::to_string(d) + " for " +
                 label(static_cast<int>(v))});
      if (!seen.insert(d).second)
        r.violations.push_back(
            {ViolationKind::DuplicateDomainValue,
             "duplicate domain value " + std::to_string(d) + " for " +
                 label(static_cast<int>(v))});
    }
  }
  for (const Nogood& g : inst.initial_nogoods) {
    for (const Literal& l : g) {
      if (l.var < 0 || l.var >= static_cast<int>(inst.domains.size())) {
        r.violations.push_back(
            {ViolationKind::DanglingVariable,
             "nogood " + to_string(g, inst.labels) +
                 " references undeclared variable index " +
                 std::to_string(l.var)});
        continue;
      }
      const auto& dom = inst.domains[l.var];
      if (std::find(dom.begin(), dom.end(), l.val) == dom.end())
        r.violations.push_back(
            {ViolationKind::OutOfDomainValue,
             "literal " + to_string(l, inst.labels) + " in nogood " +
                 to_string(g, inst.labels) + " is outside the domain"});
    }
  }
  return r;
}

std::string default_label(VarId var) { return "x" + std::to_string(var + 1); }

std::string to_string(Literal l, const std::vector<std::string>& labels) {
  std::string name = (l.var >= 0 && l.var < static_cast<int>(labels.size()))
                         ? labels[l.var]
                         : default_label(l.var);
  return name + "=" + std::to_string(l.val);
}

std::string to_string(const Nogood& n, const std::vector<std::string>& labels) {
  std::string s = "!(";
  bool first = true;
  for (const Literal& l : n) {
    if (!first) s += " & ";
    s += to_string(l, labels);
    first = false;
  }
  s += ")";
  return s;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a_u64(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (i * 8)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t fnv1a_str(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return fnv1a_u64(h, s.size());
}

}  // namespace

std::uint64_t instance_digest(const CspInstance& inst) {
  std::uint64_t h = kFnvOffset;
  h = fnv1a_u64(h, static_cast<std::uint64_t>(inst.var_count));
  for (const auto& dom : inst.domains) {
    h = fnv1a_u64(h, dom.size());
    for (Value d : dom) h = fnv1a_u64(h, static_cast<std::uint64_t>(d));
  }
  h = fnv1a_u64(h, inst.initial_nogoods.size());
  for (const Nogood& g : inst.initial_nogoods) {
    h = fnv1a_u64(h, g.size());
    for (const Literal& l : g) {
      h = fnv1a_u64(h, static_cast<std::uint64_t>(l.var));
      h = fnv1a_u64(h, static_cast<std::uint64_t>(l.val));
    }
  }
  for (const auto& s : inst.labels) h = fnv1a_str(h, s);
  return h;
}

}  // namespace dcsp

std::size_t std::hash<dcsp::Nogood>::operator()(
    const dcsp::Nogood& n) const noexcept {
  std::uint64_t h = dcsp::kFnvOffset;
  for (const dcsp::Literal& l : n) {
    h = dcsp::fnv1a_u64(h, static_cast<std::uint64_t>(l.var));
    h = dcsp::fnv1a_u64(h, static_cast<std::uint64_t>(l.val));
  }
  return static_cast<std::size_t>(h);
}
