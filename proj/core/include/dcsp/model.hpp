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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dcsp {

// Variables are dense indices 0..n-1; values are non-negative integers drawn
// from the owning variable's declared domain.
using VarId = int;
using Value = int;

// One assignment proposition `variable = value`. Ordered by (var, val) so
// literal sets have a canonical form.
struct Literal {
  VarId var = 0;
  Value val = 0;
  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

// A forbidden combination of assignments: the negation of a conjunction of
// literals, held as a sorted, duplicate-free literal set. The empty nogood
// forbids every assignment, i.e. it witnesses unsatisfiability.
class Nogood {
 public:
  Nogood() = default;
  // Canonicalizes: sorts and drops duplicate literals.
  explicit Nogood(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Literal l) const;
  bool mentions(VarId var) const;

  std::vector<Literal>::const_iterator begin() const { return lits_.begin(); }
  std::vector<Literal>::const_iterator end() const { return lits_.end(); }

  friend auto operator<=>(const Nogood&, const Nogood&) = default;

 private:
  std::vector<Literal> lits_;
};

// The remainder of a nogood after removing one literal of the bucket owner.
// Same canonical-literal-set representation; the empty tail is legal and
// stands for a unit nogood on the owner.
using Tail = Nogood;

// Sorted, deduplicated literal set. Independent of input order; idempotent.
Nogood canonicalize(std::vector<Literal> literals);

// True iff the nogood assigns two different values to the same variable.
// Such a nogood is vacuously satisfied and carries no constraint.
bool is_false_nogood(const Nogood& n);

// True iff a's literals are a subset of b's. A smaller nogood forbids more:
// whenever a holds, b holds, so b is redundant next to a.
bool subsumes(const Nogood& a, const Nogood& b);

// Set union of two canonical literal sets.
Nogood merge(const Nogood& a, const Nogood& b);

// Copy of n without literal l (no-op if absent).
Nogood erase_literal(const Nogood& n, Literal l);

// An extensional CSP: per-variable finite domains plus initial nogoods.
// initial_nogoods is kept sorted and duplicate-free so structurally equal
// instances compare equal regardless of ingestion order.
struct CspInstance {
  int var_count = 0;
  std::vector<std::vector<Value>> domains;
  std::vector<Nogood> initial_nogoods;
  std::vector<std::string> labels;

  // Normalizes: var_count from domains, nogoods sorted/deduplicated, labels
  // defaulted to x1..xn when not provided.
  static CspInstance create(std::vector<std::vector<Value>> domains,
                            std::vector<Nogood> nogoods,
                            std::vector<std::string> labels = {});

  friend bool operator==(const CspInstance&, const CspInstance&) = default;
};

// Expands a not-equal constraint between two distinct variables into one
// pairwise nogood per shared domain value. Throws std::invalid_argument on
// u == v or out-of-range ids.
std::vector<Nogood> compile_neq_constraint(VarId u, VarId v,
                                           const CspInstance& inst);

enum class ViolationKind {
  DomainCountMismatch,
  LabelCountMismatch,
  EmptyDomain,
  DuplicateDomainValue,
  NegativeDomainValue,
  DanglingVariable,
  OutOfDomainValue,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;  // all messages, "; "-joined
};

// Checks every instance invariant and reports all violations; never aborts
// mid-check.
ValidationResult validate_instance(const CspInstance& inst);

std::string default_label(VarId var);  // "x1", "x2", ...
std::string to_string(Literal l, const std::vector<std::string>& labels = {});
// "!(x1=1 & x2=2)"; the empty nogood renders as "!()".
std::string to_string(const Nogood& n,
                      const std::vector<std::string>& labels = {});

// Order-independent structural fingerprint, used to pair up reports that
// came from the same instance.
std::uint64_t instance_digest(const CspInstance& inst);

}  // namespace dcsp

template <>
struct std::hash<dcsp::Nogood> {
  std::size_t operator()(const dcsp::Nogood& n) const noexcept;
};
