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

#include "dcsp/oracle.hpp"

#include <doctest.h>

#include <stdexcept>

#include <random>

#include "support/test_util.hpp"

using namespace dcsp;
using test::ng;

TEST_CASE("the two-color triangle has no solution") {
  OracleResult res = brute_force_solve(test::triangle(2));
  CHECK(res.status == OracleResult::Status::Unsat);
  CHECK(res.model_count == 0);
}

TEST_CASE("the three-color triangle has six proper colorings") {
  OracleResult res = brute_force_solve(test::triangle(3));
  CHECK(res.status == OracleResult::Status::Sat);
  CHECK(res.model_count == 6);
  REQUIRE(res.witness.size() == 3);
  CHECK(res.witness[0] != res.witness[1]);
  CHECK(res.witness[0] != res.witness[2]);
  CHECK(res.witness[1] != res.witness[2]);
}

TEST_CASE("no constraints means every assignment is a model") {
  CspInstance inst = CspInstance::create({{1, 2}, {1, 2}}, {});
  OracleResult res = brute_force_solve(inst);
  CHECK(res.status == OracleResult::Status::Sat);
  CHECK(res.model_count == 4);
  CHECK(res.witness == std::vector<Value>{1, 1});
}

TEST_CASE("the cap rejects oversized assignment spaces") {
  CspInstance inst = CspInstance::create({{1, 2, 3}, {1, 2, 3}}, {});
  CHECK_THROWS_AS(brute_force_solve(inst, 8), std::runtime_error);
  CHECK_THROWS_AS(entails(inst, Nogood{}, 8), std::runtime_error);
  CHECK_NOTHROW(brute_force_solve(inst, 9));
}

TEST_CASE("entailment of a derived nogood") {
  // With the triangle constraints, x2=1 and x3=2 forces x1 out of both
  // colors, so that combination is forbidden.
  CHECK(entails(test::triangle(2), ng({{1, 1}, {2, 2}})));
  CHECK_FALSE(entails(test::triangle(3), ng({{1, 1}, {2, 2}})));
}

TEST_CASE("false nogoods are entailed by anything") {
  CHECK(entails(test::triangle(3), ng({{0, 1}, {0, 2}})));
}

TEST_CASE("an unsatisfiable instance entails the empty nogood") {
  CHECK(entails(test::triangle(2), Nogood{}));
  CHECK_FALSE(entails(test::triangle(3), Nogood{}));
}

TEST_CASE("oracle agrees with an independent enumerator on random instances") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 60; ++iter) {
    CspInstance inst = test::random_instance(rng);
    std::int64_t expected = 0;
    for (const auto& assignment : test::all_assignments(inst)) {
      bool model = true;
      for (const Nogood& g : inst.initial_nogoods)
        if (!test::satisfies(assignment, g)) model = false;
      if (model) ++expected;
    }
    OracleResult res = brute_force_solve(inst);
    CHECK(res.model_count == expected);
    CHECK((res.status == OracleResult::Status::Sat) == (expected > 0));
  }
}
