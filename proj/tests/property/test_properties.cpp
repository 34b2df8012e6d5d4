// Copyright 2026 The rtmon Authors.
//
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

#include <doctest.h>

#include "../support/properties.hpp"

using namespace rtmon::testing;

namespace {

void require_clean(const PropertyResult& r, std::size_t min_cases) {
  INFO(r.name << ": " << r.first_failure);
  CHECK(r.cases >= min_cases);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("justified semantics against brute force") {
  require_clean(js_matches_bruteforce(101, 150), 150);
}

TEST_CASE("semantic lemmas") {
  for (const auto& r : semantic_properties(202, 200)) require_clean(r, 1);
}

TEST_CASE("soundness of silence") {
  for (const auto& r : silence_properties(303, 60)) require_clean(r, 60);
}

TEST_CASE("bounded reachability") {
  require_clean(bounded_reachability(404, 10), 10);
}
