/*
Copyright 2026 The relsyn Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

// Exhaustive reference synthesis for desk-sized instances. Shares only the
// model and result types with the heuristic code paths so the two can check
// each other.

#include "relsyn/design.hpp"

#include <cstddef>

namespace relsyn {

struct OracleLimit {
    std::size_t max_nodes = 8;
    std::size_t max_versions_per_class = 3;
    int max_latency_bound = 12;
    std::size_t max_paths = 1'000'000; ///< path enumeration cap for oracle_min_latency
};

class OracleLimitExceeded : public Error {
  public:
    using Error::Error;
};

/// Most reliable design over every version assignment and every start-time
/// vector within the latency bound, bound left-edge style; among schedules of
/// the winning assignment the smallest area is returned.
SynthResult oracle_best(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds,
                        const OracleLimit &limit = {});

/// Minimum latency by enumerating every source-to-sink path.
int oracle_min_latency(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment,
                       const OracleLimit &limit = {});

} // namespace relsyn
