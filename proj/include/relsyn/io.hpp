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

#include "relsyn/design.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace relsyn::io {

using json = nlohmann::ordered_json;

/// One line of an assignment file: `assign <node-id> <version-name> [nmr <N>]`.
struct AssignLine {
    std::string node;
    std::string version;
    int nmr = 1;
};

std::vector<AssignLine> parse_assignment_file(std::string_view text);

/// Assignment plus a one-instance-per-node binding carrying the NMR factors.
Design design_from_assign_lines(const Dfg &dfg, const ResourceLibrary &library, const std::vector<AssignLine> &lines);

/// Keys: assignment, schedule, binding, instances, latency, area, reliability.
json design_to_json(const Dfg &dfg, const ResourceLibrary &library, const Design &design);

/// Inverse of design_to_json. Metrics are recomputed, not trusted. A missing
/// `schedule` is allowed (eval only needs assignment and binding).
Design design_from_json(const Dfg &dfg, const ResourceLibrary &library, const json &doc);

/// Adds `method` and `status` around design_to_json, or an infeasible report.
json result_to_json(const Dfg &dfg, const ResourceLibrary &library, std::string_view method,
                    const SynthResult &result);

/// Fixed five-decimal rendering used in every human-readable report.
std::string format_reliability(double reliability);

/// Shortest decimal that reads back as the same area value.
std::string format_number(double value);

} // namespace relsyn::io
