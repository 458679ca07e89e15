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

#include "relsyn/model.hpp"
#include "relsyn/scheduler.hpp"

#include <vector>

namespace relsyn {

/// One physical functional unit. `nmr` copies vote on every result; 1 means
/// no redundancy. Only odd factors are valid.
struct Instance {
    int id = 0;
    VersionIndex version = 0;
    int nmr = 1;

    friend bool operator==(const Instance &, const Instance &) = default;
};

/// Node-to-instance map. Instance ids equal their position in `instances`.
struct Binding {
    std::vector<int> instance_of; ///< indexed by NodeIndex
    std::vector<Instance> instances;

    /// Nodes bound to `instance`, in declaration order.
    std::vector<NodeIndex> nodes_on(int instance) const;

    friend bool operator==(const Binding &, const Binding &) = default;
};

/// Left-edge packing per version: nodes sorted by start (ties: declaration
/// order) go to the lowest-id free instance of their version, or open a new
/// one. Units are non-pipelined and busy for their full delay.
Binding bind(const Dfg &dfg, const Schedule &schedule, const Assignment &assignment, const ResourceLibrary &library);

/// One instance per node, in declaration order.
Binding bind_each_node(const Dfg &dfg, const Assignment &assignment);

/// Sum of area x nmr over instances; voter area is not counted.
double total_area(const Binding &binding, const ResourceLibrary &library);

/// Throws ValidationError if `nmr` is not an odd positive integer.
void check_nmr_factor(int nmr);

} // namespace relsyn
