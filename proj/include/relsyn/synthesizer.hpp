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

namespace relsyn {

/// Most reliable version of each node's class (ties: area, delay, name).
Assignment initial_allocation(const Dfg &dfg, const ResourceLibrary &library);

/// Reliability-maximizing scheduling, binding and version selection under
/// latency and area bounds.
///
///  1. Start from the most reliable version everywhere, schedule at the ASAP
///     latency and bind.
///  2. While the latency exceeds L_d, move the slowest critical-path node to
///     its most reliable strictly faster version.
///  3. While the area exceeds A_d and there is latency slack, relax the
///     scheduling latency one cycle at a time and rebind.
///  4. While the area still exceeds A_d, move the largest-area node, together
///     with every node sharing its unit, to the most reliable strictly smaller
///     version that is no slower.
///
/// Returns Infeasible when step 2 or step 4 runs out of candidates.
SynthResult find_design(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds);

} // namespace relsyn
