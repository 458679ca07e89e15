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

#include <array>
#include <span>
#include <vector>

namespace relsyn {

/// Start cycle per node (1-based, indexed by NodeIndex). A node with delay d
/// started at s occupies cycles [s, s + d - 1].
struct Schedule {
    std::vector<int> start;
    int latency = 0; ///< max over nodes of start + delay - 1

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

/// Raised when a latency bound is below the ASAP latency.
class InfeasibleBound : public Error {
  public:
    InfeasibleBound(int bound, int minimum);
    int bound() const noexcept { return bound_; }
    int minimum() const noexcept { return minimum_; }

  private:
    int bound_;
    int minimum_;
};

/// Feasible start window per node under a latency bound.
struct MobilityWindow {
    std::vector<int> asap;
    std::vector<int> alap;

    int width(NodeIndex n) const { return alap.at(n) - asap.at(n) + 1; }
};

/// Expected number of busy units per cycle, per op class (slot from
/// class_slot()). Index 0 is unused; cycles run 1..bound.
using DensityProfile = std::array<std::vector<double>, 2>;

int schedule_latency(std::span<const int> start, std::span<const int> delays);

Schedule asap(const Dfg &dfg, std::span<const int> delays);
Schedule asap(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment);

/// Latest starts such that every sink ends by `latency_bound`. Throws
/// InfeasibleBound when the bound is below the ASAP latency.
Schedule alap(const Dfg &dfg, std::span<const int> delays, int latency_bound);
Schedule alap(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment, int latency_bound);

MobilityWindow mobility(const Dfg &dfg, std::span<const int> delays, int latency_bound);

/// Occupancy density before any placement: a node with w candidate starts adds
/// 1/w to every cycle of every candidate execution interval.
DensityProfile initial_density(const Dfg &dfg, std::span<const int> delays, int latency_bound);

/// Distribution-driven list scheduling under a latency bound.
///
/// Repeatedly takes the unplaced node with the narrowest window (ties by
/// declaration order), places it at the start whose execution interval sees
/// the least density of its class (ties: earliest), then tightens the windows
/// of the remaining nodes. The result satisfies every precedence edge and
/// keeps each node within its initial [asap, alap] window.
Schedule density_schedule(const Dfg &dfg, std::span<const int> delays, int latency_bound);
Schedule density_schedule(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment,
                          int latency_bound);

/// One maximum-delay source-to-sink path; among equal paths the one whose node
/// sequence is lexicographically smallest in declaration order.
std::vector<NodeIndex> critical_path(const Dfg &dfg, std::span<const int> delays);
std::vector<NodeIndex> critical_path(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment);

} // namespace relsyn
