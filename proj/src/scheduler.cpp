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

#include "relsyn/scheduler.hpp"

#include <algorithm>
#include <limits>

namespace relsyn {

InfeasibleBound::InfeasibleBound(int bound, int minimum)
    : Error("latency bound " + std::to_string(bound) + " is below the minimum latency " + std::to_string(minimum)),
      bound_(bound), minimum_(minimum) {}

namespace {

void check_delays(const Dfg &dfg, std::span<const int> delays) {
    if (delays.size() != dfg.size()) throw ValidationError("delay vector does not match the graph");
    for (int d : delays)
        if (d < 1) throw ValidationError("delays must be >= 1");
}

// Earliest starts given fixed placements.
std::vector<int> forward_pass(const Dfg &dfg, std::span<const int> delays, const std::vector<int> &fixed,
                              const std::vector<int> &lower) {
    std::vector<int> est(dfg.size(), 1);
    for (NodeIndex n : dfg.topo_order()) {
        if (fixed[n] > 0) {
            est[n] = fixed[n];
            continue;
        }
        int s = lower.empty() ? 1 : lower[n];
        for (NodeIndex p : dfg.preds(n)) s = std::max(s, est[p] + delays[p]);
        est[n] = s;
    }
    return est;
}

// Latest starts given fixed placements.
std::vector<int> backward_pass(const Dfg &dfg, std::span<const int> delays, int bound, const std::vector<int> &fixed,
                               const std::vector<int> &upper) {
    std::vector<int> lst(dfg.size(), 0);
    const auto &order = dfg.topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeIndex n = *it;
        if (fixed[n] > 0) {
            lst[n] = fixed[n];
            continue;
        }
        int s = upper.empty() ? bound - delays[n] + 1 : upper[n];
        for (NodeIndex succ : dfg.succs(n)) s = std::min(s, lst[succ] - delays[n]);
        lst[n] = s;
    }
    return lst;
}

} // namespace

int schedule_latency(std::span<const int> start, std::span<const int> delays) {
    int latency = 0;
    for (std::size_t n = 0; n < start.size(); ++n) latency = std::max(latency, start[n] + delays[n] - 1);
    return latency;
}

Schedule asap(const Dfg &dfg, std::span<const int> delays) {
    check_delays(dfg, delays);
    Schedule s;
    s.start = forward_pass(dfg, delays, std::vector<int>(dfg.size(), 0), {});
    s.latency = schedule_latency(s.start, delays);
    return s;
}

Schedule alap(const Dfg &dfg, std::span<const int> delays, int latency_bound) {
    const Schedule early = asap(dfg, delays);
    if (latency_bound < early.latency) throw InfeasibleBound(latency_bound, early.latency);
    Schedule s;
    s.start = backward_pass(dfg, delays, latency_bound, std::vector<int>(dfg.size(), 0), {});
    s.latency = schedule_latency(s.start, delays);
    return s;
}

MobilityWindow mobility(const Dfg &dfg, std::span<const int> delays, int latency_bound) {
    MobilityWindow w;
    w.alap = alap(dfg, delays, latency_bound).start;
    w.asap = asap(dfg, delays).start;
    return w;
}

DensityProfile initial_density(const Dfg &dfg, std::span<const int> delays, int latency_bound) {
    const MobilityWindow w = mobility(dfg, delays, latency_bound);
    DensityProfile density;
    for (auto &row : density) row.assign(static_cast<std::size_t>(latency_bound) + 1, 0.0);
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        auto &row = density[class_slot(dfg.node(n).op_class())];
        const double p = 1.0 / w.width(n);
        for (int s = w.asap[n]; s <= w.alap[n]; ++s)
            for (int c = s; c < s + delays[n]; ++c) row[c] += p;
    }
    return density;
}

Schedule density_schedule(const Dfg &dfg, std::span<const int> delays, int latency_bound) {
    const MobilityWindow initial = mobility(dfg, delays, latency_bound);
    const std::size_t n_nodes = dfg.size();
    std::vector<int> fixed(n_nodes, 0);
    std::vector<int> est = initial.asap;
    std::vector<int> lst = initial.alap;
    std::vector<char> placed(n_nodes, 0);

    for (std::size_t step = 0; step < n_nodes; ++step) {
        NodeIndex pick = n_nodes;
        for (NodeIndex n = 0; n < n_nodes; ++n) {
            if (placed[n]) continue;
            if (pick == n_nodes || lst[n] - est[n] < lst[pick] - est[pick]) pick = n;
        }
        const OpClass pick_class = dfg.node(pick).op_class();

        // Density of every other node of the same class over cycles 1..bound.
        std::vector<double> density(static_cast<std::size_t>(latency_bound) + 1, 0.0);
        for (NodeIndex m = 0; m < n_nodes; ++m) {
            if (m == pick || dfg.node(m).op_class() != pick_class) continue;
            if (placed[m]) {
                for (int c = fixed[m]; c < fixed[m] + delays[m]; ++c) density[c] += 1.0;
                continue;
            }
            const double p = 1.0 / (lst[m] - est[m] + 1);
            for (int s = est[m]; s <= lst[m]; ++s)
                for (int c = s; c < s + delays[m]; ++c) density[c] += p;
        }

        int best_start = est[pick];
        double best_cost = std::numeric_limits<double>::infinity();
        for (int s = est[pick]; s <= lst[pick]; ++s) {
            double cost = 0.0;
            for (int c = s; c < s + delays[pick]; ++c) cost += density[c];
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best_start = s;
            }
        }

        fixed[pick] = best_start;
        placed[pick] = 1;
        est = forward_pass(dfg, delays, fixed, initial.asap);
        lst = backward_pass(dfg, delays, latency_bound, fixed, initial.alap);
    }

    Schedule s;
    s.start = std::move(fixed);
    s.latency = schedule_latency(s.start, delays);
    return s;
}

std::vector<NodeIndex> critical_path(const Dfg &dfg, std::span<const int> delays) {
    check_delays(dfg, delays);
    if (dfg.empty()) return {};
    // tail[n]: heaviest path weight starting at n, n included.
    std::vector<long long> tail(dfg.size(), 0);
    const auto &order = dfg.topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        long long best = 0;
        for (NodeIndex s : dfg.succs(*it)) best = std::max(best, tail[s]);
        tail[*it] = best + delays[*it];
    }
    NodeIndex cur = static_cast<NodeIndex>(std::max_element(tail.begin(), tail.end()) - tail.begin());
    std::vector<NodeIndex> path{cur};
    while (!dfg.succs(cur).empty()) {
        const long long want = tail[cur] - delays[cur];
        NodeIndex next = dfg.size();
        for (NodeIndex s : dfg.succs(cur))
            if (tail[s] == want && s < next) next = s;
        if (next == dfg.size()) break;
        path.push_back(next);
        cur = next;
    }
    return path;
}

Schedule asap(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment) {
    return asap(dfg, assignment.delays(library));
}

Schedule alap(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment, int latency_bound) {
    return alap(dfg, assignment.delays(library), latency_bound);
}

Schedule density_schedule(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment,
                          int latency_bound) {
    return density_schedule(dfg, assignment.delays(library), latency_bound);
}

std::vector<NodeIndex> critical_path(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment) {
    return critical_path(dfg, assignment.delays(library));
}

} // namespace relsyn
