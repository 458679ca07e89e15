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

#include "relsyn/synthesizer.hpp"

#include "relsyn/redundancy.hpp"
#include "text_util.hpp"

#include <cmath>

namespace relsyn {

namespace {

constexpr double kAreaEps = 1e-9;

bool over_area(double area, double bound) { return area > bound + kAreaEps; }

// Best version among `candidates` by the global preference order.
std::optional<VersionIndex> pick_preferred(const ResourceLibrary &library, const std::vector<VersionIndex> &candidates) {
    std::optional<VersionIndex> best;
    for (VersionIndex v : candidates)
        if (!best || preferred(library.at(v), library.at(*best))) best = v;
    return best;
}

std::vector<VersionIndex> faster_versions(const ResourceLibrary &library, VersionIndex current) {
    const auto &cur = library.at(current);
    std::vector<VersionIndex> out;
    for (VersionIndex v : library.versions_of(cur.op_class))
        if (library.at(v).delay < cur.delay) out.push_back(v);
    return out;
}

std::vector<VersionIndex> smaller_versions(const ResourceLibrary &library, VersionIndex current) {
    const auto &cur = library.at(current);
    std::vector<VersionIndex> out;
    for (VersionIndex v : library.versions_of(cur.op_class))
        if (library.at(v).area < cur.area && library.at(v).delay <= cur.delay) out.push_back(v);
    return out;
}

struct Working {
    Assignment assignment;
    Schedule schedule;
    Binding binding;
    double area = 0.0;
};

void reschedule(const Dfg &dfg, const ResourceLibrary &library, Working &w, int latency_bound) {
    w.schedule = density_schedule(dfg, library, w.assignment, latency_bound);
    w.binding = bind(dfg, w.schedule, w.assignment, library);
    w.area = total_area(w.binding, library);
}

} // namespace

void Bounds::validate() const {
    if (latency < 1) throw ValidationError("latency bound must be >= 1");
    if (!(area > 0.0)) throw ValidationError("area bound must be > 0");
}

std::string_view to_string(InfeasibleReason reason) noexcept {
    return reason == InfeasibleReason::Latency ? "latency" : "area";
}

Assignment initial_allocation(const Dfg &dfg, const ResourceLibrary &library) {
    library.require_covers(dfg);
    std::array<VersionIndex, 2> by_class{};
    for (OpClass c : kAllOpClasses)
        if (auto best = pick_preferred(library, library.versions_of(c))) by_class[class_slot(c)] = *best;
    return Assignment::per_class(dfg, library, by_class);
}

SynthResult find_design(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds) {
    bounds.validate();
    Working w;
    w.assignment = initial_allocation(dfg, library);
    int latency = asap(dfg, library, w.assignment).latency;

    // Latency repair.
    while (latency > bounds.latency) {
        const auto delays = w.assignment.delays(library);
        std::optional<NodeIndex> victim;
        for (NodeIndex n : critical_path(dfg, delays)) {
            if (faster_versions(library, w.assignment[n]).empty()) continue;
            if (!victim || delays[n] > delays[*victim] || (delays[n] == delays[*victim] && n < *victim)) victim = n;
        }
        if (!victim) {
            return Infeasible{InfeasibleReason::Latency, latency, 0.0,
                              "minimum reachable latency " + std::to_string(latency) + " exceeds bound " +
                                  std::to_string(bounds.latency)};
        }
        w.assignment.set(dfg, library, *victim,
                         *pick_preferred(library, faster_versions(library, w.assignment[*victim])));
        latency = asap(dfg, library, w.assignment).latency;
    }
    reschedule(dfg, library, w, latency);

    // Slack exploitation.
    int sched_bound = latency;
    while (over_area(w.area, bounds.area) && sched_bound < bounds.latency) {
        ++sched_bound;
        reschedule(dfg, library, w, sched_bound);
    }

    // Area repair.
    while (over_area(w.area, bounds.area)) {
        std::optional<NodeIndex> victim;
        for (NodeIndex n = 0; n < dfg.size(); ++n) {
            if (smaller_versions(library, w.assignment[n]).empty()) continue;
            if (!victim || library.at(w.assignment[n]).area > library.at(w.assignment[*victim]).area) victim = n;
        }
        if (!victim) {
            return Infeasible{InfeasibleReason::Area, w.schedule.latency, w.area,
                              "minimum reachable area " + detail::format_double(w.area) + " exceeds bound " +
                                  detail::format_double(bounds.area)};
        }
        const VersionIndex replacement = *pick_preferred(library, smaller_versions(library, w.assignment[*victim]));
        for (NodeIndex n : w.binding.nodes_on(w.binding.instance_of[*victim]))
            w.assignment.set(dfg, library, n, replacement);
        reschedule(dfg, library, w, sched_bound);
    }

    if (w.schedule.latency > bounds.latency)
        return Infeasible{InfeasibleReason::Latency, w.schedule.latency, w.area, "latency bound violated"};

    Design design;
    design.assignment = std::move(w.assignment);
    design.schedule = std::move(w.schedule);
    design.binding = std::move(w.binding);
    design.latency = design.schedule.latency;
    refresh_metrics(dfg, library, design);
    return design;
}

} // namespace relsyn
