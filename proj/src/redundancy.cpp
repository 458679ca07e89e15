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

#include "relsyn/redundancy.hpp"

#include "relsyn/synthesizer.hpp"
#include "text_util.hpp"

#include <cmath>

namespace relsyn {

namespace {
constexpr double kAreaEps = 1e-9;

void check_consistent(const Dfg &dfg, const Assignment &assignment, const Binding &binding) {
    if (assignment.size() != dfg.size() || binding.instance_of.size() != dfg.size())
        throw ValidationError("assignment/binding does not match the graph");
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        const int id = binding.instance_of[n];
        if (id < 0 || static_cast<std::size_t>(id) >= binding.instances.size())
            throw ValidationError("node '" + dfg.node(n).id + "' bound to an unknown instance");
        if (binding.instances[id].version != assignment[n])
            throw ValidationError("node '" + dfg.node(n).id + "' bound to an instance of another version");
    }
    for (std::size_t i = 0; i < binding.instances.size(); ++i) {
        if (binding.instances[i].id != static_cast<int>(i)) throw ValidationError("instance ids must be 0..n-1");
        check_nmr_factor(binding.instances[i].nmr);
    }
}
} // namespace

double nmr_reliability(double r, int n) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("reliability must be in [0, 1]");
    check_nmr_factor(n);
    const int k = (n + 1) / 2;
    double sum = 0.0;
    double binom = 1.0; // C(n, i), built up from i = n downwards
    for (int i = n; i >= k; --i) {
        sum += binom * std::pow(r, i) * std::pow(1.0 - r, n - i);
        binom = binom * i / (n - i + 1);
    }
    return sum;
}

double node_reliability(const ResourceLibrary &library, const Assignment &assignment, const Binding &binding,
                        NodeIndex n) {
    const double r = library.at(assignment[n]).reliability;
    const int nmr = binding.instances.at(binding.instance_of.at(n)).nmr;
    return nmr == 1 ? r : nmr_reliability(r, nmr);
}

double evaluate_reliability(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment,
                            const Binding &binding) {
    check_consistent(dfg, assignment, binding);
    double log_sum = 0.0;
    for (NodeIndex n = 0; n < dfg.size(); ++n) log_sum += std::log(node_reliability(library, assignment, binding, n));
    return std::exp(log_sum);
}

void refresh_metrics(const Dfg &dfg, const ResourceLibrary &library, Design &design) {
    design.area = total_area(design.binding, library);
    design.reliability = evaluate_reliability(dfg, library, design.assignment, design.binding);
}

Design greedy_nmr_upgrade(const Dfg &dfg, const ResourceLibrary &library, Design design, double area_bound) {
    refresh_metrics(dfg, library, design);
    std::vector<std::size_t> load(design.binding.instances.size(), 0);
    for (int id : design.binding.instance_of) ++load[id];

    for (;;) {
        int best = -1;
        double best_ratio = 0.0;
        for (const Instance &inst : design.binding.instances) {
            const auto &version = library.at(inst.version);
            const double extra = 2.0 * version.area;
            if (design.area + extra > area_bound + kAreaEps || load[inst.id] == 0) continue;
            const double gain = static_cast<double>(load[inst.id]) *
                                (std::log(nmr_reliability(version.reliability, inst.nmr + 2)) -
                                 std::log(nmr_reliability(version.reliability, inst.nmr)));
            if (!(gain > 0.0)) continue;
            const double ratio = gain / extra;
            if (best < 0 || ratio > best_ratio) {
                best = inst.id;
                best_ratio = ratio;
            }
        }
        if (best < 0) break;
        design.binding.instances[best].nmr += 2;
        refresh_metrics(dfg, library, design);
    }
    return design;
}

SynthResult baseline_nmr_synth(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds) {
    bounds.validate();
    library.require_covers(dfg);

    std::array<std::vector<VersionIndex>, 2> choices;
    for (OpClass c : kAllOpClasses)
        choices[class_slot(c)] = dfg.uses(c) ? library.versions_of(c) : std::vector<VersionIndex>{0};

    std::optional<Design> best;
    int min_latency = 0;
    double min_area = 0.0;
    bool latency_ok_somewhere = false;
    for (VersionIndex add_v : choices[0]) {
        for (VersionIndex mul_v : choices[1]) {
            const Assignment assignment = Assignment::per_class(dfg, library, {add_v, mul_v});
            const int latency = asap(dfg, library, assignment).latency;
            if (min_latency == 0 || latency < min_latency) min_latency = latency;
            if (latency > bounds.latency) continue;
            latency_ok_somewhere = true;

            Design d;
            d.assignment = assignment;
            d.schedule = density_schedule(dfg, library, assignment, bounds.latency);
            d.binding = bind(dfg, d.schedule, assignment, library);
            d.latency = d.schedule.latency;
            refresh_metrics(dfg, library, d);
            if (min_area == 0.0 || d.area < min_area) min_area = d.area;
            if (d.area > bounds.area + kAreaEps) continue;

            d = greedy_nmr_upgrade(dfg, library, std::move(d), bounds.area);
            const bool better = !best || d.reliability > best->reliability ||
                                (d.reliability == best->reliability &&
                                 (d.area < best->area || (d.area == best->area && d.latency < best->latency)));
            if (better) best = std::move(d);
        }
    }
    if (best) return *std::move(best);
    if (!latency_ok_somewhere)
        return Infeasible{InfeasibleReason::Latency, min_latency, 0.0,
                          "no single-version combination reaches latency " + std::to_string(bounds.latency)};
    return Infeasible{InfeasibleReason::Area, bounds.latency, min_area,
                      "no single-version combination fits area " + detail::format_double(bounds.area)};
}

SynthResult combined_synth(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds) {
    SynthResult result = find_design(dfg, library, bounds);
    if (!result) return result;
    return greedy_nmr_upgrade(dfg, library, result.design(), bounds.area);
}

} // namespace relsyn
