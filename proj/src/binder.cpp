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

#include "relsyn/binder.hpp"

#include <algorithm>
#include <numeric>

namespace relsyn {

std::vector<NodeIndex> Binding::nodes_on(int instance) const {
    std::vector<NodeIndex> out;
    for (NodeIndex n = 0; n < instance_of.size(); ++n)
        if (instance_of[n] == instance) out.push_back(n);
    return out;
}

Binding bind(const Dfg &dfg, const Schedule &schedule, const Assignment &assignment, const ResourceLibrary &library) {
    if (schedule.start.size() != dfg.size() || assignment.size() != dfg.size())
        throw ValidationError("schedule/assignment does not match the graph");

    std::vector<NodeIndex> order(dfg.size());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeIndex a, NodeIndex b) { return schedule.start[a] < schedule.start[b]; });

    Binding binding;
    binding.instance_of.assign(dfg.size(), -1);
    std::vector<int> busy_until; // last busy cycle per instance
    for (NodeIndex n : order) {
        const VersionIndex v = assignment[n];
        const int start = schedule.start[n];
        int chosen = -1;
        for (const Instance &inst : binding.instances) {
            if (inst.version == v && busy_until[inst.id] < start) {
                chosen = inst.id;
                break;
            }
        }
        if (chosen < 0) {
            chosen = static_cast<int>(binding.instances.size());
            binding.instances.push_back({chosen, v, 1});
            busy_until.push_back(0);
        }
        busy_until[chosen] = start + library.at(v).delay - 1;
        binding.instance_of[n] = chosen;
    }
    return binding;
}

Binding bind_each_node(const Dfg &dfg, const Assignment &assignment) {
    Binding binding;
    binding.instance_of.resize(dfg.size());
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        binding.instance_of[n] = static_cast<int>(n);
        binding.instances.push_back({static_cast<int>(n), assignment[n], 1});
    }
    return binding;
}

double total_area(const Binding &binding, const ResourceLibrary &library) {
    double area = 0.0;
    for (const Instance &inst : binding.instances) {
        if (inst.version >= library.size()) throw ValidationError("instance references an unknown version");
        area += library.at(inst.version).area * inst.nmr;
    }
    return area;
}

void check_nmr_factor(int nmr) {
    if (nmr < 1 || nmr % 2 == 0)
        throw ValidationError("NMR factor must be an odd positive integer, got " + std::to_string(nmr));
}

} // namespace relsyn
