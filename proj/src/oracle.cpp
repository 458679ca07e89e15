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

#include "relsyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace relsyn {

namespace {

constexpr double kAreaEps = 1e-9;

// Plain repeated-scan topological order; deliberately not Dfg::topo_order().
std::vector<NodeIndex> scan_order(const Dfg &dfg) {
    std::vector<NodeIndex> order;
    std::vector<char> done(dfg.size(), 0);
    while (order.size() < dfg.size()) {
        for (NodeIndex n = 0; n < dfg.size(); ++n) {
            if (done[n]) continue;
            const auto &preds = dfg.preds(n);
            if (std::all_of(preds.begin(), preds.end(), [&](NodeIndex p) { return done[p]; })) {
                done[n] = 1;
                order.push_back(n);
            }
        }
    }
    return order;
}

struct Search {
    Search(const Dfg &g, const ResourceLibrary &lib, const std::vector<NodeIndex> &ord, int latency, double area,
           std::vector<VersionIndex> versions)
        : dfg(g), library(lib), order(ord), latency_bound(latency), area_bound(area), version(std::move(versions)) {}

    const Dfg &dfg;
    const ResourceLibrary &library;
    const std::vector<NodeIndex> &order;
    int latency_bound;
    double area_bound;

    std::vector<VersionIndex> version;
    std::vector<int> delay;
    std::vector<int> tail; // longest path from n to a sink, n included

    std::vector<int> start;
    std::vector<std::vector<int>> occupancy; // [version][cycle]
    std::vector<int> peak;                    // per version
    double best_area = std::numeric_limits<double>::infinity();
    std::vector<int> best_start;

    double area() const {
        double a = 0.0;
        for (VersionIndex v = 0; v < peak.size(); ++v) a += library.at(v).area * peak[v];
        return a;
    }

    void dfs(std::size_t depth) {
        const double current = area();
        if (current > area_bound + kAreaEps || current >= best_area - kAreaEps) return;
        if (depth == order.size()) {
            best_area = current;
            best_start = start;
            return;
        }
        const NodeIndex n = order[depth];
        int est = 1;
        for (NodeIndex p : dfg.preds(n)) est = std::max(est, start[p] + delay[p]);
        const int lst = latency_bound - tail[n] + 1;
        const VersionIndex v = version[n];
        for (int s = est; s <= lst; ++s) {
            const int saved_peak = peak[v];
            for (int c = s; c < s + delay[n]; ++c) peak[v] = std::max(peak[v], ++occupancy[v][c]);
            start[n] = s;
            dfs(depth + 1);
            for (int c = s; c < s + delay[n]; ++c) --occupancy[v][c];
            peak[v] = saved_peak;
        }
        start[n] = 0;
    }
};

} // namespace

int oracle_min_latency(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment,
                       const OracleLimit &limit) {
    if (assignment.size() != dfg.size()) throw ValidationError("assignment does not match the graph");
    std::size_t paths = 0;
    int best = 0;
    std::function<void(NodeIndex, int)> walk = [&](NodeIndex n, int length) {
        length += library.at(assignment[n]).delay;
        if (dfg.succs(n).empty()) {
            if (++paths > limit.max_paths) throw OracleLimitExceeded("too many paths to enumerate");
            best = std::max(best, length);
            return;
        }
        for (NodeIndex s : dfg.succs(n)) walk(s, length);
    };
    for (NodeIndex n = 0; n < dfg.size(); ++n)
        if (dfg.preds(n).empty()) walk(n, 0);
    return best;
}

SynthResult oracle_best(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds,
                        const OracleLimit &limit) {
    bounds.validate();
    library.require_covers(dfg);
    if (dfg.size() > limit.max_nodes)
        throw OracleLimitExceeded("graph has " + std::to_string(dfg.size()) + " nodes, oracle limit is " +
                                  std::to_string(limit.max_nodes));
    if (bounds.latency > limit.max_latency_bound)
        throw OracleLimitExceeded("latency bound exceeds oracle limit " + std::to_string(limit.max_latency_bound));
    std::vector<std::vector<VersionIndex>> choices(dfg.size());
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        choices[n] = library.versions_of(dfg.node(n).op_class());
        if (choices[n].size() > limit.max_versions_per_class)
            throw OracleLimitExceeded("more than " + std::to_string(limit.max_versions_per_class) +
                                      " versions per class");
    }

    // Enumerate every assignment with its log-reliability.
    struct Candidate {
        double log_reliability;
        std::vector<VersionIndex> versions;
    };
    std::vector<Candidate> candidates;
    std::vector<std::size_t> digit(dfg.size(), 0);
    for (;;) {
        Candidate c{0.0, std::vector<VersionIndex>(dfg.size())};
        for (NodeIndex n = 0; n < dfg.size(); ++n) {
            c.versions[n] = choices[n][digit[n]];
            c.log_reliability += std::log(library.at(c.versions[n]).reliability);
        }
        candidates.push_back(std::move(c));
        bool carry = true;
        for (std::size_t pos = dfg.size(); carry && pos > 0;) {
            --pos;
            if (++digit[pos] < choices[pos].size())
                carry = false;
            else
                digit[pos] = 0;
        }
        if (carry) break;
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        return a.log_reliability > b.log_reliability;
    });

    const std::vector<NodeIndex> order = scan_order(dfg);
    bool latency_reachable = false;
    int min_latency = std::numeric_limits<int>::max();
    for (const Candidate &cand : candidates) {
        Search search(dfg, library, order, bounds.latency, bounds.area, cand.versions);
        search.delay.resize(dfg.size());
        for (NodeIndex n = 0; n < dfg.size(); ++n) search.delay[n] = library.at(cand.versions[n]).delay;
        search.tail.assign(dfg.size(), 0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int longest = 0;
            for (NodeIndex s : dfg.succs(*it)) longest = std::max(longest, search.tail[s]);
            search.tail[*it] = longest + search.delay[*it];
        }
        const int latency = dfg.empty() ? 0 : *std::max_element(search.tail.begin(), search.tail.end());
        min_latency = std::min(min_latency, latency);
        if (latency > bounds.latency) continue;
        latency_reachable = true;

        // Every version in use needs ceil(busy / L_d) units.
        std::vector<long> busy(library.size(), 0);
        for (NodeIndex n = 0; n < dfg.size(); ++n) busy[cand.versions[n]] += search.delay[n];
        double lower = 0.0;
        for (VersionIndex v = 0; v < library.size(); ++v)
            lower += library.at(v).area * static_cast<double>((busy[v] + bounds.latency - 1) / bounds.latency);
        if (lower > bounds.area + kAreaEps) continue;

        search.start.assign(dfg.size(), 0);
        search.occupancy.assign(library.size(), std::vector<int>(static_cast<std::size_t>(bounds.latency) + 2, 0));
        search.peak.assign(library.size(), 0);
        search.dfs(0);
        if (search.best_start.empty() && !dfg.empty()) continue;

        Design d;
        d.assignment = Assignment(dfg, library, cand.versions);
        d.schedule.start = search.best_start;
        d.schedule.latency = 0;
        for (NodeIndex n = 0; n < dfg.size(); ++n)
            d.schedule.latency = std::max(d.schedule.latency, d.schedule.start[n] + search.delay[n] - 1);
        d.latency = d.schedule.latency;

        // Left-edge binding.
        std::vector<NodeIndex> by_start(dfg.size());
        std::iota(by_start.begin(), by_start.end(), NodeIndex{0});
        std::stable_sort(by_start.begin(), by_start.end(),
                         [&](NodeIndex a, NodeIndex b) { return d.schedule.start[a] < d.schedule.start[b]; });
        d.binding.instance_of.assign(dfg.size(), -1);
        std::vector<int> free_after;
        for (NodeIndex n : by_start) {
            int chosen = -1;
            for (std::size_t i = 0; i < d.binding.instances.size(); ++i) {
                if (d.binding.instances[i].version == cand.versions[n] && free_after[i] < d.schedule.start[n]) {
                    chosen = static_cast<int>(i);
                    break;
                }
            }
            if (chosen < 0) {
                chosen = static_cast<int>(d.binding.instances.size());
                d.binding.instances.push_back({chosen, cand.versions[n], 1});
                free_after.push_back(0);
            }
            free_after[chosen] = d.schedule.start[n] + search.delay[n] - 1;
            d.binding.instance_of[n] = chosen;
        }
        d.area = 0.0;
        for (const Instance &inst : d.binding.instances) d.area += library.at(inst.version).area;
        d.reliability = std::exp(cand.log_reliability);
        return d;
    }
    if (!latency_reachable)
        return Infeasible{InfeasibleReason::Latency, min_latency, 0.0, "no assignment reaches the latency bound"};
    return Infeasible{InfeasibleReason::Area, bounds.latency, 0.0, "no assignment fits the area bound"};
}

} // namespace relsyn
