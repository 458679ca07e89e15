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

#include "relsyn/io.hpp"

#include "relsyn/redundancy.hpp"
#include "text_util.hpp"

#include <charconv>
#include <cstdio>

namespace relsyn::io {

std::vector<AssignLine> parse_assignment_file(std::string_view text) {
    std::vector<AssignLine> out;
    detail::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view> &tok) {
        if (tok[0] != "assign" || (tok.size() != 3 && tok.size() != 5))
            throw ParseError(line, "expected 'assign <node-id> <version-name> [nmr <odd-int>]'");
        AssignLine a{std::string(tok[1]), std::string(tok[2]), 1};
        if (tok.size() == 5) {
            auto nmr = detail::parse_int(tok[4]);
            if (tok[3] != "nmr" || !nmr || *nmr < 1 || *nmr % 2 == 0 || *nmr > 99)
                throw ParseError(line, "nmr factor must be an odd positive integer");
            a.nmr = static_cast<int>(*nmr);
        }
        out.push_back(std::move(a));
    });
    return out;
}

Design design_from_assign_lines(const Dfg &dfg, const ResourceLibrary &library, const std::vector<AssignLine> &lines) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(lines.size());
    for (const auto &l : lines) pairs.emplace_back(l.node, l.version);
    Design d;
    d.assignment = Assignment::from_names(dfg, library, pairs);
    d.binding = bind_each_node(dfg, d.assignment);
    for (const auto &l : lines) d.binding.instances[dfg.index_of(l.node)].nmr = l.nmr;
    d.schedule = asap(dfg, library, d.assignment);
    d.latency = d.schedule.latency;
    refresh_metrics(dfg, library, d);
    return d;
}

json design_to_json(const Dfg &dfg, const ResourceLibrary &library, const Design &design) {
    json assignment = json::object(), schedule = json::object(), binding = json::object();
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        const auto &id = dfg.node(n).id;
        assignment[id] = library.at(design.assignment[n]).name;
        if (!design.schedule.start.empty()) schedule[id] = design.schedule.start[n];
        binding[id] = design.binding.instance_of[n];
    }
    json instances = json::array();
    for (const Instance &inst : design.binding.instances)
        instances.push_back({{"id", inst.id}, {"version", library.at(inst.version).name}, {"nmr", inst.nmr}});
    json doc;
    doc["assignment"] = std::move(assignment);
    doc["schedule"] = std::move(schedule);
    doc["binding"] = std::move(binding);
    doc["instances"] = std::move(instances);
    doc["latency"] = design.latency;
    doc["area"] = design.area;
    doc["reliability"] = design.reliability;
    return doc;
}

Design design_from_json(const Dfg &dfg, const ResourceLibrary &library, const json &doc) {
    try {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto &[id, version] : doc.at("assignment").items()) pairs.emplace_back(id, version.get<std::string>());
        Design d;
        d.assignment = Assignment::from_names(dfg, library, pairs);

        for (const auto &inst : doc.at("instances")) {
            Instance i{inst.at("id").get<int>(), library.index_of(inst.at("version").get<std::string>()),
                       inst.value("nmr", 1)};
            check_nmr_factor(i.nmr);
            if (i.id != static_cast<int>(d.binding.instances.size()))
                throw ValidationError("instance ids must be listed as 0, 1, 2, ...");
            d.binding.instances.push_back(i);
        }
        d.binding.instance_of.assign(dfg.size(), -1);
        for (const auto &[id, instance] : doc.at("binding").items()) d.binding.instance_of[dfg.index_of(id)] = instance.get<int>();
        for (NodeIndex n = 0; n < dfg.size(); ++n)
            if (d.binding.instance_of[n] < 0) throw ValidationError("node '" + dfg.node(n).id + "' is not bound");

        if (doc.contains("schedule") && !doc.at("schedule").empty()) {
            d.schedule.start.assign(dfg.size(), 0);
            for (const auto &[id, start] : doc.at("schedule").items()) d.schedule.start[dfg.index_of(id)] = start.get<int>();
            for (NodeIndex n = 0; n < dfg.size(); ++n)
                if (d.schedule.start[n] < 1) throw ValidationError("node '" + dfg.node(n).id + "' is not scheduled");
            d.schedule.latency = schedule_latency(d.schedule.start, d.assignment.delays(library));
        } else {
            d.schedule = asap(dfg, library, d.assignment);
        }
        d.latency = d.schedule.latency;
        refresh_metrics(dfg, library, d);
        return d;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed design JSON: ") + e.what());
    }
}

json result_to_json(const Dfg &dfg, const ResourceLibrary &library, std::string_view method,
                    const SynthResult &result) {
    json doc;
    doc["method"] = method;
    if (result) {
        doc["status"] = "feasible";
        const json body = design_to_json(dfg, library, result.design());
        for (const auto &[key, value] : body.items()) doc[key] = value;
    } else {
        const Infeasible &inf = result.infeasible();
        doc["status"] = "infeasible";
        doc["reason"] = to_string(inf.reason);
        doc["detail"] = inf.detail;
        if (inf.latency > 0) doc["latency"] = inf.latency;
        if (inf.area > 0.0) doc["area"] = inf.area;
    }
    return doc;
}

std::string format_reliability(double reliability) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", reliability);
    return buf;
}

std::string format_number(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::to_string(value);
}

} // namespace relsyn::io
