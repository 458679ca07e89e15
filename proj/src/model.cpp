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

#include "relsyn/model.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace relsyn {

ParseError::ParseError(std::size_t line, const std::string &message)
    : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

OpClass class_of(OpKind kind) noexcept { return kind == OpKind::Mul ? OpClass::Mul : OpClass::Add; }

std::string_view to_string(OpClass op_class) noexcept { return op_class == OpClass::Mul ? "mul" : "add"; }

std::string_view to_string(OpKind kind) noexcept {
    switch (kind) {
    case OpKind::Add: return "add";
    case OpKind::Mul: return "mul";
    case OpKind::Sub: return "sub";
    case OpKind::Cmp: return "cmp";
    }
    return "add";
}

std::optional<OpKind> parse_op_kind(std::string_view token) noexcept {
    if (token == "add") return OpKind::Add;
    if (token == "mul") return OpKind::Mul;
    if (token == "sub") return OpKind::Sub;
    if (token == "cmp") return OpKind::Cmp;
    return std::nullopt;
}

std::optional<OpClass> parse_op_class(std::string_view token) noexcept {
    if (auto kind = parse_op_kind(token)) return class_of(*kind);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dfg

Dfg::Dfg(std::vector<DfgNode> nodes, std::vector<Edge> edges) : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::unordered_map<std::string_view, NodeIndex> seen;
    for (NodeIndex n = 0; n < nodes_.size(); ++n) {
        if (nodes_[n].id.empty()) throw ValidationError("empty node id");
        if (!seen.emplace(nodes_[n].id, n).second) throw ValidationError("duplicate node id '" + nodes_[n].id + "'");
    }
    preds_.assign(nodes_.size(), {});
    succs_.assign(nodes_.size(), {});
    std::set<std::pair<NodeIndex, NodeIndex>> unique;
    for (const Edge &e : edges_) {
        if (e.src >= nodes_.size() || e.dst >= nodes_.size()) throw ValidationError("edge endpoint out of range");
        if (!unique.emplace(e.src, e.dst).second)
            throw ValidationError("duplicate edge " + nodes_[e.src].id + " -> " + nodes_[e.dst].id);
        succs_[e.src].push_back(e.dst);
        preds_[e.dst].push_back(e.src);
    }

    std::vector<std::size_t> indegree(nodes_.size());
    for (NodeIndex n = 0; n < nodes_.size(); ++n) indegree[n] = preds_[n].size();
    std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
    for (NodeIndex n = 0; n < nodes_.size(); ++n)
        if (indegree[n] == 0) ready.push(n);
    while (!ready.empty()) {
        NodeIndex n = ready.top();
        ready.pop();
        topo_.push_back(n);
        for (NodeIndex s : succs_[n])
            if (--indegree[s] == 0) ready.push(s);
    }
    if (topo_.size() != nodes_.size()) {
        auto stuck = std::find_if(indegree.begin(), indegree.end(), [](std::size_t d) { return d > 0; });
        throw ValidationError("cycle detected through node '" + nodes_[stuck - indegree.begin()].id + "'");
    }
}

std::optional<NodeIndex> Dfg::find(std::string_view id) const {
    auto it = std::find_if(nodes_.begin(), nodes_.end(), [&](const DfgNode &n) { return n.id == id; });
    if (it == nodes_.end()) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
}

NodeIndex Dfg::index_of(std::string_view id) const {
    if (auto n = find(id)) return *n;
    throw ValidationError("unknown node '" + std::string(id) + "'");
}

std::size_t Dfg::count(OpClass op_class) const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [&](const DfgNode &n) { return n.op_class() == op_class; }));
}

// ---------------------------------------------------------------------------
// ResourceLibrary

bool preferred(const ResourceVersion &a, const ResourceVersion &b) noexcept {
    if (a.reliability != b.reliability) return a.reliability > b.reliability;
    if (a.area != b.area) return a.area < b.area;
    if (a.delay != b.delay) return a.delay < b.delay;
    return a.name < b.name;
}

ResourceLibrary::ResourceLibrary(std::vector<ResourceVersion> versions) : versions_(std::move(versions)) {
    std::set<std::string_view> names;
    for (const auto &v : versions_) {
        if (v.name.empty()) throw ValidationError("empty resource name");
        if (!names.insert(v.name).second) throw ValidationError("duplicate resource name '" + v.name + "'");
        if (v.delay < 1) throw ValidationError("resource '" + v.name + "': delay must be >= 1");
        if (!(v.area > 0.0)) throw ValidationError("resource '" + v.name + "': area must be > 0");
        if (!(v.reliability > 0.0 && v.reliability <= 1.0))
            throw ValidationError("resource '" + v.name + "': reliability must be in (0, 1]");
    }
}

std::optional<VersionIndex> ResourceLibrary::find(std::string_view name) const {
    auto it = std::find_if(versions_.begin(), versions_.end(), [&](const ResourceVersion &v) { return v.name == name; });
    if (it == versions_.end()) return std::nullopt;
    return static_cast<VersionIndex>(it - versions_.begin());
}

VersionIndex ResourceLibrary::index_of(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw ValidationError("unknown resource '" + std::string(name) + "'");
}

std::vector<VersionIndex> ResourceLibrary::versions_of(OpClass op_class) const {
    std::vector<VersionIndex> out;
    for (VersionIndex v = 0; v < versions_.size(); ++v)
        if (versions_[v].op_class == op_class) out.push_back(v);
    return out;
}

void ResourceLibrary::require_covers(const Dfg &dfg) const {
    for (OpClass c : kAllOpClasses)
        if (dfg.uses(c) && versions_of(c).empty())
            throw ValidationError("library has no " + std::string(to_string(c)) + " version");
}

ResourceLibrary ResourceLibrary::subset(std::span<const std::string> names) const {
    for (const auto &name : names) index_of(name);
    std::vector<ResourceVersion> kept;
    for (const auto &v : versions_)
        if (std::find(names.begin(), names.end(), v.name) != names.end()) kept.push_back(v);
    return ResourceLibrary(std::move(kept));
}

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(const Dfg &dfg, const ResourceLibrary &library, std::vector<VersionIndex> versions)
    : versions_(std::move(versions)) {
    if (versions_.size() != dfg.size()) throw ValidationError("assignment does not cover every node");
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        if (versions_[n] >= library.size()) throw ValidationError("assignment references an unknown version");
        if (library.at(versions_[n]).op_class != dfg.node(n).op_class())
            throw ValidationError("node '" + dfg.node(n).id + "' (" + std::string(to_string(dfg.node(n).op_class())) +
                                  ") assigned to " + std::string(to_string(library.at(versions_[n]).op_class)) +
                                  " version '" + library.at(versions_[n]).name + "'");
    }
}

Assignment Assignment::from_names(const Dfg &dfg, const ResourceLibrary &library,
                                  std::span<const std::pair<std::string, std::string>> pairs) {
    constexpr VersionIndex unset = static_cast<VersionIndex>(-1);
    std::vector<VersionIndex> versions(dfg.size(), unset);
    for (const auto &[node_id, version_name] : pairs) {
        NodeIndex n = dfg.index_of(node_id);
        if (versions[n] != unset) throw ValidationError("node '" + node_id + "' assigned twice");
        versions[n] = library.index_of(version_name);
    }
    for (NodeIndex n = 0; n < dfg.size(); ++n)
        if (versions[n] == unset) throw ValidationError("node '" + dfg.node(n).id + "' has no assignment");
    return Assignment(dfg, library, std::move(versions));
}

Assignment Assignment::per_class(const Dfg &dfg, const ResourceLibrary &library,
                                 const std::array<VersionIndex, 2> &by_class) {
    std::vector<VersionIndex> versions(dfg.size());
    for (NodeIndex n = 0; n < dfg.size(); ++n) versions[n] = by_class[class_slot(dfg.node(n).op_class())];
    return Assignment(dfg, library, std::move(versions));
}

void Assignment::set(const Dfg &dfg, const ResourceLibrary &library, NodeIndex n, VersionIndex v) {
    if (library.at(v).op_class != dfg.node(n).op_class()) throw ValidationError("version class mismatch");
    versions_.at(n) = v;
}

std::vector<int> Assignment::delays(const ResourceLibrary &library) const {
    std::vector<int> out(versions_.size());
    for (std::size_t n = 0; n < versions_.size(); ++n) out[n] = library.at(versions_[n]).delay;
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

Dfg parse_dfg(std::string_view text) {
    std::vector<DfgNode> nodes;
    std::vector<std::pair<std::string, std::string>> edge_ids;
    std::vector<std::size_t> edge_lines;
    std::unordered_map<std::string, std::size_t> node_line;

    detail::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view> &tok) {
        if (tok[0] == "node") {
            if (tok.size() != 3) throw ParseError(line, "expected 'node <id> <op>'");
            auto kind = parse_op_kind(tok[2]);
            if (!kind) throw ParseError(line, "unknown operation '" + std::string(tok[2]) + "'");
            std::string id(tok[1]);
            if (!node_line.emplace(id, line).second) throw ParseError(line, "duplicate node id '" + id + "'");
            nodes.push_back({std::move(id), *kind});
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) throw ParseError(line, "expected 'edge <src> <dst>'");
            edge_ids.emplace_back(tok[1], tok[2]);
            edge_lines.push_back(line);
        } else {
            throw ParseError(line, "unknown directive '" + std::string(tok[0]) + "'");
        }
    });

    std::unordered_map<std::string_view, NodeIndex> index;
    for (NodeIndex n = 0; n < nodes.size(); ++n) index.emplace(nodes[n].id, n);
    std::vector<Edge> edges;
    std::set<std::pair<NodeIndex, NodeIndex>> unique;
    for (std::size_t e = 0; e < edge_ids.size(); ++e) {
        const auto &[src, dst] = edge_ids[e];
        auto s = index.find(src), d = index.find(dst);
        if (s == index.end()) throw ParseError(edge_lines[e], "edge references unknown node '" + src + "'");
        if (d == index.end()) throw ParseError(edge_lines[e], "edge references unknown node '" + dst + "'");
        if (s->second == d->second) throw ParseError(edge_lines[e], "cycle detected: self-loop on '" + src + "'");
        if (!unique.emplace(s->second, d->second).second)
            throw ParseError(edge_lines[e], "duplicate edge " + src + " -> " + dst);
        edges.push_back({s->second, d->second});
    }
    try {
        return Dfg(std::move(nodes), std::move(edges));
    } catch (const ValidationError &e) {
        throw ParseError(0, e.what());
    }
}

std::string render_dfg(const Dfg &dfg) {
    std::ostringstream out;
    for (const auto &n : dfg.nodes()) out << "node " << n.id << ' ' << to_string(n.kind) << '\n';
    for (const auto &e : dfg.edges()) out << "edge " << dfg.node(e.src).id << ' ' << dfg.node(e.dst).id << '\n';
    return out.str();
}

ResourceLibrary parse_library(std::string_view text) {
    std::vector<ResourceVersion> versions;
    std::set<std::string> names;
    detail::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view> &tok) {
        if (tok[0] != "resource") throw ParseError(line, "unknown directive '" + std::string(tok[0]) + "'");
        if (tok.size() != 6) throw ParseError(line, "expected 'resource <name> <op> <area> <delay> <reliability>'");
        ResourceVersion v;
        v.name = std::string(tok[1]);
        auto op_class = parse_op_class(tok[2]);
        if (!op_class) throw ParseError(line, "unknown operation '" + std::string(tok[2]) + "'");
        v.op_class = *op_class;
        auto area = detail::parse_double(tok[3]);
        auto delay = detail::parse_int(tok[4]);
        auto rel = detail::parse_double(tok[5]);
        if (!area) throw ParseError(line, "invalid area '" + std::string(tok[3]) + "'");
        if (!delay) throw ParseError(line, "invalid delay '" + std::string(tok[4]) + "'");
        if (!rel) throw ParseError(line, "invalid reliability '" + std::string(tok[5]) + "'");
        if (!(*area > 0.0)) throw ParseError(line, "area must be > 0");
        if (*delay < 1 || *delay > 1'000'000) throw ParseError(line, "delay must be a positive integer");
        if (!(*rel > 0.0 && *rel <= 1.0)) throw ParseError(line, "reliability must be in (0, 1]");
        if (!names.insert(v.name).second) throw ParseError(line, "duplicate resource name '" + v.name + "'");
        v.area = *area;
        v.delay = static_cast<int>(*delay);
        v.reliability = *rel;
        versions.push_back(std::move(v));
    });
    return ResourceLibrary(std::move(versions));
}

std::string render_library(const ResourceLibrary &library) {
    std::ostringstream out;
    out.precision(17);
    for (const auto &v : library.versions())
        out << "resource " << v.name << ' ' << to_string(v.op_class) << ' ' << v.area << ' ' << v.delay << ' '
            << v.reliability << '\n';
    return out.str();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Bundled data

namespace {
constexpr std::string_view kBenchmarkNames[] = {"fir16", "ew", "diffeq"};
}

std::span<const std::string_view> builtin_benchmark_names() noexcept { return kBenchmarkNames; }

Dfg builtin_benchmark(std::string_view name) {
    if (std::find(std::begin(kBenchmarkNames), std::end(kBenchmarkNames), name) == std::end(kBenchmarkNames))
        throw ValidationError("unknown benchmark '" + std::string(name) + "' (expected fir16, ew or diffeq)");
    return parse_dfg(builtin_file(std::string(name) + ".dfg"));
}

ResourceLibrary builtin_library() { return parse_library(builtin_file("table1.lib")); }

} // namespace relsyn
