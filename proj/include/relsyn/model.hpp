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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relsyn {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &message);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Hardware class an operation executes on. Subtractions and comparisons
/// run on adders.
enum class OpClass { Add, Mul };

inline constexpr std::size_t class_slot(OpClass c) noexcept { return c == OpClass::Add ? 0 : 1; }

inline constexpr OpClass kAllOpClasses[] = {OpClass::Add, OpClass::Mul};

/// Operation mnemonic as written in a DFG file.
enum class OpKind { Add, Mul, Sub, Cmp };

OpClass class_of(OpKind kind) noexcept;
std::string_view to_string(OpClass op_class) noexcept;
std::string_view to_string(OpKind kind) noexcept;
std::optional<OpKind> parse_op_kind(std::string_view token) noexcept;
std::optional<OpClass> parse_op_class(std::string_view token) noexcept;

using NodeIndex = std::size_t;
using VersionIndex = std::size_t;

struct DfgNode {
    std::string id;
    OpKind kind = OpKind::Add;

    OpClass op_class() const noexcept { return class_of(kind); }
    friend bool operator==(const DfgNode &, const DfgNode &) = default;
};

struct Edge {
    NodeIndex src;
    NodeIndex dst;
    friend bool operator==(const Edge &, const Edge &) = default;
};

/// Acyclic data-flow graph. Node and edge declaration order is preserved
/// and serves as the tie-break order everywhere downstream.
class Dfg {
  public:
    Dfg() = default;
    /// Validates ids, endpoints, duplicate edges and acyclicity.
    Dfg(std::vector<DfgNode> nodes, std::vector<Edge> edges);

    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }
    const std::vector<DfgNode> &nodes() const noexcept { return nodes_; }
    const DfgNode &node(NodeIndex n) const { return nodes_.at(n); }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    const std::vector<NodeIndex> &preds(NodeIndex n) const { return preds_.at(n); }
    const std::vector<NodeIndex> &succs(NodeIndex n) const { return succs_.at(n); }
    /// Kahn order, smallest declaration index first among ready nodes.
    const std::vector<NodeIndex> &topo_order() const noexcept { return topo_; }
    std::optional<NodeIndex> find(std::string_view id) const;
    NodeIndex index_of(std::string_view id) const;
    std::size_t count(OpClass op_class) const;
    bool uses(OpClass op_class) const { return count(op_class) > 0; }

    friend bool operator==(const Dfg &a, const Dfg &b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

  private:
    std::vector<DfgNode> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeIndex>> preds_;
    std::vector<std::vector<NodeIndex>> succs_;
    std::vector<NodeIndex> topo_;
};

struct ResourceVersion {
    std::string name;
    OpClass op_class = OpClass::Add;
    double area = 0.0;
    int delay = 1;
    double reliability = 1.0;
    friend bool operator==(const ResourceVersion &, const ResourceVersion &) = default;
};

/// Global version preference: reliability desc, area asc, delay asc, name asc.
bool preferred(const ResourceVersion &a, const ResourceVersion &b) noexcept;

class ResourceLibrary {
  public:
    ResourceLibrary() = default;
    explicit ResourceLibrary(std::vector<ResourceVersion> versions);

    const std::vector<ResourceVersion> &versions() const noexcept { return versions_; }
    const ResourceVersion &at(VersionIndex v) const { return versions_.at(v); }
    std::size_t size() const noexcept { return versions_.size(); }
    std::optional<VersionIndex> find(std::string_view name) const;
    VersionIndex index_of(std::string_view name) const;
    /// Versions of one class in declaration order.
    std::vector<VersionIndex> versions_of(OpClass op_class) const;
    /// Throws ValidationError when some class used by `dfg` has no version.
    void require_covers(const Dfg &dfg) const;
    /// Keeps only the named versions, in library order.
    ResourceLibrary subset(std::span<const std::string> names) const;

  private:
    std::vector<ResourceVersion> versions_;
};

/// Total, class-consistent map from node to library version.
class Assignment {
  public:
    Assignment() = default;
    Assignment(const Dfg &dfg, const ResourceLibrary &library, std::vector<VersionIndex> versions);
    /// Builds from (node id, version name) pairs; every node must appear exactly once.
    static Assignment from_names(const Dfg &dfg, const ResourceLibrary &library,
                                 std::span<const std::pair<std::string, std::string>> pairs);
    /// One version per class: ADD-class nodes get `by_class[0]`, MUL-class nodes `by_class[1]`.
    /// Entries for classes absent from `dfg` are ignored.
    static Assignment per_class(const Dfg &dfg, const ResourceLibrary &library,
                                const std::array<VersionIndex, 2> &by_class);

    VersionIndex operator[](NodeIndex n) const { return versions_.at(n); }
    std::size_t size() const noexcept { return versions_.size(); }
    const std::vector<VersionIndex> &versions() const noexcept { return versions_; }
    /// Reassigns one node; the new version must match the node's class.
    void set(const Dfg &dfg, const ResourceLibrary &library, NodeIndex n, VersionIndex v);

    std::vector<int> delays(const ResourceLibrary &library) const;

    friend bool operator==(const Assignment &, const Assignment &) = default;

  private:
    std::vector<VersionIndex> versions_;
};

Dfg parse_dfg(std::string_view text);
std::string render_dfg(const Dfg &dfg);

ResourceLibrary parse_library(std::string_view text);
std::string render_library(const ResourceLibrary &library);

/// Names accepted by builtin_benchmark.
std::span<const std::string_view> builtin_benchmark_names() noexcept;
/// One of "fir16", "ew", "diffeq".
Dfg builtin_benchmark(std::string_view name);
/// Raw text of a bundled data file ("fir16.dfg", "table1.lib", ...).
std::string_view builtin_file(std::string_view file_name);
/// The bundled area/delay/reliability table (Adder1-3, Mult1-2).
ResourceLibrary builtin_library();

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string &path);

} // namespace relsyn
