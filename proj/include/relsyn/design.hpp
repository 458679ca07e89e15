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

#include "relsyn/binder.hpp"
#include "relsyn/model.hpp"
#include "relsyn/scheduler.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace relsyn {

struct Bounds {
    int latency = 1; ///< L_d, cycles
    double area = 1.0; ///< A_d, area units

    void validate() const;
};

/// A complete synthesis result.
struct Design {
    Assignment assignment;
    Schedule schedule;
    Binding binding;
    int latency = 0;
    double area = 0.0;
    double reliability = 1.0;
};

enum class InfeasibleReason { Latency, Area };

std::string_view to_string(InfeasibleReason reason) noexcept;

/// No design satisfies the bounds. `latency`/`area` describe the closest
/// point reached (0 when not meaningful).
struct Infeasible {
    InfeasibleReason reason = InfeasibleReason::Latency;
    int latency = 0;
    double area = 0.0;
    std::string detail;
};

class SynthResult {
  public:
    SynthResult(Design design) : value_(std::move(design)) {}
    SynthResult(Infeasible infeasible) : value_(std::move(infeasible)) {}

    bool feasible() const noexcept { return std::holds_alternative<Design>(value_); }
    explicit operator bool() const noexcept { return feasible(); }
    const Design &design() const { return std::get<Design>(value_); }
    Design &design() { return std::get<Design>(value_); }
    const Infeasible &infeasible() const { return std::get<Infeasible>(value_); }

  private:
    std::variant<Design, Infeasible> value_;
};

} // namespace relsyn
