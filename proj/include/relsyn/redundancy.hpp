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

#include "relsyn/design.hpp"

namespace relsyn {

/// Majority-voted reliability of `n` identical copies: sum over i >= (n+1)/2
/// of C(n,i) r^i (1-r)^(n-i).
double nmr_reliability(double r, int n);

/// Effective reliability of one node given its instance's NMR factor.
double node_reliability(const ResourceLibrary &library, const Assignment &assignment, const Binding &binding,
                        NodeIndex n);

/// Product of node reliabilities (every unit must succeed), computed in log
/// space.
double evaluate_reliability(const Dfg &dfg, const ResourceLibrary &library, const Assignment &assignment,
                            const Binding &binding);

/// Recomputes area and reliability of `design` from its binding.
void refresh_metrics(const Dfg &dfg, const ResourceLibrary &library, Design &design);

/// Adds voted copies (nmr -> nmr + 2) to instances, best log-reliability gain
/// per added area first (ties: lowest instance id), while the total stays
/// within `area_bound`. Schedule and latency are untouched.
Design greedy_nmr_upgrade(const Dfg &dfg, const ResourceLibrary &library, Design design, double area_bound);

/// Single-version-per-class synthesis with redundancy: every combination of
/// one version per op class is scheduled against L_d, bound, filtered by the
/// bounds and upgraded with leftover area; the most reliable survivor wins
/// (ties: smaller area, smaller latency, enumeration order).
SynthResult baseline_nmr_synth(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds);

/// find_design followed by greedy_nmr_upgrade within A_d.
SynthResult combined_synth(const Dfg &dfg, const ResourceLibrary &library, const Bounds &bounds);

} // namespace relsyn
