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

// Soft-error characterization of functional units.
//
// Critical charge -> relative soft-error rate -> failure rate -> reliability.
// Soft-error rates scale as exp(-Q_critical / Q_s), so only ratios between
// components built in the same technology are meaningful; absolute rates are
// pinned by anchoring one reference component to a known reliability.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relsyn::charlib {

struct CharInput {
    std::string name;
    double q_critical = 0.0; ///< coulombs
};

struct CharModel {
    double q_s = 0.0; ///< charge-collection efficiency, coulombs
    std::string reference;
    double reference_reliability = 0.0;
    double time = 1.0; ///< mission time; reliabilities are per mission
};

struct CharRecord {
    std::string name;
    double q_critical = 0.0;
    double ser_ratio = 0.0; ///< SER relative to the reference component
    double failure_rate = 0.0;
    double reliability = 0.0;
};

struct CalibrationPoint {
    double q_critical = 0.0;
    double reliability = 0.0;
};

/// SER_a / SER_b = exp((q_crit_b - q_crit_a) / q_s).
double ser_ratio(double q_crit_a, double q_crit_b, double q_s);

/// R(t) = exp(-lambda t).
double reliability_from_failure_rate(double lambda, double t);

/// Inverse of reliability_from_failure_rate; reliability in (0, 1], t > 0.
double failure_rate_from_reliability(double reliability, double t);

/// Fits q_s so that both points are reproduced by the exponential SER model.
/// Throws ValidationError on degenerate points or when the fit is not positive
/// (the higher-charge component must be the more reliable one).
double calibrate_qs(const CalibrationPoint &reference, const CalibrationPoint &other, double t = 1.0);

/// Runs every input through the pipeline. The reference component reproduces
/// `model.reference_reliability` exactly.
std::vector<CharRecord> characterize(std::span<const CharInput> inputs, const CharModel &model);

/// `qcrit <name> <coulombs>` lines; `#` comments and blank lines ignored.
std::vector<CharInput> parse_qcrit(std::string_view text);

} // namespace relsyn::charlib
