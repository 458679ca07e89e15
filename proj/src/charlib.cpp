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

#include "relsyn/charlib.hpp"

#include "relsyn/model.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace relsyn::charlib {

namespace {
void require_positive(double value, const char *what) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(std::string(what) + " must be positive");
}
} // namespace

double ser_ratio(double q_crit_a, double q_crit_b, double q_s) {
    require_positive(q_crit_a, "critical charge");
    require_positive(q_crit_b, "critical charge");
    require_positive(q_s, "q_s");
    return std::exp((q_crit_b - q_crit_a) / q_s);
}

double reliability_from_failure_rate(double lambda, double t) {
    if (!(lambda >= 0.0) || !(t >= 0.0)) throw ValidationError("failure rate and time must be non-negative");
    return std::exp(-lambda * t);
}

double failure_rate_from_reliability(double reliability, double t) {
    if (!(reliability > 0.0 && reliability <= 1.0)) throw ValidationError("reliability must be in (0, 1]");
    require_positive(t, "time");
    return -std::log(reliability) / t;
}

double calibrate_qs(const CalibrationPoint &reference, const CalibrationPoint &other, double t) {
    require_positive(reference.q_critical, "critical charge");
    require_positive(other.q_critical, "critical charge");
    require_positive(t, "time");
    for (double r : {reference.reliability, other.reliability})
        if (!(r > 0.0 && r < 1.0)) throw ValidationError("calibration reliabilities must be in (0, 1)");
    if (reference.reliability == other.reliability) throw ValidationError("calibration needs distinct reliabilities");
    if (reference.q_critical == other.q_critical) throw ValidationError("calibration needs distinct critical charges");

    const double lambda_ref = failure_rate_from_reliability(reference.reliability, t);
    const double lambda_other = failure_rate_from_reliability(other.reliability, t);
    const double q_s = (reference.q_critical - other.q_critical) / std::log(lambda_other / lambda_ref);
    if (!(q_s > 0.0))
        throw ValidationError("calibration yields q_s <= 0: the component with the larger critical charge "
                              "must be the more reliable one");
    return q_s;
}

std::vector<CharRecord> characterize(std::span<const CharInput> inputs, const CharModel &model) {
    require_positive(model.q_s, "q_s");
    require_positive(model.time, "time");
    if (!(model.reference_reliability > 0.0 && model.reference_reliability < 1.0))
        throw ValidationError("reference reliability must be in (0, 1)");
    auto ref = std::find_if(inputs.begin(), inputs.end(), [&](const CharInput &in) { return in.name == model.reference; });
    if (ref == inputs.end()) throw ValidationError("reference component '" + model.reference + "' not among inputs");

    const double lambda_ref = failure_rate_from_reliability(model.reference_reliability, model.time);
    std::vector<CharRecord> out;
    out.reserve(inputs.size());
    for (const auto &in : inputs) {
        CharRecord rec;
        rec.name = in.name;
        rec.q_critical = in.q_critical;
        rec.ser_ratio = ser_ratio(in.q_critical, ref->q_critical, model.q_s);
        rec.failure_rate = lambda_ref * rec.ser_ratio;
        rec.reliability = in.name == model.reference ? model.reference_reliability
                                                      : reliability_from_failure_rate(rec.failure_rate, model.time);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<CharInput> parse_qcrit(std::string_view text) {
    std::vector<CharInput> out;
    std::set<std::string> names;
    detail::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view> &tok) {
        if (tok[0] != "qcrit" || tok.size() != 3) throw ParseError(line, "expected 'qcrit <name> <coulombs>'");
        auto q = detail::parse_double(tok[2]);
        if (!q || !(*q > 0.0)) throw ParseError(line, "critical charge must be a positive number");
        std::string name(tok[1]);
        if (!names.insert(name).second) throw ParseError(line, "duplicate component '" + name + "'");
        out.push_back({std::move(name), *q});
    });
    return out;
}

} // namespace relsyn::charlib
