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

#include "doctest.h"

#include "relsyn/charlib.hpp"
#include "relsyn/model.hpp"

#include <cmath>
#include <vector>

using namespace relsyn;
using namespace relsyn::charlib;

namespace {

constexpr double kRipple = 59.460e-21;
constexpr double kBrentKung = 29.701e-21;
constexpr double kKoggeStone = 37.291e-21;
constexpr double kQs = 8.6278e-21;

std::vector<CharInput> adders() { return {{"ripple", kRipple}, {"brentkung", kBrentKung}, {"koggestone", kKoggeStone}}; }

const CharRecord &by_name(const std::vector<CharRecord> &records, const std::string &name) {
    for (const auto &r : records)
        if (r.name == name) return r;
    throw std::logic_error("missing record " + name);
}

} // namespace

TEST_CASE("ser_ratio examples") {
    CHECK(ser_ratio(kRipple, kRipple, 1e-20) == 1.0);
    CHECK(ser_ratio(kBrentKung, kRipple, kQs) == doctest::Approx(31.47).epsilon(0.002));
    CHECK(ser_ratio(kKoggeStone, kRipple, kQs) == doctest::Approx(13.06).epsilon(0.002));
    // Cross-check against the failure-rate ratio of the two table reliabilities.
    CHECK(ser_ratio(kBrentKung, kRipple, kQs) == doctest::Approx(std::log(0.969) / std::log(0.999)).epsilon(0.002));
    CHECK_THROWS_AS(ser_ratio(0.0, kRipple, kQs), Error);
    CHECK_THROWS_AS(ser_ratio(kRipple, kRipple, -1.0), Error);
}

TEST_CASE("failure rate and reliability") {
    CHECK(reliability_from_failure_rate(0.0, 3.0) == 1.0);
    CHECK(reliability_from_failure_rate(0.00100050, 1.0) == doctest::Approx(0.999).epsilon(1e-7));
    CHECK(reliability_from_failure_rate(0.0314906, 1.0) == doctest::Approx(0.969).epsilon(1e-7));
    CHECK_THROWS_AS(reliability_from_failure_rate(-1.0, 1.0), Error);
    CHECK_THROWS_AS(reliability_from_failure_rate(1.0, -1.0), Error);
    CHECK(failure_rate_from_reliability(0.999, 1.0) == doctest::Approx(-std::log(0.999)));
}

TEST_CASE("calibrate_qs") {
    const double qs = calibrate_qs({kRipple, 0.999}, {kBrentKung, 0.969});
    CHECK(qs == doctest::Approx(kQs).epsilon(0.005));
    CHECK_THROWS_WITH_AS(calibrate_qs({kRipple, 0.97}, {kBrentKung, 0.97}), doctest::Contains("distinct reliabilities"),
                         ValidationError);
    CHECK_THROWS_AS(calibrate_qs({kRipple, 0.999}, {kRipple, 0.969}), ValidationError);
    CHECK_THROWS_WITH_AS(calibrate_qs({kRipple, 0.969}, {kBrentKung, 0.999}), doctest::Contains("q_s"),
                         ValidationError);
}

TEST_CASE("characterize examples") {
    const auto inputs = adders();
    const auto records = characterize(inputs, {kQs, "ripple", 0.999});
    REQUIRE(records.size() == 3);
    CHECK(by_name(records, "ripple").reliability == 0.999);
    CHECK(by_name(records, "brentkung").reliability == doctest::Approx(0.969).epsilon(0.0005 / 0.969));
    CHECK(std::abs(by_name(records, "koggestone").reliability - 0.987) <= 0.001);

    const std::vector<CharInput> only_ref = {{"ripple", kRipple}};
    CHECK(characterize(only_ref, {kQs, "ripple", 0.999}).at(0).reliability == 0.999);

    CHECK_THROWS_WITH_AS(characterize(inputs, {kQs, "sklansky", 0.999}), doctest::Contains("reference"),
                         ValidationError);
}

TEST_CASE("characterize records are internally consistent") {
    const auto records = characterize(adders(), {kQs, "ripple", 0.999, 2.5});
    for (const auto &r : records) {
        CHECK(r.reliability == doctest::Approx(std::exp(-r.failure_rate * 2.5)).epsilon(1e-12));
        CHECK(r.ser_ratio > 0.0);
    }
}

TEST_CASE("monotonicity in critical charge") {
    std::vector<CharInput> inputs;
    for (int i = 1; i <= 20; ++i) inputs.push_back({"c" + std::to_string(i), i * 4e-21});
    const auto records = characterize(inputs, {kQs, "c10", 0.99});
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].failure_rate < records[i - 1].failure_rate);
        CHECK(records[i].reliability > records[i - 1].reliability);
    }
}

TEST_CASE("calibration round trip") {
    const double pairs[][4] = {{kRipple, 0.999, kBrentKung, 0.969},
                               {50e-21, 0.995, 20e-21, 0.90},
                               {10e-21, 0.9999, 9e-21, 0.9995}};
    for (const auto &p : pairs) {
        const double qs = calibrate_qs({p[0], p[1]}, {p[2], p[3]});
        const std::vector<CharInput> in = {{"ref", p[0]}, {"other", p[2]}};
        const auto out = characterize(in, {qs, "ref", p[1]});
        CHECK(out[0].reliability == doctest::Approx(p[1]).epsilon(1e-10));
        CHECK(out[1].reliability == doctest::Approx(p[3]).epsilon(1e-10));
    }
}

TEST_CASE("ser_ratio transitivity") {
    const double qs[] = {1e-21, 8.6e-21, 30e-21};
    const double q[] = {5e-21, 29.7e-21, 37.3e-21, 59.5e-21};
    for (double s : qs)
        for (double a : q)
            for (double b : q)
                for (double c : q)
                    CHECK(ser_ratio(a, b, s) * ser_ratio(b, c, s) ==
                          doctest::Approx(ser_ratio(a, c, s)).epsilon(1e-12));
}

TEST_CASE("parse_qcrit") {
    const auto in = parse_qcrit("# adders\nqcrit ripple 59.460e-21\n\nqcrit brentkung 29.701e-21 # fast\n");
    REQUIRE(in.size() == 2);
    CHECK(in[1].name == "brentkung");
    CHECK(in[1].q_critical == 29.701e-21);
    CHECK_THROWS_AS(parse_qcrit("qcrit a -1e-21\n"), ParseError);
    CHECK_THROWS_AS(parse_qcrit("qcrit a 1e-21\nqcrit a 2e-21\n"), ParseError);
    CHECK_THROWS_AS(parse_qcrit("charge a 1e-21\n"), ParseError);
    CHECK(parse_qcrit(read_file(RELSYN_DATA_DIR "/adders.qcrit")).size() == 3);
}
