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

#include "relsyn/redundancy.hpp"
#include "relsyn/synthesizer.hpp"
#include "test_support.hpp"

#include <random>

using namespace relsyn;
using relsyn::testing::make_dfg;

TEST_CASE("initial_allocation") {
    ResourceLibrary lib = builtin_library();
    Dfg g = make_dfg({{"a", OpKind::Add}, {"m", OpKind::Mul}, {"s", OpKind::Sub}}, {});
    Assignment a = initial_allocation(g, lib);
    CHECK(lib.at(a[0]).name == "Adder1");
    CHECK(lib.at(a[1]).name == "Mult1");
    CHECK(lib.at(a[2]).name == "Adder1");

    ResourceLibrary single = parse_library("resource only add 3 1 0.5\nresource m mul 1 1 0.5");
    CHECK(single.at(initial_allocation(g, single)[0]).name == "only");

    // Ties on reliability: smaller area, then smaller delay, then name.
    ResourceLibrary ties = parse_library("resource b add 2 1 0.9\nresource a add 2 1 0.9\nresource c add 1 3 0.9\n"
                                         "resource d add 1 2 0.9\nresource m mul 1 1 0.9");
    CHECK(ties.at(initial_allocation(g, ties)[0]).name == "d");

    CHECK_THROWS_AS(initial_allocation(g, parse_library("resource x add 1 1 0.9")), ValidationError);
}

TEST_CASE("Bounds validation") {
    Dfg g = testing::chain3();
    ResourceLibrary lib = builtin_library();
    CHECK_THROWS_AS(find_design(g, lib, {0, 10}), ValidationError);
    CHECK_THROWS_AS(find_design(g, lib, {3, 0}), ValidationError);
    CHECK_THROWS_AS(find_design(g, lib, {3, -1}), ValidationError);
}

TEST_CASE("find_design: latency-irreparable chain") {
    Dfg g = testing::chain3();
    ResourceLibrary lib = parse_library("resource Adder1 add 1 2 0.999");
    SynthResult r = find_design(g, lib, {2, 10});
    REQUIRE_FALSE(r.feasible());
    CHECK(r.infeasible().reason == InfeasibleReason::Latency);
    CHECK(r.infeasible().latency == 6);
    CHECK(to_string(r.infeasible().reason) == "latency");
}

TEST_CASE("find_design: fir16") {
    Dfg fir = builtin_benchmark("fir16");
    ResourceLibrary lib = builtin_library();

    SynthResult r = find_design(fir, lib, {11, 12});
    REQUIRE(r.feasible());
    CHECK(r.design().reliability >= 0.78943 - 1e-4);
    CHECK(testing::check_design(fir, lib, r.design(), Bounds{11, 12}) == "");

    // Two fast adders and two fast multipliers already cost 12 area units.
    SynthResult eight = find_design(fir, lib, {11, 8});
    REQUIRE_FALSE(eight.feasible());
    CHECK(eight.infeasible().reason == InfeasibleReason::Area);

    std::vector<std::string> names = {"Adder1", "Mult1"};
    ResourceLibrary slow = lib.subset(names);
    SynthResult at17 = find_design(fir, slow, {17, 100});
    REQUIRE_FALSE(at17.feasible());
    CHECK(at17.infeasible().reason == InfeasibleReason::Latency);
    CHECK(at17.infeasible().latency == 18);
    SynthResult at18 = find_design(fir, slow, {18, 100});
    REQUIRE(at18.feasible());
    CHECK(at18.design().latency == 18);
}

TEST_CASE("find_design: six additions") {
    Dfg six = testing::six_adds();
    ResourceLibrary lib = builtin_library();

    SynthResult relaxed = find_design(six, lib, {6, 4});
    REQUIRE(relaxed.feasible());
    CHECK(relaxed.design().reliability >= 0.82783 - 1e-5);
    CHECK(testing::check_design(six, lib, relaxed.design(), Bounds{6, 4}) == "");

    // At (5, 4) latency repair moves the sources to Adder3 and area repair
    // can only step down to Adder2, never back to the slower Adder1; the
    // mixed-version optimum is out of reach for the greedy repair.
    SynthResult tight = find_design(six, lib, {5, 4});
    REQUIRE_FALSE(tight.feasible());
    CHECK(tight.infeasible().reason == InfeasibleReason::Area);
}

TEST_CASE("find_design: latency repair takes the slowest critical node to its best faster version") {
    Dfg g = make_dfg({{"a", OpKind::Add}, {"b", OpKind::Add}}, {{"a", "b"}});
    ResourceLibrary lib = parse_library("resource slow add 1 2 0.999\n"
                                        "resource cheap add 3 1 0.95\n"
                                        "resource good add 2 1 0.96\n");
    SynthResult r = find_design(g, lib, {3, 10});
    REQUIRE(r.feasible());
    CHECK(lib.at(r.design().assignment[0]).name == "good");
    CHECK(lib.at(r.design().assignment[1]).name == "slow");
    CHECK(r.design().latency == 3);
    CHECK(r.design().area == 3.0);
}

TEST_CASE("find_design: slack relaxes the schedule before touching versions") {
    Dfg g = make_dfg({{"x", OpKind::Add}, {"y", OpKind::Add}}, {});
    ResourceLibrary lib = parse_library("resource Adder1 add 1 2 0.999");
    SynthResult r = find_design(g, lib, {4, 1});
    REQUIRE(r.feasible());
    CHECK(r.design().latency == 4);
    CHECK(r.design().area == 1.0);
    CHECK(r.design().binding.instances.size() == 1);

    SynthResult no_room = find_design(g, lib, {3, 1});
    REQUIRE_FALSE(no_room.feasible());
    CHECK(no_room.infeasible().reason == InfeasibleReason::Area);
}

TEST_CASE("find_design: area repair shrinks the largest unit first") {
    Dfg g = make_dfg({{"x", OpKind::Add}, {"y", OpKind::Add}}, {});
    ResourceLibrary lib = parse_library("resource big add 4 1 0.99\nresource small add 2 1 0.95\n");
    SynthResult six = find_design(g, lib, {1, 6});
    REQUIRE(six.feasible());
    CHECK(lib.at(six.design().assignment[0]).name == "small");
    CHECK(lib.at(six.design().assignment[1]).name == "big");
    CHECK(six.design().reliability == doctest::Approx(0.99 * 0.95));

    SynthResult four = find_design(g, lib, {1, 4});
    REQUIRE(four.feasible());
    CHECK(four.design().reliability == doctest::Approx(0.95 * 0.95));

    SynthResult three = find_design(g, lib, {1, 3});
    REQUIRE_FALSE(three.feasible());
    CHECK(three.infeasible().reason == InfeasibleReason::Area);
}

TEST_CASE("find_design: sound, deterministic and consistent on random inputs") {
    std::mt19937 rng(1234);
    int feasible = 0;
    for (int it = 0; it < 300; ++it) {
        Dfg g = testing::random_dfg(rng, 12);
        ResourceLibrary lib = testing::random_library(rng, 3);
        Bounds b{std::uniform_int_distribution<>(1, 14)(rng), static_cast<double>(std::uniform_int_distribution<>(1, 20)(rng))};
        SynthResult r = find_design(g, lib, b);
        SynthResult again = find_design(g, lib, b);
        CHECK(r.feasible() == again.feasible());
        if (!r.feasible()) {
            CHECK(r.infeasible().reason == again.infeasible().reason);
            continue;
        }
        ++feasible;
        const Design &d = r.design();
        CHECK(testing::check_design(g, lib, d, b) == "");
        CHECK(d.assignment == again.design().assignment);
        CHECK(d.schedule == again.design().schedule);
        CHECK(d.binding == again.design().binding);
        CHECK(d.reliability == doctest::Approx(evaluate_reliability(g, lib, d.assignment, d.binding)).epsilon(1e-12));
    }
    CHECK(feasible > 50);
}

TEST_CASE("find_design handles the bundled benchmarks") {
    ResourceLibrary lib = builtin_library();
    for (auto name : builtin_benchmark_names()) {
        Dfg g = builtin_benchmark(name);
        SynthResult r = find_design(g, lib, {40, 100});
        REQUIRE(r.feasible());
        // Everything fits with the most reliable versions.
        for (NodeIndex n = 0; n < g.size(); ++n) CHECK(lib.at(r.design().assignment[n]).reliability == 0.999);
        CHECK(testing::check_design(g, lib, r.design(), Bounds{40, 100}) == "");
    }
}
