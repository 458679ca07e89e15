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

#include "relsyn/scheduler.hpp"
#include "test_support.hpp"

#include <functional>
#include <numeric>
#include <random>

using namespace relsyn;
using relsyn::testing::chain3;
using relsyn::testing::make_dfg;

namespace {

std::vector<int> random_delays(std::mt19937 &rng, std::size_t n, int max_delay) {
    std::vector<int> d(n);
    for (auto &x : d) x = std::uniform_int_distribution<>(1, max_delay)(rng);
    return d;
}

Dfg diamond() {
    return make_dfg({{"a", OpKind::Add}, {"b", OpKind::Add}, {"c", OpKind::Add}, {"d", OpKind::Add}},
                    {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

} // namespace

TEST_CASE("asap examples") {
    Dfg g = chain3();
    Schedule s = asap(g, std::vector<int>{1, 1, 1});
    CHECK(s.start == std::vector<int>{1, 2, 3});
    CHECK(s.latency == 3);

    s = asap(g, std::vector<int>{2, 2, 2});
    CHECK(s.start == std::vector<int>{1, 3, 5});
    CHECK(s.latency == 6);

    Dfg fir = builtin_benchmark("fir16");
    ResourceLibrary lib = builtin_library();
    Assignment slow = Assignment::per_class(fir, lib, {lib.index_of("Adder1"), lib.index_of("Mult1")});
    CHECK(asap(fir, lib, slow).latency == 18);
}

TEST_CASE("alap examples") {
    Dfg g = chain3();
    CHECK(alap(g, std::vector<int>{1, 1, 1}, 5).start == std::vector<int>{3, 4, 5});
    CHECK_THROWS_AS(alap(g, std::vector<int>{1, 1, 1}, 2), InfeasibleBound);
    try {
        alap(g, std::vector<int>{1, 1, 1}, 2);
    } catch (const InfeasibleBound &e) {
        CHECK(e.bound() == 2);
        CHECK(e.minimum() == 3);
    }

    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        Dfg r = testing::random_dfg(rng, 10);
        auto d = random_delays(rng, r.size(), 3);
        Schedule early = asap(r, d);
        Schedule late = alap(r, d, early.latency);
        for (NodeIndex n : critical_path(r, d)) CHECK(late.start[n] == early.start[n]);
        for (NodeIndex n = 0; n < r.size(); ++n) CHECK(late.start[n] >= early.start[n]);
        CHECK(testing::precedence_ok(r, late.start, d));
        CHECK(late.latency == early.latency);
    }
}

TEST_CASE("asap is a lower bound on every feasible schedule") {
    std::mt19937 rng(99);
    for (int it = 0; it < 40; ++it) {
        Dfg g = testing::random_dfg(rng, 6);
        auto d = random_delays(rng, g.size(), 2);
        const int min_latency = asap(g, d).latency;
        const int horizon = min_latency + 1;
        std::vector<int> start(g.size(), 1);
        int best = std::numeric_limits<int>::max();
        // Enumerate every start vector in [1, horizon]^n.
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == g.size()) {
                if (testing::precedence_ok(g, start, d)) best = std::min(best, schedule_latency(start, d));
                return;
            }
            for (int s = 1; s <= horizon; ++s) {
                start[k] = s;
                rec(k + 1);
            }
        };
        rec(0);
        CHECK(best == min_latency);
    }
}

TEST_CASE("initial density conserves mass") {
    std::mt19937 rng(3);
    for (int it = 0; it < 50; ++it) {
        Dfg g = testing::random_dfg(rng, 12);
        auto d = random_delays(rng, g.size(), 3);
        const int bound = asap(g, d).latency + std::uniform_int_distribution<>(0, 3)(rng);
        DensityProfile p = initial_density(g, d, bound);
        for (OpClass c : kAllOpClasses) {
            double expected = 0.0;
            for (NodeIndex n = 0; n < g.size(); ++n)
                if (g.node(n).op_class() == c) expected += d[n];
            const auto &row = p[class_slot(c)];
            CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("density_schedule spreads independent nodes") {
    Dfg g = make_dfg({{"x", OpKind::Add}, {"y", OpKind::Add}, {"z", OpKind::Add}}, {});
    Schedule s = density_schedule(g, std::vector<int>{1, 1, 1}, 3);
    std::vector<int> sorted = s.start;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3});
}

TEST_CASE("density_schedule stays inside the mobility windows") {
    std::mt19937 rng(17);
    for (int it = 0; it < 200; ++it) {
        Dfg g = testing::random_dfg(rng, 12);
        auto d = random_delays(rng, g.size(), 3);
        const int bound = asap(g, d).latency + std::uniform_int_distribution<>(0, 4)(rng);
        MobilityWindow w = mobility(g, d, bound);
        Schedule s = density_schedule(g, d, bound);
        CHECK(testing::precedence_ok(g, s.start, d));
        CHECK(s.latency <= bound);
        CHECK(s.latency == schedule_latency(s.start, d));
        for (NodeIndex n = 0; n < g.size(); ++n) {
            CHECK(s.start[n] >= w.asap[n]);
            CHECK(s.start[n] <= w.alap[n]);
        }
        CHECK(density_schedule(g, d, bound) == s);
    }
}

TEST_CASE("density_schedule at the ASAP latency with unit delays") {
    for (auto name : builtin_benchmark_names()) {
        Dfg g = builtin_benchmark(name);
        std::vector<int> d(g.size(), 1);
        const int bound = asap(g, d).latency;
        Schedule s = density_schedule(g, d, bound);
        MobilityWindow w = mobility(g, d, bound);
        CHECK(testing::precedence_ok(g, s.start, d));
        for (NodeIndex n = 0; n < g.size(); ++n) CHECK((w.asap[n] <= s.start[n] && s.start[n] <= w.alap[n]));
    }
}

TEST_CASE("density_schedule: fir16 with fast units fits two adders and two multipliers") {
    Dfg fir = builtin_benchmark("fir16");
    ResourceLibrary lib = builtin_library();
    Assignment fast = Assignment::per_class(fir, lib, {lib.index_of("Adder2"), lib.index_of("Mult2")});
    Schedule s = density_schedule(fir, lib, fast, 11);
    auto d = fast.delays(lib);
    CHECK(testing::precedence_ok(fir, s.start, d));
    CHECK(s.latency <= 11);
    auto peak = testing::peak_concurrency(s.start, d, fast.versions());
    CHECK(peak[lib.index_of("Adder2")] <= 2);
    CHECK(peak[lib.index_of("Mult2")] <= 2);
}

TEST_CASE("density_schedule rejects bounds below ASAP") {
    CHECK_THROWS_AS(density_schedule(chain3(), std::vector<int>{1, 1, 1}, 2), InfeasibleBound);
}

TEST_CASE("critical_path examples") {
    CHECK(critical_path(chain3(), std::vector<int>{1, 1, 1}) == std::vector<NodeIndex>{0, 1, 2});
    Dfg g = diamond();
    CHECK(critical_path(g, std::vector<int>{1, 2, 1, 1}) == std::vector<NodeIndex>{0, 1, 3});
    CHECK(critical_path(g, std::vector<int>{1, 1, 2, 1}) == std::vector<NodeIndex>{0, 2, 3});
    CHECK(critical_path(g, std::vector<int>{1, 1, 1, 1}) == std::vector<NodeIndex>{0, 1, 3});
}

TEST_CASE("critical_path weight equals the ASAP latency") {
    std::mt19937 rng(23);
    for (int it = 0; it < 100; ++it) {
        Dfg g = testing::random_dfg(rng, 12);
        auto d = random_delays(rng, g.size(), 3);
        auto path = critical_path(g, d);
        int weight = 0;
        for (NodeIndex n : path) weight += d[n];
        CHECK(weight == asap(g, d).latency);
        CHECK(g.preds(path.front()).empty());
        CHECK(g.succs(path.back()).empty());
        for (std::size_t k = 1; k < path.size(); ++k) {
            const auto &s = g.succs(path[k - 1]);
            CHECK(std::find(s.begin(), s.end(), path[k]) != s.end());
        }
    }
}
