#include "doctest.h"

#include "mtm/distributions.hpp"
#include "mtm/manhattan.hpp"
#include "mtm/simulate.hpp"

using namespace mtm;

TEST_SUITE_BEGIN("simulate");

namespace {

struct Setup {
    MTModel<double> m;
    StationaryVector<double> pi;
    std::vector<double> s;
};

Setup manhattan_setup(int n) {
    auto m = build_manhattan<double>(n);
    auto k = build_kernel(m);
    auto pi = lift_sigma_to_pi(m, k, stationary_kernel(k).sigma());
    auto s = spatial(m, pi);
    return {std::move(m), std::move(pi), std::move(s)};
}

}  // namespace

TEST_CASE("same seed gives identical histograms") {
    auto setup = manhattan_setup(3);
    SimConfig cfg;
    cfg.agents = 8;
    cfg.steps = 500;
    cfg.warmup = 50;
    cfg.seed = 11;
    auto h1 = simulate(setup.m, &setup.pi.values, cfg);
    auto h2 = simulate(setup.m, &setup.pi.values, cfg);
    CHECK(h1.occupancy == h2.occupancy);
    CHECK(h1.total == h2.total);
    CHECK(h1.total == cfg.agents * (cfg.steps - cfg.warmup));
}

TEST_CASE("thread count does not change the result") {
    auto setup = manhattan_setup(3);
    SimConfig cfg;
    cfg.agents = 16;
    cfg.steps = 400;
    cfg.warmup = 0;
    cfg.seed = 5;
    cfg.track_destinations = true;
    cfg.threads = 1;
    auto h1 = simulate(setup.m, &setup.pi.values, cfg);
    cfg.threads = 8;
    auto h8 = simulate(setup.m, &setup.pi.values, cfg);
    CHECK(h1.occupancy == h8.occupancy);
    CHECK(h1.destination == h8.destination);
}

TEST_CASE("stationary start tracks the analytic occupancy") {
    auto setup = manhattan_setup(4);
    SimConfig cfg;
    cfg.agents = 32;
    cfg.steps = 2000;
    cfg.warmup = 0;
    cfg.seed = 3;
    auto h = simulate(setup.m, &setup.pi.values, cfg);
    auto cmp = compare(h, setup.s);
    CHECK(cmp.tv < 0.02);
    CHECK(cmp.chi2_pvalue > 1e-3);
}

TEST_CASE("fixed start without warmup is biased toward the start") {
    auto setup = manhattan_setup(4);
    SimConfig cfg;
    cfg.agents = 64;
    cfg.steps = 40;
    cfg.warmup = 0;
    cfg.seed = 9;
    cfg.stationary_start = false;
    cfg.fixed_start = ChainState{0, 1};
    auto fixed = simulate(setup.m, nullptr, cfg);
    cfg.stationary_start = true;
    auto stationary = simulate(setup.m, &setup.pi.values, cfg);
    CHECK(compare(fixed, setup.s).tv > compare(stationary, setup.s).tv);
}

TEST_CASE("ergodic convergence in samples") {
    auto setup = manhattan_setup(3);
    double last = 1.0;
    for (std::int64_t steps : {100, 1000, 10000}) {
        double tv = 0;
        for (std::uint64_t rep = 0; rep < 3; ++rep) {
            SimConfig cfg;
            cfg.agents = 10;
            cfg.steps = steps;
            cfg.warmup = 0;
            cfg.seed = 100 + rep;
            tv += compare(simulate(setup.m, &setup.pi.values, cfg), setup.s).tv;
        }
        tv /= 3;
        CHECK(tv < last);
        last = tv;
    }
}

TEST_CASE("compare distances on crafted inputs") {
    EmpiricalHistogram h;
    h.occupancy = {50, 50};
    h.total = 100;
    auto same = compare(h, {0.5, 0.5});
    CHECK(same.tv == doctest::Approx(0.0));
    CHECK(same.chi2_pvalue == doctest::Approx(1.0));

    EmpiricalHistogram point;
    point.occupancy = {100, 0};
    point.total = 100;
    CHECK(compare(point, {0.5, 0.5}).tv == doctest::Approx(0.5));

    CHECK_THROWS_AS(compare(h, {1.0}), Error);
    EmpiricalHistogram bad;
    bad.occupancy = {50, 50};
    bad.total = 100;
    CHECK_THROWS_AS(compare(bad, {1.0, 0.0}), Error);  // mass where analytic is zero
}

TEST_CASE("destination tracking totals match occupancy") {
    auto setup = manhattan_setup(3);
    SimConfig cfg;
    cfg.agents = 4;
    cfg.steps = 300;
    cfg.warmup = 10;
    cfg.seed = 21;
    cfg.track_destinations = true;
    auto h = simulate(setup.m, &setup.pi.values, cfg);
    std::int64_t dest_total = 0;
    for (const auto& [k, v] : h.destination) dest_total += v;
    CHECK(dest_total == h.total);
}

TEST_SUITE_END();
