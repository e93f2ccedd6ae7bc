#include "doctest.h"

#include "mtm/chain.hpp"
#include "mtm/generators.hpp"
#include "mtm/manhattan.hpp"

using namespace mtm;

TEST_SUITE_BEGIN("chain");

namespace {

Rational kernel_entry(const KernelChain<Rational>& k, PointId u, PointId v) {
    int ui = k.index_of_point[u], vi = k.index_of_point[v];
    for (std::size_t e = k.row_ptr[ui]; e < k.row_ptr[ui + 1]; ++e)
        if (k.col[e] == vi) return k.val[e];
    return Rational(0);
}

}  // namespace

TEST_CASE("kernel of the two-cycle is a swap") {
    auto m = uniform_rule<Rational>(TraceSet::build({Trace{{0, 1}}, Trace{{1, 0}}}));
    auto k = build_kernel(m);
    CHECK(kernel_entry(k, 0, 1) == 1);
    CHECK(kernel_entry(k, 1, 0) == 1);
    CHECK(kernel_entry(k, 0, 0) == 0);
    auto sol = stationary_kernel(k);
    CHECK(sol.unique);
    CHECK(sol.sigma().values == std::vector<Rational>{num::ratio(1, 2), num::ratio(1, 2)});
}

TEST_CASE("manhattan kernel aggregates the two corner paths") {
    auto m = build_manhattan<Rational>(2);
    auto k = build_kernel(m);
    CHECK(kernel_entry(k, manhattan_cell(2, 0, 0), manhattan_cell(2, 1, 1)) == num::ratio(1, 2));
    CHECK(kernel_entry(k, manhattan_cell(2, 0, 0), manhattan_cell(2, 1, 0)) == num::ratio(1, 4));
    for (int u = 0; u < k.size(); ++u) {
        Rational row(0);
        for (std::size_t e = k.row_ptr[u]; e < k.row_ptr[u + 1]; ++e) row += k.val[e];
        CHECK(row == 1);
    }
}

TEST_CASE("expected trace length per start point") {
    auto m = build_manhattan<Rational>(2);
    auto lambda = lambda_psi(m);
    for (PointId u = 0; u < 4; ++u) CHECK(lambda[u] == num::ratio(3, 2));

    auto cycle = uniform_rule<Rational>(TraceSet::build({Trace{{0, 1}}, Trace{{1, 0}}}));
    auto lam2 = lambda_psi(cycle);
    CHECK(lam2[0] == 1);
    CHECK(lam2[1] == 1);

    // all traces of one length give lambda = len-1 everywhere
    auto fixed = uniform_rule<Rational>(
        TraceSet::build({Trace{{0, 1, 2, 1}}, Trace{{1, 0, 2, 0}}, Trace{{0, 2, 1, 0}},
                         Trace{{1, 2, 0, 1}}}));
    auto lam3 = lambda_psi(fixed);
    CHECK(lam3[0] == 3);
    CHECK(lam3[1] == 3);
}

TEST_CASE("disjoint cycles are reported non-unique") {
    auto m = uniform_rule<Rational>(
        TraceSet::build({Trace{{0, 1}}, Trace{{1, 0}}, Trace{{2, 3}}, Trace{{3, 2}}}));
    CHECK_FALSE(is_strongly_connected(m));
    auto sol = stationary_kernel(build_kernel(m));
    CHECK_FALSE(sol.unique);
    CHECK(sol.vectors.size() == 2);
    for (const auto& v : sol.vectors) {
        Rational sum(0);
        for (const auto& x : v.values) sum += x;
        CHECK(sum == 1);
    }
}

TEST_CASE("a single terminal component is unique despite reducibility") {
    // 2 -> {0,1} cycle; only the cycle is terminal
    auto m = uniform_rule<Rational>(TraceSet::build({Trace{{0, 1}}, Trace{{1, 0}}, Trace{{2, 0}}}));
    CHECK_FALSE(is_strongly_connected(m));
    auto sol = stationary_kernel(build_kernel(m));
    CHECK(sol.unique);
    CHECK(sol.sigma().values.size() == 3);
}

TEST_CASE("lift and project are mutually inverse on the manhattan model") {
    auto m = build_manhattan<Rational>(2);
    auto k = build_kernel(m);
    auto sol = stationary_kernel(k);
    auto pi = lift_sigma_to_pi(m, k, sol.sigma());
    for (const auto& v : pi.values) CHECK(v == num::ratio(1, 24));
    CHECK(pi_is_stationary(m, pi.values));
    auto sigma2 = project_pi_to_sigma(m, k, pi);
    CHECK(sigma2.values == sol.sigma().values);
    auto pi2 = lift_sigma_to_pi(m, k, sigma2);
    CHECK(pi2.values == pi.values);
}

TEST_CASE("non-stationary inputs are rejected") {
    auto m = build_manhattan<Rational>(2);
    auto k = build_kernel(m);
    StationaryVector<Rational> bad;
    bad.kind = StationaryKind::kernel;
    bad.values.assign(4, num::ratio(1, 4));
    bad.values[0] = num::ratio(1, 2);
    bad.values[1] = Rational(0);
    CHECK_THROWS_AS(lift_sigma_to_pi(m, k, bad), Error);

    StationaryVector<Rational> bad_pi;
    bad_pi.kind = StationaryKind::full;
    bad_pi.values.assign(static_cast<std::size_t>(m.ts().state_count()),
                         num::ratio(1, m.ts().state_count()));
    bad_pi.values[0] += num::ratio(1, 100);
    bad_pi.values[1] -= num::ratio(1, 100);
    CHECK_THROWS_AS(project_pi_to_sigma(m, k, bad_pi), Error);
}

TEST_CASE("float mode solves within 1e-12") {
    auto m = build_manhattan<double>(3);
    auto k = build_kernel(m);
    auto sol = stationary_kernel(k);
    std::vector<double> next(k.size(), 0.0);
    for (int u = 0; u < k.size(); ++u)
        for (std::size_t e = k.row_ptr[u]; e < k.row_ptr[u + 1]; ++e)
            next[k.col[e]] += sol.sigma().values[u] * k.val[e];
    for (int u = 0; u < k.size(); ++u)
        CHECK(std::abs(next[u] - sol.sigma().values[u]) < 1e-12);
}

TEST_CASE("power iteration agrees with the direct solve") {
    auto m = build_manhattan<double>(4);
    auto k = build_kernel(m);
    std::vector<SparseEntry<double>> entries;
    for (int u = 0; u < k.size(); ++u)
        for (std::size_t e = k.row_ptr[u]; e < k.row_ptr[u + 1]; ++e)
            entries.push_back({u, k.col[e], k.val[e]});
    auto direct = stationary_dense(k.size(), entries);
    auto power = stationary_power_iteration(k.size(), entries);
    auto sparse = stationary_sparse_lu(k.size(), entries);
    REQUIRE(direct);
    REQUIRE(power);
    REQUIRE(sparse);
    for (int u = 0; u < k.size(); ++u) {
        CHECK((*direct)[u] == doctest::Approx((*power)[u]).epsilon(1e-9));
        CHECK((*direct)[u] == doctest::Approx((*sparse)[u]).epsilon(1e-11));
    }
}

TEST_CASE("power iteration handles periodic kernels via the lazy transform") {
    std::vector<SparseEntry<double>> swap{{0, 1, 1.0}, {1, 0, 1.0}};
    auto sigma = stationary_power_iteration(2, swap);
    REQUIRE(sigma);
    CHECK((*sigma)[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("uniformity predicate on crafted rules") {
    auto manhattan = build_manhattan<Rational>(3);
    auto r1 = uniformity_test(manhattan);
    CHECK(r1.uniformly_selective);
    CHECK(r1.balanced);
    CHECK(r1.uniform_stationary);

    // uniform psi but unbalanced in/out counts
    auto m2 = uniform_rule<Rational>(
        TraceSet::build({Trace{{0, 1}}, Trace{{1, 0}}, Trace{{0, 2}}, Trace{{2, 1}}}));
    auto r2 = uniformity_test(m2);
    CHECK(r2.uniformly_selective);
    CHECK_FALSE(r2.balanced);
    CHECK_FALSE(r2.uniform_stationary);

    // balanced set with a skewed rule: solver confirms the non-uniform pi
    auto ts3 = TraceSet::build({Trace{{0, 1}}, Trace{{1, 0}}, Trace{{0, 2}}, Trace{{2, 0}}});
    std::vector<Rational> prob{num::ratio(1, 3), Rational(1), num::ratio(2, 3), Rational(1)};
    auto m3 = make_model(std::move(ts3), std::move(prob));
    auto r3 = uniformity_test(m3);
    CHECK_FALSE(r3.uniformly_selective);
    CHECK(r3.balanced);
    CHECK_FALSE(r3.uniform_stationary);
    auto k3 = build_kernel(m3);
    auto pi3 = lift_sigma_to_pi(m3, k3, stationary_kernel(k3).sigma());
    bool constant = true;
    for (const auto& v : pi3.values)
        if (!(v == pi3.values.front())) constant = false;
    CHECK_FALSE(constant);
}

TEST_CASE("theorem-5 equivalence over generated families") {
    Xoshiro256 rng(2024);
    for (int it = 0; it < 12; ++it) {
        gen::ModelSpec spec;
        spec.points = 3 + static_cast<int>(rng.below(4));
        spec.extra_traces = 1 + static_cast<int>(rng.below(3));
        spec.balanced = it % 2 == 0;
        spec.skewed = (it / 2) % 2 == 0;
        auto m = gen::random_model(rng, spec);
        auto pred = uniformity_test(m).uniform_stationary;
        auto k = build_kernel(m);
        auto pi = lift_sigma_to_pi(m, k, stationary_kernel(k).sigma());
        bool constant = true;
        for (const auto& v : pi.values)
            if (!(v == pi.values.front())) constant = false;
        CHECK(pred == constant);
    }
}

TEST_SUITE_END();
