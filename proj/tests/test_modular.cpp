#include "doctest.h"

#include "mtm/distributions.hpp"
#include "mtm/generators.hpp"
#include "mtm/modular.hpp"

using namespace mtm;

TEST_SUITE_BEGIN("modular");

namespace {

RouteSystem tiny_system() {
    auto b1 = Bundle::make({{{0, 1}, 1}, {{0, 0, 1}, 1}});
    auto b2 = Bundle::make({{{1, 0}, 1}});
    Route r1{{{BundlePath{{0}}, 1}}, 0, 0, 0}, r2{{{BundlePath{{1}}, 1}}, 0, 0, 0};
    return RouteSystem::make(2, {b1, b2}, {{r1, 1}, {r2, 1}});
}

template <class S>
std::vector<S> pipeline_spatial(const RouteSystem& rs) {
    auto m = expand_route_system<S>(rs);
    auto k = build_kernel(m);
    auto pi = lift_sigma_to_pi(m, k, stationary_kernel(k).sigma());
    return spatial(m, pi);
}

}  // namespace

TEST_CASE("shadow collapses maximal runs") {
    CHECK(shadow_of({5, 5, 6, 7, 7, 7, 5}) == Segment{5, 6, 7, 5});
    CHECK(shadow_of({4}) == Segment{4});
    Segment collapsed{1, 2, 3};
    CHECK(shadow_of(collapsed) == collapsed);
    CHECK(shadow_of(shadow_of({0, 0, 1, 1})) == shadow_of({0, 0, 1, 1}));
}

TEST_CASE("bundles require one common shadow") {
    CHECK_THROWS_AS(Bundle::make({{{0, 1}, 1}, {{1, 0}, 1}}), Error);
    CHECK_THROWS_AS(Bundle::make({}), Error);
    auto b = Bundle::make({{{0, 0, 1}, 2}, {{0, 1, 1}, 1}});
    CHECK(b.size == 3);
    CHECK(b.chi_at(0) == 5);  // two copies of (0,0,1) plus one (0,1,1)
    CHECK(b.chi_at(1) == 4);
    CHECK(b.chi_total == 9);
}

TEST_CASE("combine concatenates segment multisets") {
    auto a = Bundle::make({{{0, 1}, 1}, {{0, 0, 1}, 1}});
    auto b = Bundle::make({{{2, 3}, 1}, {{2, 3, 3}, 2}});
    auto c = combine(a, b);
    CHECK(c.size == a.size * b.size);
    CHECK(c.shadow == Segment{0, 1, 2, 3});
    CHECK_THROWS_AS(combine(a, Bundle::make({{{1, 4}, 1}})), Error);

    auto single = combine(Bundle::make({{{0, 1}, 1}}), Bundle::make({{{2, 3}, 1}}));
    CHECK(single.segments.size() == 1);
    CHECK(single.segments[0].first == Segment{0, 1, 2, 3});
}

TEST_CASE("bundle path expansion obeys the product law") {
    auto a = Bundle::make({{{0, 1}, 1}, {{0, 0, 1}, 1}});
    auto b = Bundle::make({{{2, 3}, 1}, {{2, 3, 3}, 2}});
    auto mid = Bundle::make({{{4}, 1}, {{4, 4}, 1}});
    auto rs = RouteSystem::make(
        5, {a, b, mid},
        {{Route{{{BundlePath{{0, 2, 1}}, 1}}, 0, 0, 0}, 1},
         {Route{{{BundlePath{{1}}, 1}}, 0, 0, 0}, 1},
         {Route{{{BundlePath{{0}}, 1}}, 0, 0, 0}, 1}});
    BundlePath p{{0, 2, 1}};
    CHECK(bundle_path_size(rs, p) == 2 * 2 * 3);
    auto expanded = expand_bundle_path(rs, p);
    std::int64_t total = 0;
    for (const auto& [seg, mult] : expanded) total += mult;
    CHECK(total == 12);

    // claims: sum over [[P]] of |T| and of #_T(u) factor through per-bundle averages
    std::int64_t sum_len = 0;
    std::map<PointId, std::int64_t> sum_occ;
    for (const auto& [seg, mult] : expanded) {
        sum_len += mult * static_cast<std::int64_t>(seg.size());
        for (PointId u : seg) sum_occ[u] += mult;
    }
    Rational lhs_len(sum_len);
    Rational rhs_len(0);
    for (BundleId bid : p.bundles)
        rhs_len += num::ratio(rs.bundle(bid).chi_total, rs.bundle(bid).size);
    CHECK(lhs_len == Rational(bundle_path_size(rs, p)) * rhs_len);
    for (PointId u = 0; u < 5; ++u) {
        Rational rhs(0);
        for (BundleId bid : p.bundles)
            rhs += num::ratio(rs.bundle(bid).chi_at(u), rs.bundle(bid).size);
        CHECK(Rational(sum_occ[u]) == Rational(bundle_path_size(rs, p)) * rhs);
    }
}

TEST_CASE("route validation") {
    auto a = Bundle::make({{{0, 1}, 1}});
    auto b = Bundle::make({{{1, 0}, 1}});
    SUBCASE("empty route") {
        Route r;
        CHECK_THROWS_AS(RouteSystem::make(2, {a, b}, {{r, 1}}), Error);
    }
    SUBCASE("endpoint mismatch") {
        Route r{{{BundlePath{{0}}, 1}, {BundlePath{{1}}, 1}}, 0, 0, 0};
        CHECK_THROWS_AS(RouteSystem::make(2, {a, b}, {{r, 1}}), Error);
    }
    SUBCASE("overlapping consecutive bundles") {
        Route r{{{BundlePath{{0, 0}}, 1}}, 0, 0, 0};
        CHECK_THROWS_AS(RouteSystem::make(2, {a, b}, {{r, 1}}), Error);
    }
    SUBCASE("route-level endlessness") {
        Route r{{{BundlePath{{0}}, 1}}, 0, 0, 0};
        CHECK_THROWS_WITH_AS(RouteSystem::make(2, {a, b}, {{r, 1}}), "NotEndless: point 1", Error);
    }
}

TEST_CASE("tiny system closed forms match the chain oracle") {
    auto rs = tiny_system();
    CHECK(is_balanced_rs(rs));
    CHECK(is_strongly_connected_rs(rs));
    CHECK(lambda_balanced<Rational>(rs) == num::ratio(5, 2));
    auto s = spatial_balanced<Rational>(rs);
    CHECK(s[0] == num::ratio(3, 5));
    CHECK(s[1] == num::ratio(2, 5));
    CHECK(s == pipeline_spatial<Rational>(rs));

    auto m = expand_route_system<Rational>(rs);
    CHECK(m.rule.prob(0) == num::ratio(1, 2));  // traces sorted: (0,0,1) then (0,1) then (1,0)
    CHECK(m.rule.prob(1) == num::ratio(1, 2));
    CHECK(m.rule.prob(2) == 1);

    auto k = build_kernel(m);
    auto pi = lift_sigma_to_pi(m, k, stationary_kernel(k).sigma());
    auto d_ref = destination(m, pi, 0);
    auto d = dest_balanced<Rational>(rs, 0);
    CHECK(d.prob == d_ref.prob);
}

TEST_CASE("trace multiplicity inside one derived bundle accumulates psi") {
    // two identical one-bundle paths in one route double #_{P,T}
    auto a = Bundle::make({{{0, 1}, 2}});  // segment multiplicity 2: |B| = 2
    auto b = Bundle::make({{{1, 0}, 1}});
    Route r1{{{BundlePath{{0}}, 1}}, 0, 0, 0};
    Route r2{{{BundlePath{{1}}, 1}}, 0, 0, 0};
    auto rs = RouteSystem::make(2, {a, b}, {{r1, 1}, {r2, 1}});
    auto m = expand_route_system<Rational>(rs);
    CHECK(m.ts().trace_count() == 2);
    CHECK(m.rule.prob(0) == 1);  // #_{P,T} = 2 over |[[P]]| = 2
}

TEST_CASE("psi sums to one per start point after expansion") {
    Xoshiro256 rng(77);
    gen::RouteSystemSpec spec;
    spec.hubs = 3;
    spec.extra_cycles = 2;
    auto rs = gen::random_route_system(rng, spec);
    auto m = expand_route_system<Rational>(rs);
    for (PointId u : m.ts().start_points()) {
        Rational sum(0);
        for (TraceId t : m.ts().out(u)) sum += m.rule.prob(t);
        CHECK(sum == 1);
    }
}

TEST_CASE("route kernel equals the expanded kernel") {
    Xoshiro256 rng(3111);
    for (int it = 0; it < 4; ++it) {
        gen::RouteSystemSpec spec;
        spec.hubs = 2 + static_cast<int>(rng.below(3));
        spec.unbalanced_routes = it % 2 ? 2 : 0;
        auto rs = gen::random_route_system(rng, spec);
        auto m = expand_route_system<Rational>(rs);
        auto k1 = build_kernel(m);
        auto k2 = route_kernel<Rational>(rs);
        REQUIRE(k1.states == k2.states);
        for (int u = 0; u < k1.size(); ++u) {
            std::map<int, Rational> row1, row2;
            for (std::size_t e = k1.row_ptr[u]; e < k1.row_ptr[u + 1]; ++e)
                row1[k1.col[e]] += k1.val[e];
            for (std::size_t e = k2.row_ptr[u]; e < k2.row_ptr[u + 1]; ++e)
                row2[k2.col[e]] += k2.val[e];
            CHECK(row1 == row2);
        }
    }
}

TEST_CASE("balanced closed forms equal the pipeline on random systems") {
    Xoshiro256 rng(41);
    for (int it = 0; it < 8; ++it) {
        gen::RouteSystemSpec spec;
        spec.hubs = 2 + static_cast<int>(rng.below(3));
        spec.extra_cycles = static_cast<int>(rng.below(3));
        auto rs = gen::random_route_system(rng, spec);
        REQUIRE(is_balanced_rs(rs));
        CHECK(spatial_balanced<Rational>(rs) == pipeline_spatial<Rational>(rs));
    }
}

TEST_CASE("general closed forms equal the pipeline on unbalanced systems") {
    Xoshiro256 rng(42);
    for (int it = 0; it < 6; ++it) {
        gen::RouteSystemSpec spec;
        spec.hubs = 2 + static_cast<int>(rng.below(3));
        spec.unbalanced_routes = 1 + static_cast<int>(rng.below(3));
        auto rs = gen::random_route_system(rng, spec);
        auto m = expand_route_system<Rational>(rs);
        auto k = build_kernel(m);
        auto sol = stationary_kernel(k);
        auto pi = lift_sigma_to_pi(m, k, sol.sigma());
        CHECK(spatial_general<Rational>(rs, sol.sigma().values) == spatial(m, pi));
        // general lambda relates to the balanced one only through |R|;
        // verified separately on balanced inputs
        auto d_ref = destination(m, pi, rs.routes()[0].first.start);
        auto d = dest_general<Rational>(rs, sol.sigma().values, rs.routes()[0].first.start);
        CHECK(d.prob == d_ref.prob);
    }
}

TEST_CASE("general forms reduce to balanced ones on balanced input") {
    Xoshiro256 rng(43);
    gen::RouteSystemSpec spec;
    spec.hubs = 3;
    spec.extra_cycles = 1;
    auto rs = gen::random_route_system(rng, spec);
    REQUIRE(is_balanced_rs(rs));
    auto k = route_kernel<Rational>(rs);
    std::vector<Rational> sigma(k.size());
    for (int i = 0; i < k.size(); ++i)
        sigma[i] = num::ratio(rs.routes_from(k.states[i]), rs.route_total());
    CHECK(spatial_general<Rational>(rs, sigma) == spatial_balanced<Rational>(rs));
    CHECK(lambda_general<Rational>(rs, sigma) * Rational(rs.route_total()) ==
          lambda_balanced<Rational>(rs));
}

TEST_CASE("slowness bundles hit the requested averages") {
    auto b = bundle_from_slowness({0, 1}, {Rational(1), Rational(1)});
    CHECK(b.size == 1);
    CHECK(b.segments[0].first == Segment{0, 1});

    auto b2 = bundle_from_slowness({0, 1}, {Rational(2), Rational(1)});
    CHECK(b2.segments[0].first == Segment{0, 0, 1});

    auto b3 = bundle_from_slowness({0, 1}, {num::ratio(3, 2), Rational(1)});
    CHECK(b3.size == 2);
    CHECK(num::ratio(b3.chi_at(0), b3.size) == num::ratio(3, 2));

    auto b4 = bundle_from_slowness({0, 1, 2}, {num::ratio(7, 3), num::ratio(3, 2), Rational(1)});
    CHECK(num::ratio(b4.chi_at(0), b4.size) == num::ratio(7, 3));
    CHECK(num::ratio(b4.chi_at(1), b4.size) == num::ratio(3, 2));
    CHECK(num::ratio(b4.chi_at(2), b4.size) == 1);

    CHECK_THROWS_AS(bundle_from_slowness({0, 1}, {num::ratio(1, 2), Rational(1)}), Error);
    CHECK_THROWS_AS(bundle_from_slowness({0, 1}, {num::ratio(10001, 10000), Rational(1)}), Error);
}

TEST_SUITE_END();
