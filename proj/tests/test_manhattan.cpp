#include "doctest.h"

#include <cmath>

#include "mtm/distributions.hpp"
#include "mtm/manhattan.hpp"
#include "mtm/oracle.hpp"

using namespace mtm;

TEST_SUITE_BEGIN("manhattan");

TEST_CASE("closed counting formulas match the path census") {
    for (int n = 2; n <= 6; ++n) {
        auto census = oracle::manhattan_census(n);
        CHECK(census.state_count == manhattan_state_count(n));
        CHECK(census.trace_count == manhattan_trace_count(n));
        for (int fi = 0; fi < n; ++fi)
            for (int fj = 0; fj < n; ++fj)
                for (int ti = 0; ti < n; ++ti)
                    for (int tj = 0; tj < n; ++tj)
                        CHECK(manhattan_eta(n, {fi, fj}, {ti, tj}) ==
                              census.eta[fi * n + fj][ti * n + tj]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(manhattan_gamma(n, {i, j}) == census.gamma[i * n + j]);
                CHECK(manhattan_visits_exact(n, {i, j}) == census.visits_exact[i * n + j]);
            }
    }
}

TEST_CASE("spec reference counts") {
    CHECK(manhattan_eta(2, {1, 1}, {0, 0}) == 2);
    CHECK(manhattan_eta(2, {0, 1}, {0, 0}) == 2);
    CHECK(manhattan_eta(2, {0, 0}, {0, 0}) == 5);
    CHECK(manhattan_gamma(2, {0, 0}) == 11);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(manhattan_gamma(2, {i, j}) == 11);
    CHECK(manhattan_state_count(2) == 24);
    CHECK(manhattan_state_count(3) == 240);
    auto m = build_manhattan<Rational>(2);
    CHECK(m.ts().trace_count() == 16);
    CHECK(m.ts().state_count() == 24);
}

TEST_CASE("state count formula is integral far beyond the enumerable range") {
    for (int n = 2; n <= 100; ++n) {
        std::int64_t s3 = (static_cast<std::int64_t>(n) * n * n * n - static_cast<std::int64_t>(n) * n) *
                          (4 * static_cast<std::int64_t>(n) - 2);
        CHECK(s3 % 3 == 0);
        CHECK(manhattan_state_count(n) * 3 == s3);
    }
}

TEST_CASE("closed-form spatial values and their normalization excess") {
    CHECK(manhattan_spatial_closed(2, {0, 0}) == num::ratio(11, 24));
    Rational total(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) total += manhattan_spatial_closed(2, {i, j});
    CHECK(total == num::ratio(44, 24));
    // excess identity: sum - 1 == (|T| + N^2) / |S|
    for (int n : {2, 3, 5, 8}) {
        Rational sum(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sum += manhattan_spatial_closed(n, {i, j});
        Rational excess = num::ratio(manhattan_trace_count(n) + static_cast<std::int64_t>(n) * n,
                                     manhattan_state_count(n));
        CHECK(sum - 1 == excess);
    }
}

TEST_CASE("convention gap shrinks like 1/N") {
    double last = 1.0;
    for (int n : {10, 20, 40, 60}) {
        Rational l1(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                l1 += num::abs_val(
                    Rational(manhattan_spatial_closed(n, {i, j}) - manhattan_spatial_exact(n, {i, j})));
        double gap = l1.get_d();
        CHECK(gap <= 3.0 / n);
        CHECK(gap < last);
        last = gap;
    }
}

TEST_CASE("exact spatial distribution sums to one and has the square symmetries") {
    for (int n : {3, 5, 6}) {
        Rational total(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) total += manhattan_spatial_exact(n, {i, j});
        CHECK(total == 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto v = manhattan_spatial_exact(n, {i, j});
                CHECK(v == manhattan_spatial_exact(n, {j, i}));
                CHECK(v == manhattan_spatial_exact(n, {n - 1 - i, n - 1 - j}));
                CHECK(v == manhattan_spatial_exact(n, {n - 1 - j, n - 1 - i}));
            }
    }
}

TEST_CASE("closed destination matches the oracle for every pair") {
    for (int n : {2, 5}) {
        auto census = oracle::manhattan_census(n);
        for (int i0 = 0; i0 < n; ++i0)
            for (int j0 = 0; j0 < n; ++j0) {
                Rational total(0);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        auto v = manhattan_dest_closed(n, {i0, j0}, {i, j});
                        CHECK(v == num::ratio(census.eta[i * n + j][i0 * n + j0],
                                              census.gamma[i0 * n + j0]));
                        total += v;
                    }
                CHECK(total == 1);
            }
    }
    CHECK(manhattan_dest_closed(2, {0, 0}, {1, 1}) == num::ratio(2, 11));
}

TEST_CASE("continuum spatial density") {
    const double L = 2.5;
    CHECK(density_spatial(L, L / 2, L / 2) == doctest::Approx(3 / (2 * L * L)).epsilon(1e-12));
    // Simpson quadrature of the density integrates to 1
    const int q = 200;
    double sum = 0;
    for (int i = 0; i <= q; ++i)
        for (int j = 0; j <= q; ++j) {
            double wi = (i == 0 || i == q) ? 1 : (i % 2 ? 4 : 2);
            double wj = (j == 0 || j == q) ? 1 : (j % 2 ? 4 : 2);
            sum += wi * wj * density_spatial(L, i * L / q, j * L / q);
        }
    sum *= (L / q) * (L / q) / 9;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("destination density quadrants and cross markers") {
    const double L = 1.0;
    auto nw = density_dest(L, 0.5, 0.5, 0.2, 0.2);
    CHECK_FALSE(nw.on_cross);
    CHECK(nw.density == doctest::Approx(1 / (2 * L * L)).epsilon(1e-12));

    auto cross = density_dest(L, 0.5, 0.5, 0.5, 0.2);
    CHECK(cross.on_cross);
    CHECK(cross.side == CrossSide::south);
    CHECK(density_dest(L, 0.5, 0.5, 0.2, 0.5).side == CrossSide::west);

    // four quadrant masses total 1/2, complementing the cross mass
    double x0 = 1.0 / 3, y0 = 1.0 / 4;
    double quad = density_dest(L, x0, y0, x0 / 2, y0 / 2).density * x0 * y0 +
                  density_dest(L, x0, y0, (1 + x0) / 2, (1 + y0) / 2).density * (L - x0) * (L - y0) +
                  density_dest(L, x0, y0, x0 / 2, (1 + y0) / 2).density * x0 * (L - y0) +
                  density_dest(L, x0, y0, (1 + x0) / 2, y0 / 2).density * (L - x0) * y0;
    CHECK(quad == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(density_dest(L, 0.0, 0.0, 0.5, 0.5), Error);
}

TEST_CASE("cross probabilities") {
    const double L = 1.0;
    auto c = cross_probabilities(L, 0.5, 0.5);
    CHECK(c.south == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(c.west == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(c.total() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.seg_south == doctest::Approx(2.0));
    for (double x0 : {0.2, 0.41, 0.77})
        for (double y0 : {0.13, 0.5, 0.9}) {
            auto p = cross_probabilities(L, x0, y0);
            CHECK(p.total() == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(p.south == doctest::Approx(p.north));
            CHECK(p.west == doctest::Approx(p.east));
        }
    CHECK_THROWS_AS(cross_probabilities(L, 0.0, 0.5), Error);
}

TEST_CASE("build_manhattan rejects degenerate sizes") {
    CHECK_THROWS_AS(build_manhattan<Rational>(1), Error);
}

TEST_SUITE_END();
