#include "doctest.h"

#include <set>

#include "mtm/distributions.hpp"
#include "mtm/downtown.hpp"

using namespace mtm;

TEST_SUITE_BEGIN("downtown");

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_downtown(DownTownParams::unit(3, 1)), Error);
    CHECK_THROWS_AS(build_downtown(DownTownParams::unit(0, 1)), Error);
    CHECK_THROWS_AS(build_downtown(DownTownParams::unit(2, 0)), Error);
    DownTownParams bad = DownTownParams::unit(2, 2);
    bad.slk[1] = num::ratio(1, 2);
    CHECK_THROWS_AS(build_downtown(bad), Error);
}

TEST_CASE("cell census and route count") {
    for (auto [n, m] : {std::pair{2, 1}, {2, 2}, {4, 1}}) {
        auto dt = build_downtown(DownTownParams::unit(n, m));
        std::int64_t blocks = static_cast<std::int64_t>(n) * (n + 2) / 2;
        std::int64_t crossings = (n / 2 + 1) * (n / 2 + 1);
        CHECK(static_cast<std::int64_t>(dt.parking_cells.size()) == 2 * m * blocks);
        CHECK(static_cast<std::int64_t>(dt.cells.size()) == 4 * m * blocks + 12 * crossings);
        std::int64_t parking = static_cast<std::int64_t>(dt.parking_cells.size());
        CHECK(dt.route_count() == parking * (parking - 2 * m));
        CHECK(is_balanced_rs(dt.rs));
        CHECK(is_strongly_connected_rs(dt.rs));
    }
}

TEST_CASE("every bundle shadow is lattice-contiguous and within one zone") {
    auto dt = build_downtown(DownTownParams::unit(4, 2));
    std::vector<std::pair<int, int>> pos(dt.cells.size());
    for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c)
        pos[c] = {dt.cells[c].gx, dt.cells[c].gy};
    for (const Bundle& b : dt.rs.bundles()) {
        for (std::size_t i = 0; i + 1 < b.shadow.size(); ++i) {
            auto [x0, y0] = pos[b.shadow[i]];
            auto [x1, y1] = pos[b.shadow[i + 1]];
            CHECK(std::abs(x0 - x1) + std::abs(y0 - y1) == 1);
        }
        std::set<PointId> distinct(b.shadow.begin(), b.shadow.end());
        CHECK(distinct.size() == b.shadow.size());
    }
}

TEST_CASE("assembled routes are contiguous trajectories from start to end parking") {
    auto dt = build_downtown(DownTownParams::unit(2, 2));
    std::vector<std::pair<int, int>> pos(dt.cells.size());
    for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c)
        pos[c] = {dt.cells[c].gx, dt.cells[c].gy};
    int inspected = 0;
    for (const auto& [route, mult] : dt.rs.routes()) {
        if (inspected++ % 37 != 0) continue;  // sample; full sweep is slow in debug runs
        for (const auto& [path, pmult] : route.paths) {
            Segment cells;
            for (BundleId b : path.bundles) {
                const auto& shadow = dt.rs.bundle(b).shadow;
                cells.insert(cells.end(), shadow.begin(), shadow.end());
            }
            for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
                auto [x0, y0] = pos[cells[i]];
                auto [x1, y1] = pos[cells[i + 1]];
                CHECK(std::abs(x0 - x1) + std::abs(y0 - y1) == 1);
            }
            CHECK(dt.cells[cells.front()].role == DTRole::parking);
            CHECK(dt.cells[cells.back()].role == DTRole::parking);
        }
    }
}

TEST_CASE("sigma spot values from the closed forms") {
    DownTownParams p = DownTownParams::unit(2, 2);
    DTBundleInfo s_pp{DTBundleKind::start, 0, 1, 1, true, +1, +1};
    CHECK(dt_sigma_closed(p, s_pp) == Rational(2 * (3 * 2 - 2)));  // m((n+1)(n-j+1)-2) = 8
    DTBundleInfo e_pp{DTBundleKind::end, 0, 1, 1, true, +1, +1};
    CHECK(dt_sigma_closed(p, e_pp) == Rational(2 * (3 * 1 + 1 - 1)));  // m((n+1)j+n/2-1) = 6
}

TEST_CASE("start and end bundle counts match the route walk") {
    for (auto [n, m] : {std::pair{2, 1}, {2, 2}, {4, 1}}) {
        auto dt = build_downtown(DownTownParams::unit(n, m));
        auto walked = dt_sigma_walked(dt);
        for (BundleId b = 0; b < static_cast<BundleId>(dt.rs.bundles().size()); ++b) {
            const auto& info = dt.bundle_info[b];
            if (info.kind != DTBundleKind::start && info.kind != DTBundleKind::end) continue;
            CHECK(dt_sigma_closed(dt.params, info) == Rational(walked[b]));
        }
    }
}

TEST_CASE("closed spatial equals pipeline and sums to one") {
    for (auto [n, m] : {std::pair{2, 1}, {2, 2}}) {
        auto dt = build_downtown(DownTownParams::unit(n, m));
        auto closed = spatial_balanced<Rational>(dt.rs);
        Rational total(0);
        for (const auto& v : closed) total += v;
        CHECK(total == 1);

        auto model = expand_route_system<Rational>(dt.rs);
        auto k = build_kernel(model);
        auto pi = lift_sigma_to_pi(model, k, stationary_kernel(k).sigma());
        CHECK(spatial(model, pi) == closed);
    }
}

TEST_CASE("parking occupancy is identical across parking cells") {
    auto dt = build_downtown(DownTownParams::unit(4, 2));
    auto s = spatial_balanced<Rational>(dt.rs);
    Rational first = s[dt.parking_cells.front()];
    for (PointId c : dt.parking_cells) CHECK(s[c] == first);
    // the printed parking formula is coordinate-free as well
    Rational closed = downtown_closed_spatial(dt, dt.parking_cells.front());
    for (PointId c : dt.parking_cells) CHECK(downtown_closed_spatial(dt, c) == closed);
}

TEST_CASE("closed transit values are affine in the cell index") {
    DownTownParams p = DownTownParams::unit(4, 3);
    auto dt = build_downtown(p);
    std::vector<Rational> by_k(p.m + 1);
    for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c) {
        const auto& info = dt.cells[c];
        if (info.role == DTRole::transit && info.horizontal && info.stripe > 0 && info.i == 2 &&
            info.j == 1)
            by_k[info.k] = downtown_closed_spatial(dt, c);
    }
    Rational d1 = by_k[2] - by_k[1];
    for (int k = 2; k < p.m; ++k) CHECK(by_k[k + 1] - by_k[k] == d1);
}

TEST_CASE("lambda scaling under uniform slowness") {
    auto dt1 = build_downtown(DownTownParams::unit(2, 2));
    DownTownParams doubled = DownTownParams::unit(2, 2);
    doubled.slk.assign(2, Rational(2));
    doubled.wait = 2;
    doubled.crc = 2;
    auto dt2 = build_downtown(doubled);
    CHECK(downtown_lambda_full(dt2) == Rational(2) * downtown_lambda_full(dt1));

    // closed-form spatial shape is invariant under uniform slowness scaling
    for (PointId c : {dt1.parking_cells.front(), dt1.parking_cells.back()})
        CHECK(downtown_closed_spatial(dt1, c) == downtown_closed_spatial(dt2, c));
}

TEST_CASE("lambda identities against the expanded chain") {
    auto dt = build_downtown(DownTownParams::unit(2, 1));
    auto model = expand_route_system<Rational>(dt.rs);
    auto k = build_kernel(model);
    auto sigma = stationary_kernel(k).sigma();
    auto lambda = lambda_psi(model);
    Rational mean_len(0);
    for (int i = 0; i < k.size(); ++i) mean_len += sigma.values[i] * lambda[k.states[i]];
    CHECK(downtown_lambda_exact(dt) == mean_len * Rational(dt.rs.route_total()));
    CHECK(downtown_lambda_full(dt) ==
          (mean_len + 1) * Rational(dt.rs.route_total()));
}

TEST_CASE("uncovered cells raise BoundaryCellNotCovered") {
    auto dt = build_downtown(DownTownParams::unit(2, 1));
    int covered = 0, uncovered = 0;
    for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c) {
        if (downtown_closed_covers(dt, c)) {
            ++covered;
            CHECK_NOTHROW(downtown_closed_spatial(dt, c));
        } else {
            ++uncovered;
            CHECK_THROWS_AS(downtown_closed_spatial(dt, c), Error);
        }
    }
    CHECK(covered == static_cast<int>(dt.parking_cells.size()));  // n=2 has no covered transit
    CHECK(uncovered > 0);
}

TEST_CASE("errata report flags the convention-bearing formulas") {
    auto dt = build_downtown(DownTownParams::unit(2, 1));
    auto rep = downtown_errata(dt);
    CHECK(rep.sigma_checked == static_cast<std::int64_t>(dt.rs.bundles().size()));
    CHECK(rep.sigma_equal >= 0);
    CHECK(rep.cells_checked > 0);
    auto json = downtown_errata_json(dt, rep);
    CHECK(json.find("sigma_b") != std::string::npos);
    CHECK(json.find("lambda") != std::string::npos);
}

TEST_CASE("interior transit mass dominates the border as n grows") {
    double last_ratio = 0;
    for (int n : {4, 8, 16}) {
        auto dt = build_downtown(DownTownParams::unit(n, 1));
        auto s = spatial_balanced<Rational>(dt.rs);
        Rational center(0), border(0);
        int center_j = n / 2 + 1 - ((n / 2) % 2 == 0 ? 1 : 0);  // odd column near n/2
        for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c) {
            const auto& info = dt.cells[c];
            if (info.role != DTRole::transit || !info.horizontal) continue;
            if (info.j == center_j) center += s[c];
            if (info.j == 1) border += s[c];
        }
        double ratio = (center / border).get_d();
        CHECK(ratio > last_ratio);
        last_ratio = ratio;
    }
}

TEST_SUITE_END();
