#include "mtm/generators.hpp"

#include <algorithm>
#include <set>

namespace mtm {
namespace gen {

std::vector<std::vector<Rational>> random_stochastic_matrix(Xoshiro256& rng, int n) {
    std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n, Rational(0)));
    for (int u = 0; u < n; ++u) {
        int deg = 1 + static_cast<int>(rng.below(std::min(4, n)));
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < deg)
            targets.insert(static_cast<int>(rng.below(n)));
        std::vector<std::int64_t> w;
        std::int64_t total = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            w.push_back(1 + static_cast<std::int64_t>(rng.below(9)));
            total += w.back();
        }
        std::size_t i = 0;
        for (int v : targets) p[u][v] = num::ratio(w[i++], total);
    }
    return p;
}

namespace {

Trace random_trace(Xoshiro256& rng, int points, PointId from, PointId to) {
    Trace t;
    t.points.push_back(from);
    int interior = static_cast<int>(rng.below(3));
    for (int i = 0; i < interior; ++i)
        t.points.push_back(static_cast<PointId>(rng.below(points)));
    t.points.push_back(to);
    return t;
}

// a trace with the given endpoints that is not yet in the pool
Trace fresh_trace(Xoshiro256& rng, int points, PointId from, PointId to,
                  std::set<Trace>& pool) {
    for (int attempt = 0;; ++attempt) {
        Trace t = random_trace(rng, points, from, to);
        if (attempt > 16)  // lengthen until distinct
            for (int i = 0; i < attempt - 16; ++i)
                t.points.insert(t.points.begin() + 1, static_cast<PointId>(rng.below(points)));
        if (pool.insert(t).second) return t;
    }
}

}  // namespace

MTModel<Rational> random_model(Xoshiro256& rng, const ModelSpec& spec) {
    const int n = spec.points;
    std::set<Trace> pool;
    std::vector<Trace> traces;

    // covering cycle: strong connectivity and endlessness
    std::vector<PointId> order(n);
    for (int i = 0; i < n; ++i) order[i] = static_cast<PointId>(i);
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    for (int i = 0; i < n; ++i)
        traces.push_back(fresh_trace(rng, n, order[i], order[(i + 1) % n], pool));

    if (spec.balanced) {
        for (int c = 0; c < spec.extra_traces; ++c) {
            int len = 1 + static_cast<int>(rng.below(3));
            std::vector<PointId> cyc(len);
            for (int i = 0; i < len; ++i) cyc[i] = static_cast<PointId>(rng.below(n));
            for (int i = 0; i < len; ++i)
                traces.push_back(fresh_trace(rng, n, cyc[i], cyc[(i + 1) % len], pool));
        }
    } else {
        for (int c = 0; c < spec.extra_traces; ++c) {
            PointId from = static_cast<PointId>(rng.below(n));
            PointId to = static_cast<PointId>(rng.below(n));
            traces.push_back(fresh_trace(rng, n, from, to, pool));
        }
        // marked unbalanced: guarantee some in/out count differs
        traces.push_back(fresh_trace(rng, n, order[0], order[1 % n], pool));
    }

    TraceSet ts = TraceSet::build(std::move(traces));
    if (!spec.skewed) return uniform_rule<Rational>(std::move(ts));

    std::vector<std::int64_t> weight(ts.trace_count());
    for (TraceId t = 0; t < ts.trace_count(); ++t)
        weight[t] = 1 + static_cast<std::int64_t>(rng.below(4));
    // force a genuinely non-uniform psi at the first branching point
    for (PointId u = 0; u < ts.point_count(); ++u) {
        const auto& out = ts.out(u);
        if (out.size() >= 2) {
            weight[out[0]] = 1;
            weight[out[1]] = 2;
            break;
        }
    }
    std::vector<Rational> prob(ts.trace_count());
    for (PointId u = 0; u < ts.point_count(); ++u) {
        std::int64_t total = 0;
        for (TraceId t : ts.out(u)) total += weight[t];
        for (TraceId t : ts.out(u)) prob[t] = num::ratio(weight[t], total);
    }
    return make_model(std::move(ts), std::move(prob));
}

namespace {

struct RsBuilder {
    Xoshiro256& rng;
    const RouteSystemSpec& spec;
    PointId next_point;
    std::vector<Bundle> bundles;
    // bundles usable as path head per hub / tail per hub / anywhere
    std::vector<std::vector<BundleId>> starters, enders;
    std::vector<BundleId> middles;

    PointId fresh() { return next_point++; }

    Segment random_segments_shadow(PointId head, PointId tail, bool tie_head, bool tie_tail) {
        Segment shadow;
        if (tie_head) shadow.push_back(head);
        int len = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < len; ++i) shadow.push_back(fresh());
        if (tie_tail) shadow.push_back(tail);
        return shadow;
    }

    BundleId make_bundle(const Segment& shadow) {
        int nseg = 1 + static_cast<int>(rng.below(spec.max_bundle_segments));
        std::vector<std::pair<Segment, std::int64_t>> segs;
        for (int s = 0; s < nseg; ++s) {
            Segment seg;
            for (PointId p : shadow) {
                int repeats = 1 + static_cast<int>(rng.below(2));
                for (int r = 0; r < repeats; ++r) seg.push_back(p);
            }
            segs.emplace_back(std::move(seg), 1 + static_cast<std::int64_t>(rng.below(2)));
        }
        bundles.push_back(Bundle::make(std::move(segs)));
        return static_cast<BundleId>(bundles.size() - 1);
    }

    bool shadows_disjoint(BundleId a, BundleId b) const {
        for (PointId q : bundles[a].shadow)
            for (PointId r : bundles[b].shadow)
                if (q == r) return false;
        return true;
    }

    BundlePath make_path(PointId from, PointId to) {
        BundlePath p;
        p.bundles.push_back(pick(starters[from]));
        auto try_push = [&](BundleId cand) {
            if (!shadows_disjoint(p.bundles.back(), cand)) {
                // fall back to a middle bundle distinct from the tail
                for (BundleId m : middles)
                    if (m != p.bundles.back() && shadows_disjoint(p.bundles.back(), m)) {
                        cand = m;
                        break;
                    }
                if (!shadows_disjoint(p.bundles.back(), cand)) return;
            }
            p.bundles.push_back(cand);
        };
        int mids = static_cast<int>(rng.below(spec.max_path_bundles - 1));
        if (from == to) mids = std::max(1, mids);
        for (int i = 0; i < mids; ++i) {
            // occasionally reuse a starter bundle mid-path, which exercises the
            // first-versus-interior occurrence accounting
            if (rng.below(3) == 0)
                try_push(pick(starters[rng.below(starters.size())]));
            else
                try_push(pick(middles));
        }
        BundleId ender = pick(enders[to]);
        if (!shadows_disjoint(p.bundles.back(), ender)) try_push(pick(middles));
        p.bundles.push_back(ender);
        return p;
    }

    BundleId pick(const std::vector<BundleId>& v) {
        return v[static_cast<std::size_t>(rng.below(v.size()))];
    }
};

}  // namespace

RouteSystem random_route_system(Xoshiro256& rng, const RouteSystemSpec& spec) {
    const int h = spec.hubs;
    RsBuilder b{rng, spec, static_cast<PointId>(h), {}, {}, {}, {}};
    b.starters.resize(h);
    b.enders.resize(h);
    for (int a = 0; a < h; ++a) {
        int ns = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < ns; ++i)
            b.starters[a].push_back(
                b.make_bundle(b.random_segments_shadow(static_cast<PointId>(a), 0, true, false)));
        for (int i = 0; i < ns; ++i)
            b.enders[a].push_back(
                b.make_bundle(b.random_segments_shadow(0, static_cast<PointId>(a), false, true)));
    }
    for (int i = 0; i < 2; ++i)
        b.middles.push_back(b.make_bundle(b.random_segments_shadow(0, 0, false, false)));

    std::vector<std::pair<Route, std::int64_t>> routes;
    auto add_route = [&](PointId from, PointId to) {
        Route r;
        int npaths = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < npaths; ++i)
            r.paths.push_back({b.make_path(from, to), 1 + static_cast<std::int64_t>(rng.below(2))});
        routes.push_back({std::move(r), 1 + static_cast<std::int64_t>(rng.below(2))});
    };

    // base cycle over all hubs keeps the route graph strongly connected
    for (int a = 0; a < h; ++a) add_route(static_cast<PointId>(a), static_cast<PointId>((a + 1) % h));
    if (spec.unbalanced_routes == 0) {
        for (int c = 0; c < spec.extra_cycles; ++c) {
            int len = 2 + static_cast<int>(rng.below(std::max(1, h - 1)));
            std::vector<PointId> cyc;
            PointId cur = static_cast<PointId>(rng.below(h));
            cyc.push_back(cur);
            for (int i = 1; i < len; ++i) {
                PointId nxt = static_cast<PointId>(rng.below(h));
                if (nxt == cyc.back()) nxt = static_cast<PointId>((nxt + 1) % h);
                cyc.push_back(nxt);
            }
            if (cyc.back() == cyc.front()) cyc.back() = static_cast<PointId>((cyc.back() + 1) % h);
            for (std::size_t i = 0; i < cyc.size(); ++i)
                add_route(cyc[i], cyc[(i + 1) % cyc.size()]);
        }
    } else {
        for (int c = 0; c < spec.unbalanced_routes; ++c) {
            PointId from = static_cast<PointId>(rng.below(h));
            PointId to = static_cast<PointId>(rng.below(h));
            if (to == from) to = static_cast<PointId>((to + 1) % h);
            add_route(from, to);
        }
    }

    return RouteSystem::make(b.next_point, std::move(b.bundles), std::move(routes));
}

}  // namespace gen
}  // namespace mtm
