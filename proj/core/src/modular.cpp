#include "mtm/modular.hpp"

#include <numeric>
#include <set>

namespace mtm {

Segment shadow_of(const Segment& seg) {
    if (seg.empty()) fail(Errc::invalid_bundle, "empty segment");
    Segment s;
    for (PointId p : seg)
        if (s.empty() || s.back() != p) s.push_back(p);
    return s;
}

Bundle Bundle::make(std::vector<std::pair<Segment, std::int64_t>> segments) {
    if (segments.empty()) fail(Errc::invalid_bundle, "bundle must be non-empty");
    std::sort(segments.begin(), segments.end());
    // merge equal segments
    Bundle b;
    for (auto& [seg, mult] : segments) {
        if (mult <= 0) fail(Errc::invalid_bundle, "segment multiplicity must be positive");
        if (seg.empty()) fail(Errc::invalid_bundle, "empty segment");
        if (!b.segments.empty() && b.segments.back().first == seg)
            b.segments.back().second += mult;
        else
            b.segments.emplace_back(std::move(seg), mult);
    }
    b.shadow = shadow_of(b.segments.front().first);
    std::map<PointId, std::int64_t> chi;
    for (const auto& [seg, mult] : b.segments) {
        if (shadow_of(seg) != b.shadow)
            fail(Errc::invalid_bundle, "segments of one bundle must share a shadow");
        b.size += mult;
        for (PointId p : seg) {
            chi[p] += mult;
            b.chi_total += mult;
        }
    }
    b.chi.assign(chi.begin(), chi.end());
    return b;
}

Bundle combine(const Bundle& a, const Bundle& b) {
    std::set<PointId> pa(a.shadow.begin(), a.shadow.end());
    for (PointId p : b.shadow)
        if (pa.count(p)) fail(Errc::overlapping_bundles, "shadows share point " + std::to_string(p));
    std::vector<std::pair<Segment, std::int64_t>> segs;
    segs.reserve(a.segments.size() * b.segments.size());
    for (const auto& [sa, ma] : a.segments)
        for (const auto& [sb, mb] : b.segments) {
            Segment s = sa;
            s.insert(s.end(), sb.begin(), sb.end());
            segs.emplace_back(std::move(s), ma * mb);
        }
    return Bundle::make(std::move(segs));
}

Bundle bundle_from_slowness(const Segment& shadow, const std::vector<Rational>& slowness,
                            std::int64_t denominator_cap) {
    if (shadow.empty()) fail(Errc::invalid_bundle, "empty shadow");
    if (shadow_of(shadow) != shadow)
        fail(Errc::invalid_bundle, "shadow must not contain repeated runs");
    if (slowness.size() != shadow.size())
        fail(Errc::invalid_argument, "one slowness value per shadow position");

    std::int64_t lcm = 1;
    for (const Rational& s : slowness) {
        if (s < 1) fail(Errc::invalid_argument, "slowness must be >= 1");
        if (!s.get_den().fits_slong_p()) fail(Errc::unrepresentable_slowness, "huge denominator");
        std::int64_t den = s.get_den().get_si();
        lcm = std::lcm(lcm, den);
        if (lcm > denominator_cap)
            fail(Errc::unrepresentable_slowness,
                 "denominator lcm exceeds cap " + std::to_string(denominator_cap));
    }

    std::vector<std::int64_t> base(shadow.size()), extra(shadow.size());
    for (std::size_t i = 0; i < shadow.size(); ++i) {
        BigInt b = slowness[i].get_num() / slowness[i].get_den();
        base[i] = b.get_si();
        Rational frac = slowness[i] - Rational(b);
        // frac * lcm is integral by construction
        BigInt e = frac.get_num() * (lcm / frac.get_den().get_si());
        extra[i] = e.get_si();
    }

    std::vector<std::pair<Segment, std::int64_t>> segs;
    for (std::int64_t k = 0; k < lcm; ++k) {
        Segment seg;
        for (std::size_t i = 0; i < shadow.size(); ++i) {
            std::int64_t repeats = base[i] + (k < extra[i] ? 1 : 0);
            for (std::int64_t r = 0; r < repeats; ++r) seg.push_back(shadow[i]);
        }
        segs.emplace_back(std::move(seg), 1);
    }
    Bundle b = Bundle::make(std::move(segs));
    // minimal representation: divide multiplicities by their gcd
    std::int64_t g = 0;
    for (const auto& [seg, mult] : b.segments) g = std::gcd(g, mult);
    if (g > 1) {
        std::vector<std::pair<Segment, std::int64_t>> reduced = b.segments;
        for (auto& [seg, mult] : reduced) mult /= g;
        b = Bundle::make(std::move(reduced));
    }
    return b;
}

RouteSystem RouteSystem::make(PointId point_count, std::vector<Bundle> bundles,
                              std::vector<std::pair<Route, std::int64_t>> routes) {
    RouteSystem rs;
    rs.point_count_ = point_count;
    rs.bundles_ = std::move(bundles);
    for (const Bundle& b : rs.bundles_)
        for (const auto& [u, c] : b.chi)
            if (u < 0 || u >= point_count) fail(Errc::invalid_argument, "bundle point out of range");

    rs.routes_from_.assign(point_count, 0);
    for (auto& [route, mult] : routes) {
        if (mult <= 0) fail(Errc::invalid_argument, "route multiplicity must be positive");
        if (route.paths.empty()) fail(Errc::empty_route, "route has no bundle-paths");
        route.size = 0;
        bool first = true;
        for (const auto& [path, pmult] : route.paths) {
            if (pmult <= 0) fail(Errc::invalid_argument, "path multiplicity must be positive");
            if (path.bundles.empty()) fail(Errc::empty_route, "empty bundle-path");
            for (BundleId b : path.bundles)
                if (b < 0 || b >= static_cast<BundleId>(rs.bundles_.size()))
                    fail(Errc::invalid_argument, "unknown bundle id");
            // consecutive bundles must be non-overlapping
            for (std::size_t i = 0; i + 1 < path.bundles.size(); ++i) {
                const Bundle& a = rs.bundles_[path.bundles[i]];
                const Bundle& b = rs.bundles_[path.bundles[i + 1]];
                std::set<PointId> pa(a.shadow.begin(), a.shadow.end());
                for (PointId p : b.shadow)
                    if (pa.count(p))
                        fail(Errc::overlapping_bundles,
                             "consecutive path bundles share point " + std::to_string(p));
            }
            PointId ps = rs.bundles_[path.bundles.front()].start();
            PointId pe = rs.bundles_[path.bundles.back()].end();
            if (first) {
                route.start = ps;
                route.end = pe;
                first = false;
            } else if (route.start != ps || route.end != pe) {
                fail(Errc::endpoint_mismatch, "bundle-paths of one route must share endpoints");
            }
            route.size += pmult;
        }
        rs.routes_from_[route.start] += mult;
        rs.route_total_ += mult;
    }
    rs.routes_ = std::move(routes);

    for (const auto& [route, mult] : rs.routes_)
        if (rs.routes_from_[route.end] == 0)
            fail(Errc::not_endless, "point " + std::to_string(route.end));
    if (rs.routes_.empty()) fail(Errc::empty_set, "route system has no routes");
    return rs;
}

std::int64_t bundle_path_size(const RouteSystem& rs, const BundlePath& p) {
    std::int64_t size = 1;
    for (BundleId b : p.bundles) size *= rs.bundle(b).size;
    return size;
}

std::vector<std::pair<Segment, std::int64_t>> expand_bundle_path(const RouteSystem& rs,
                                                                 const BundlePath& p) {
    std::vector<std::pair<Segment, std::int64_t>> acc = {{Segment{}, 1}};
    for (BundleId b : p.bundles) {
        const Bundle& bundle = rs.bundle(b);
        std::vector<std::pair<Segment, std::int64_t>> next;
        next.reserve(acc.size() * bundle.segments.size());
        for (const auto& [prefix, pm] : acc)
            for (const auto& [seg, sm] : bundle.segments) {
                Segment s = prefix;
                s.insert(s.end(), seg.begin(), seg.end());
                next.emplace_back(std::move(s), pm * sm);
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    std::vector<std::pair<Segment, std::int64_t>> merged;
    for (auto& [seg, mult] : acc) {
        if (!merged.empty() && merged.back().first == seg)
            merged.back().second += mult;
        else
            merged.emplace_back(std::move(seg), mult);
    }
    return merged;
}

bool is_balanced_rs(const RouteSystem& rs) {
    std::vector<std::int64_t> in(rs.point_count(), 0), out(rs.point_count(), 0);
    for (const auto& [route, mult] : rs.routes()) {
        out[route.start] += mult;
        in[route.end] += mult;
    }
    return in == out;
}

bool is_strongly_connected_rs(const RouteSystem& rs) {
    std::vector<PointId> states;
    std::vector<int> index(rs.point_count(), -1);
    for (const auto& [route, mult] : rs.routes())
        if (index[route.start] < 0) {
            index[route.start] = static_cast<int>(states.size());
            states.push_back(route.start);
        }
    std::vector<std::vector<int>> g(states.size());
    for (const auto& [route, mult] : rs.routes()) {
        if (index[route.end] < 0) return false;
        g[index[route.start]].push_back(index[route.end]);
    }
    return strongly_connected_components(g).count == 1;
}

}  // namespace mtm
