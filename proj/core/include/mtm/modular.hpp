#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mtm/chain.hpp"
#include "mtm/distributions.hpp"
#include "mtm/model.hpp"

namespace mtm {

using Segment = std::vector<PointId>;
using BundleId = std::int32_t;

// Maximal runs of repeated points collapsed: the speed-independent path.
Segment shadow_of(const Segment& seg);

// A non-empty multiset of trace segments sharing one shadow. Stored with
// canonical (segment, multiplicity) pairs. chi(u) counts occurrences of u
// over all segment positions, including each segment's start; the
// distribution formulas apply their start-of-trace correction at the
// bundle-path level.
struct Bundle {
    std::vector<std::pair<Segment, std::int64_t>> segments;
    Segment shadow;
    std::int64_t size = 0;                              // |B| with multiplicity
    std::vector<std::pair<PointId, std::int64_t>> chi;  // per-point occurrence counts, sorted
    std::int64_t chi_total = 0;

    static Bundle make(std::vector<std::pair<Segment, std::int64_t>> segments);

    std::int64_t chi_at(PointId u) const {
        auto it = std::lower_bound(chi.begin(), chi.end(), u,
                                   [](const auto& p, PointId x) { return p.first < x; });
        return it != chi.end() && it->first == u ? it->second : 0;
    }
    PointId start() const { return shadow.front(); }
    PointId end() const { return shadow.back(); }
};

// All |B||B'| concatenations of two non-overlapping bundles.
Bundle combine(const Bundle& a, const Bundle& b);

// A bundle whose per-cell occurrence averages equal the requested slowness:
// integer slowness yields one segment per shadow, fractional slowness mixes
// floor/ceil repeat counts over lcm-of-denominators segments.
Bundle bundle_from_slowness(const Segment& shadow, const std::vector<Rational>& slowness,
                            std::int64_t denominator_cap = 4096);

struct BundlePath {
    std::vector<BundleId> bundles;
};

struct Route {
    std::vector<std::pair<BundlePath, std::int64_t>> paths;  // multiset
    PointId start = 0;
    PointId end = 0;
    std::int64_t size = 0;  // |R| with multiplicity
};

class RouteSystem {
  public:
    static RouteSystem make(PointId point_count, std::vector<Bundle> bundles,
                            std::vector<std::pair<Route, std::int64_t>> routes);

    PointId point_count() const { return point_count_; }
    const std::vector<Bundle>& bundles() const { return bundles_; }
    const Bundle& bundle(BundleId b) const { return bundles_[b]; }
    const std::vector<std::pair<Route, std::int64_t>>& routes() const { return routes_; }
    std::int64_t route_total() const { return route_total_; }
    std::int64_t routes_from(PointId u) const { return routes_from_[u]; }

    PointId path_start(const BundlePath& p) const { return bundles_[p.bundles.front()].start(); }
    PointId path_end(const BundlePath& p) const { return bundles_[p.bundles.back()].end(); }

  private:
    PointId point_count_ = 0;
    std::vector<Bundle> bundles_;
    std::vector<std::pair<Route, std::int64_t>> routes_;
    std::int64_t route_total_ = 0;
    std::vector<std::int64_t> routes_from_;
};

// |[[P]]| = product of member bundle sizes.
std::int64_t bundle_path_size(const RouteSystem& rs, const BundlePath& p);

// The derived bundle [[P]] as (trace, multiplicity) pairs, canonically ordered.
std::vector<std::pair<Segment, std::int64_t>> expand_bundle_path(const RouteSystem& rs,
                                                                 const BundlePath& p);

bool is_balanced_rs(const RouteSystem& rs);

// Strong connectivity of the induced model, decided on the route graph
// without expanding traces.
bool is_strongly_connected_rs(const RouteSystem& rs);

// -- induced MTM ---------------------------------------------------------

template <class S>
MTModel<S> expand_route_system(const RouteSystem& rs, std::int64_t max_traces = 2000000);

// Kernel of the induced model, built route-wise: K(u,v) = |R_{u->v}| / |R_u|.
template <class S>
KernelChain<S> route_kernel(const RouteSystem& rs);

// -- closed-form stationary distributions --------------------------------

template <class S>
S lambda_balanced(const RouteSystem& rs);       // normalizer of the balanced formulas
template <class S>
S lambda_balanced_full(const RouteSystem& rs);  // full-count variant, linear in slowness

template <class S>
std::vector<S> spatial_balanced(const RouteSystem& rs);

template <class S>
DestinationDistribution<S> dest_balanced(const RouteSystem& rs, PointId u);

template <class S>
S lambda_general(const RouteSystem& rs, const std::vector<S>& sigma);

template <class S>
std::vector<S> spatial_general(const RouteSystem& rs, const std::vector<S>& sigma);

template <class S>
DestinationDistribution<S> dest_general(const RouteSystem& rs, const std::vector<S>& sigma,
                                        PointId u);

// ------------------------------------------------------------------------

namespace detail {

// Per-bundle route weights: W_B = sum over routes of mult * #_{R,B} / |R|,
// optionally weighted per start point and restricted by end point.
template <class S>
std::vector<S> bundle_weights(const RouteSystem& rs, const std::vector<S>* start_weight,
                              const KernelChain<S>* kernel, PointId end_filter = -1) {
    std::vector<S> w(rs.bundles().size(), S(0));
    for (const auto& [route, mult] : rs.routes()) {
        if (end_filter >= 0 && route.end != end_filter) continue;
        S factor(mult);
        if (start_weight) {
            int idx = kernel->index_of_point[route.start];
            factor = factor * (*start_weight)[idx] / S(rs.routes_from(route.start));
        }
        for (const auto& [path, pmult] : route.paths) {
            S path_factor = factor * S(pmult) / S(route.size);
            for (BundleId b : path.bundles) w[b] += path_factor;
        }
    }
    return w;
}

// Start-of-trace correction: one occurrence of the path start point per
// bundle-path, with the same route weighting as bundle_weights.
template <class S>
std::vector<S> start_corrections(const RouteSystem& rs, const std::vector<S>* start_weight,
                                 const KernelChain<S>* kernel, PointId end_filter = -1) {
    std::vector<S> c(rs.point_count(), S(0));
    for (const auto& [route, mult] : rs.routes()) {
        if (end_filter >= 0 && route.end != end_filter) continue;
        S factor(mult);
        if (start_weight) {
            int idx = kernel->index_of_point[route.start];
            factor = factor * (*start_weight)[idx] / S(rs.routes_from(route.start));
        }
        c[route.start] += factor;
    }
    return c;
}

template <class S>
std::vector<S> spatial_from_weights(const RouteSystem& rs, const std::vector<S>& w,
                                    const std::vector<S>& corr, S* lambda_out) {
    std::vector<S> mass(rs.point_count(), S(0));
    for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b) {
        const Bundle& bundle = rs.bundle(b);
        if (num::is_zero(w[b])) continue;
        for (const auto& [u, count] : bundle.chi) mass[u] += S(count) * w[b] / S(bundle.size);
    }
    S total(0);
    for (PointId u = 0; u < rs.point_count(); ++u) {
        mass[u] -= corr[u];
        total += mass[u];
    }
    if (lambda_out) *lambda_out = total;
    for (S& v : mass) v /= total;
    return mass;
}

template <class S>
void require_balanced_connected(const RouteSystem& rs) {
    if (!is_balanced_rs(rs)) fail(Errc::not_balanced, "route in/out counts differ");
    if (!is_strongly_connected_rs(rs))
        fail(Errc::not_strongly_connected, "route graph is not strongly connected");
}

template <class S>
void require_stationary_sigma(const RouteSystem& rs, const KernelChain<S>& k,
                              const std::vector<S>& sigma) {
    StationaryVector<S> sv{StationaryKind::kernel, sigma};
    if (!detail::sigma_is_stationary(k, sigma, 1e-9))
        fail(Errc::not_stationary_input, "sigma is not stationary for the route kernel");
    (void)sv;
}

}  // namespace detail

template <class S>
MTModel<S> expand_route_system(const RouteSystem& rs, std::int64_t max_traces) {
    std::map<Segment, S> psi;
    for (const auto& [route, mult] : rs.routes()) {
        S route_factor = S(mult) / S(rs.routes_from(route.start));
        for (const auto& [path, pmult] : route.paths) {
            std::int64_t size = bundle_path_size(rs, path);
            S path_factor = route_factor * S(pmult) / (S(route.size) * S(size));
            for (const auto& [trace, tmult] : expand_bundle_path(rs, path)) {
                if (static_cast<std::int64_t>(psi.size()) > max_traces)
                    fail(Errc::invalid_argument, "route system expansion exceeds trace limit");
                psi[trace] += S(tmult) * path_factor;
            }
        }
    }
    std::vector<Point> points(rs.point_count());
    for (PointId i = 0; i < rs.point_count(); ++i) points[i].id = i;
    std::vector<Trace> traces;
    std::vector<S> prob;
    traces.reserve(psi.size());
    for (auto& [seq, p] : psi) {
        if (seq.size() < 2) fail(Errc::invalid_trace, "route system produced a 1-point trace");
        traces.push_back(Trace{seq});
        prob.push_back(p);
    }
    return make_model(TraceSet::build(std::move(points), std::move(traces)), std::move(prob));
}

template <class S>
KernelChain<S> route_kernel(const RouteSystem& rs) {
    KernelChain<S> k;
    std::vector<char> is_start(rs.point_count(), 0);
    for (const auto& [route, mult] : rs.routes()) is_start[route.start] = 1;
    k.index_of_point.assign(rs.point_count(), -1);
    for (PointId u = 0; u < rs.point_count(); ++u)
        if (is_start[u]) {
            k.index_of_point[u] = static_cast<int>(k.states.size());
            k.states.push_back(u);
        }
    std::vector<std::map<int, S>> rows(k.states.size());
    for (const auto& [route, mult] : rs.routes()) {
        int u = k.index_of_point[route.start];
        int v = k.index_of_point[route.end];
        if (v < 0) fail(Errc::not_endless, "point " + std::to_string(route.end));
        rows[u][v] += S(mult) / S(rs.routes_from(route.start));
    }
    k.row_ptr.assign(k.states.size() + 1, 0);
    for (std::size_t u = 0; u < rows.size(); ++u) k.row_ptr[u + 1] = k.row_ptr[u] + rows[u].size();
    k.col.resize(k.row_ptr.back());
    k.val.resize(k.row_ptr.back());
    std::size_t e = 0;
    for (auto& row : rows)
        for (auto& [v, p] : row) {
            k.col[e] = v;
            k.val[e] = p;
            ++e;
        }
    return k;
}

template <class S>
S lambda_balanced(const RouteSystem& rs) {
    auto w = detail::bundle_weights<S>(rs, nullptr, nullptr);
    S lambda(0);
    for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
        lambda += S(rs.bundle(b).chi_total) * w[b] / S(rs.bundle(b).size);
    return lambda - S(rs.route_total());
}

template <class S>
S lambda_balanced_full(const RouteSystem& rs) {
    auto w = detail::bundle_weights<S>(rs, nullptr, nullptr);
    S lambda(0);
    for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
        lambda += S(rs.bundle(b).chi_total) * w[b] / S(rs.bundle(b).size);
    return lambda;
}

template <class S>
std::vector<S> spatial_balanced(const RouteSystem& rs) {
    detail::require_balanced_connected<S>(rs);
    auto w = detail::bundle_weights<S>(rs, nullptr, nullptr);
    std::vector<S> corr(rs.point_count(), S(0));
    for (const auto& [route, mult] : rs.routes()) corr[route.start] += S(mult);
    return detail::spatial_from_weights(rs, w, corr, static_cast<S*>(nullptr));
}

template <class S>
DestinationDistribution<S> dest_balanced(const RouteSystem& rs, PointId u) {
    detail::require_balanced_connected<S>(rs);
    auto w_all = detail::bundle_weights<S>(rs, nullptr, nullptr);
    std::vector<S> corr_all(rs.point_count(), S(0));
    for (const auto& [route, mult] : rs.routes()) corr_all[route.start] += S(mult);

    DestinationDistribution<S> d;
    d.at = u;
    d.prob.assign(rs.point_count(), S(0));
    S mass(0);
    {
        // unnormalized occupancy at u
        for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
            mass += S(rs.bundle(b).chi_at(u)) * w_all[b] / S(rs.bundle(b).size);
        mass -= corr_all[u];
    }
    if (num::is_zero(mass)) fail(Errc::zero_spatial_mass, "point " + std::to_string(u));

    std::vector<char> is_end(rs.point_count(), 0);
    for (const auto& [route, mult] : rs.routes()) is_end[route.end] = 1;
    for (PointId v = 0; v < rs.point_count(); ++v) {
        if (!is_end[v]) continue;
        auto w = detail::bundle_weights<S>(rs, nullptr, nullptr, v);
        S num(0);
        for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
            num += S(rs.bundle(b).chi_at(u)) * w[b] / S(rs.bundle(b).size);
        for (const auto& [route, mult] : rs.routes())
            if (route.start == u && route.end == v) num -= S(mult);
        d.prob[v] = num / mass;
    }
    return d;
}

template <class S>
S lambda_general(const RouteSystem& rs, const std::vector<S>& sigma) {
    auto k = route_kernel<S>(rs);
    detail::require_stationary_sigma(rs, k, sigma);
    auto w = detail::bundle_weights<S>(rs, &sigma, &k);
    S lambda(0);
    for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
        lambda += S(rs.bundle(b).chi_total) * w[b] / S(rs.bundle(b).size);
    return lambda - S(1);
}

template <class S>
std::vector<S> spatial_general(const RouteSystem& rs, const std::vector<S>& sigma) {
    if (!is_strongly_connected_rs(rs))
        fail(Errc::not_strongly_connected, "route graph is not strongly connected");
    auto k = route_kernel<S>(rs);
    detail::require_stationary_sigma(rs, k, sigma);
    auto w = detail::bundle_weights<S>(rs, &sigma, &k);
    auto corr = detail::start_corrections<S>(rs, &sigma, &k);
    return detail::spatial_from_weights(rs, w, corr, static_cast<S*>(nullptr));
}

template <class S>
DestinationDistribution<S> dest_general(const RouteSystem& rs, const std::vector<S>& sigma,
                                        PointId u) {
    if (!is_strongly_connected_rs(rs))
        fail(Errc::not_strongly_connected, "route graph is not strongly connected");
    auto k = route_kernel<S>(rs);
    detail::require_stationary_sigma(rs, k, sigma);
    auto w_all = detail::bundle_weights<S>(rs, &sigma, &k);
    auto corr_all = detail::start_corrections<S>(rs, &sigma, &k);

    DestinationDistribution<S> d;
    d.at = u;
    d.prob.assign(rs.point_count(), S(0));
    S mass(0);
    for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
        mass += S(rs.bundle(b).chi_at(u)) * w_all[b] / S(rs.bundle(b).size);
    mass -= corr_all[u];
    if (num::is_zero(mass)) fail(Errc::zero_spatial_mass, "point " + std::to_string(u));

    std::vector<char> is_end(rs.point_count(), 0);
    for (const auto& [route, mult] : rs.routes()) is_end[route.end] = 1;
    for (PointId v = 0; v < rs.point_count(); ++v) {
        if (!is_end[v]) continue;
        auto w = detail::bundle_weights<S>(rs, &sigma, &k, v);
        auto corr = detail::start_corrections<S>(rs, &sigma, &k, v);
        S num(0);
        for (BundleId b = 0; b < static_cast<BundleId>(rs.bundles().size()); ++b)
            num += S(rs.bundle(b).chi_at(u)) * w[b] / S(rs.bundle(b).size);
        num -= corr[u];
        d.prob[v] = num / mass;
    }
    return d;
}

}  // namespace mtm
