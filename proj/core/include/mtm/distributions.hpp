#pragma once

#include <string>
#include <vector>

#include "mtm/chain.hpp"
#include "mtm/model.hpp"

namespace mtm {

// Destination distribution conditioned on occupying point `at`.
template <class S>
struct DestinationDistribution {
    PointId at = 0;
    std::vector<S> prob;  // per destination point id, zero elsewhere
};

// Stationary spatial distribution s(u): occupancy mass per point under a
// full-chain stationary pi.
template <class S>
std::vector<S> spatial(const MTModel<S>& m, const StationaryVector<S>& pi) {
    if (pi.kind != StationaryKind::full || !pi_is_stationary(m, pi.values))
        fail(Errc::not_stationary_input, "pi is not stationary for the full chain");
    const TraceSet& ts = m.ts();
    std::vector<S> s(ts.point_count(), S(0));
    for (StateId id = 0; id < ts.state_count(); ++id)
        s[ts.position_of(ts.state_at(id))] += pi.values[id];
    return s;
}

template <class S>
DestinationDistribution<S> destination(const MTModel<S>& m, const StationaryVector<S>& pi,
                                       PointId at) {
    if (pi.kind != StationaryKind::full || !pi_is_stationary(m, pi.values))
        fail(Errc::not_stationary_input, "pi is not stationary for the full chain");
    const TraceSet& ts = m.ts();
    DestinationDistribution<S> d;
    d.at = at;
    d.prob.assign(ts.point_count(), S(0));
    S mass(0);
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        const Trace& tr = ts.trace(t);
        std::int64_t occ = ts.occurrences(t, at);
        if (occ == 0) continue;
        S w = S(occ) * pi.values[ts.state_id({t, 1})];
        d.prob[tr.end()] += w;
        mass += w;
    }
    if (num::is_zero(mass)) fail(Errc::zero_spatial_mass, "point " + std::to_string(at));
    for (S& v : d.prob) v /= mass;
    return d;
}

// Shortcut for simple models with uniform pi: s(u) = |T_u| / |S(T)|.
template <class S>
std::vector<S> spatial_simple_uniform(const TraceSet& ts) {
    std::vector<S> s(ts.point_count());
    for (PointId u = 0; u < ts.point_count(); ++u)
        s[u] = num::traits<S>::from_ratio(traces_visiting(ts, u), ts.state_count());
    return s;
}

// Shortcut for simple models with uniform pi: d_u(v) = Gamma_u(v) / Gamma_u.
template <class S>
DestinationDistribution<S> destination_simple_uniform(const TraceSet& ts, PointId at) {
    DestinationDistribution<S> d;
    d.at = at;
    d.prob.assign(ts.point_count(), S(0));
    std::int64_t gamma = 0;
    std::vector<std::int64_t> gamma_v(ts.point_count(), 0);
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        if (ts.occurrences(t, at) >= 1) {
            ++gamma;
            ++gamma_v[ts.trace(t).end()];
        }
    }
    if (gamma == 0) fail(Errc::zero_spatial_mass, "point " + std::to_string(at));
    for (PointId v = 0; v < ts.point_count(); ++v)
        d.prob[v] = num::traits<S>::from_ratio(gamma_v[v], gamma);
    return d;
}

}  // namespace mtm
