#include "mtm/trace.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace mtm {

TraceSet TraceSet::build(std::vector<Trace> traces) {
    PointId max_id = -1;
    for (const auto& t : traces)
        for (PointId p : t.points) max_id = std::max(max_id, p);
    std::vector<Point> points(static_cast<std::size_t>(max_id + 1));
    for (PointId i = 0; i <= max_id; ++i) points[i].id = i;
    return build(std::move(points), std::move(traces));
}

TraceSet TraceSet::build(std::vector<Point> points, std::vector<Trace> traces) {
    if (traces.empty()) fail(Errc::empty_set, "no traces");

    TraceSet ts;
    ts.point_count_ = static_cast<PointId>(points.size());
    for (PointId i = 0; i < ts.point_count_; ++i) {
        if (points[i].id != i) fail(Errc::invalid_argument, "point ids must be dense from 0");
    }
    std::size_t with_coords = 0;
    for (const auto& p : points)
        if (p.coords) ++with_coords;
    if (with_coords != 0 && with_coords != points.size())
        fail(Errc::invalid_argument, "either all points carry coords or none");
    ts.has_coords_ = with_coords == points.size() && !points.empty();
    ts.points_ = std::move(points);

    std::set<Trace> seen;
    for (const auto& t : traces) {
        if (t.size() < 2) fail(Errc::invalid_trace, "trace shorter than 2 points");
        for (PointId p : t.points)
            if (p < 0 || p >= ts.point_count_)
                fail(Errc::invalid_argument, "trace references unknown point " + std::to_string(p));
        if (!seen.insert(t).second) fail(Errc::duplicate_trace, "trace set is a set");
    }
    ts.traces_ = std::move(traces);

    ts.out_.assign(ts.point_count_, {});
    ts.in_.assign(ts.point_count_, {});
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        const Trace& tr = ts.traces_[t];
        ts.out_[tr.start()].push_back(t);
        ts.in_[tr.end()].push_back(t);
        ts.trips_[trip_key(tr.start(), tr.end())].push_back(t);
    }
    for (PointId u = 0; u < ts.point_count_; ++u)
        if (!ts.out_[u].empty()) ts.start_points_.push_back(u);

    for (const auto& tr : ts.traces_) {
        if (ts.out_[tr.end()].empty())
            fail(Errc::not_endless, "point " + std::to_string(tr.end()));
    }

    ts.state_offset_.resize(ts.traces_.size());
    StateId off = 0;
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        ts.state_offset_[t] = off;
        off += static_cast<StateId>(ts.traces_[t].size()) - 1;
    }
    ts.state_count_ = off;
    return ts;
}

const std::vector<TraceId>& TraceSet::trips(PointId u, PointId v) const {
    static const std::vector<TraceId> empty;
    auto it = trips_.find(trip_key(u, v));
    return it == trips_.end() ? empty : it->second;
}

ChainState TraceSet::state_at(StateId id) const {
    auto it = std::upper_bound(state_offset_.begin(), state_offset_.end(), id);
    TraceId t = static_cast<TraceId>(it - state_offset_.begin()) - 1;
    return ChainState{t, static_cast<std::int32_t>(id - state_offset_[t] + 1)};
}

std::int64_t TraceSet::occurrences(TraceId t, PointId u) const {
    const Trace& tr = traces_[t];
    std::int64_t n = 0;
    for (std::size_t i = 1; i < tr.size(); ++i)
        if (tr.points[i] == u) ++n;
    return n;
}

bool is_simple(const TraceSet& ts) {
    std::vector<std::int32_t> count(ts.point_count(), 0);
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        const Trace& tr = ts.trace(t);
        bool ok = true;
        for (std::size_t i = 1; i < tr.size(); ++i) {
            if (++count[tr.points[i]] > 1) ok = false;
        }
        for (std::size_t i = 1; i < tr.size(); ++i) count[tr.points[i]] = 0;
        if (!ok) return false;
    }
    return true;
}

std::int64_t traces_visiting(const TraceSet& ts, PointId u) {
    std::int64_t n = 0;
    for (TraceId t = 0; t < ts.trace_count(); ++t)
        if (ts.occurrences(t, u) >= 1) ++n;
    return n;
}

}  // namespace mtm
