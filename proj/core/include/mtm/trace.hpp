#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mtm/errors.hpp"

namespace mtm {

using PointId = std::int32_t;
using TraceId = std::int32_t;
using StateId = std::int64_t;

struct GridCoord {
    int i = 0;
    int j = 0;
    bool operator==(const GridCoord&) const = default;
};

struct Point {
    PointId id = 0;
    std::optional<GridCoord> coords;
};

// A trace is a finite point sequence of length >= 2; index i addresses T(i)
// for 0 <= i <= |T|-1. Repeated points encode slower motion.
struct Trace {
    std::vector<PointId> points;

    std::size_t size() const { return points.size(); }
    PointId operator()(std::size_t i) const { return points[i]; }
    PointId start() const { return points.front(); }
    PointId end() const { return points.back(); }
    bool operator==(const Trace&) const = default;
    bool operator<(const Trace& other) const { return points < other.points; }
};

// A chain state <T, i> with 1 <= i <= |T|-1.
struct ChainState {
    TraceId trace = 0;
    std::int32_t index = 1;
    bool operator==(const ChainState&) const = default;
};

// An endless set of traces with its start/end/trip indices and the state
// space enumeration of the induced chain.
class TraceSet {
  public:
    static TraceSet build(std::vector<Trace> traces);
    static TraceSet build(std::vector<Point> points, std::vector<Trace> traces);

    PointId point_count() const { return point_count_; }
    const std::vector<Point>& points() const { return points_; }
    bool has_coords() const { return has_coords_; }

    TraceId trace_count() const { return static_cast<TraceId>(traces_.size()); }
    const Trace& trace(TraceId t) const { return traces_[t]; }
    const std::vector<Trace>& traces() const { return traces_; }

    const std::vector<TraceId>& out(PointId u) const { return out_[u]; }
    const std::vector<TraceId>& in(PointId u) const { return in_[u]; }
    const std::vector<TraceId>& trips(PointId u, PointId v) const;

    // Points u with Out(u) nonempty, ascending.
    const std::vector<PointId>& start_points() const { return start_points_; }

    StateId state_count() const { return state_count_; }
    StateId state_id(const ChainState& s) const { return state_offset_[s.trace] + s.index - 1; }
    ChainState state_at(StateId id) const;
    PointId position_of(const ChainState& s) const { return traces_[s.trace].points[s.index]; }

    // Occurrences of u in T at counted indices 1..|T|-1 (start excluded,
    // end included).
    std::int64_t occurrences(TraceId t, PointId u) const;

  private:
    std::vector<Point> points_;
    PointId point_count_ = 0;
    bool has_coords_ = false;
    std::vector<Trace> traces_;
    std::vector<std::vector<TraceId>> out_, in_;
    std::unordered_map<std::uint64_t, std::vector<TraceId>> trips_;
    std::vector<PointId> start_points_;
    std::vector<StateId> state_offset_;
    StateId state_count_ = 0;

    static std::uint64_t trip_key(PointId u, PointId v) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
               static_cast<std::uint32_t>(v);
    }
};

// True iff no trace revisits a counted position (indices 1..|T|-1).
bool is_simple(const TraceSet& ts);

// Number of traces visiting u at a counted index, |T_u|.
std::int64_t traces_visiting(const TraceSet& ts, PointId u);

}  // namespace mtm
