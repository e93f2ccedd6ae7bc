#include "mtm/manhattan.hpp"

#include <cmath>
#include <string>

namespace mtm {

namespace {

void check_n(int n) {
    if (n < 2) fail(Errc::invalid_argument, "n must be >= 2");
    if (n > 4000) fail(Errc::invalid_argument, "closed forms use 64-bit counts, n <= 4000");
}

void check_cell(int n, GridCoord c) {
    if (c.i < 0 || c.i >= n || c.j < 0 || c.j >= n)
        fail(Errc::invalid_argument, "cell out of range");
}

}  // namespace

std::vector<PointId> manhattan_path(int n, int i0, int j0, int i1, int j1,
                                    bool horizontal_first) {
    std::vector<PointId> seq;
    int di = i1 > i0 ? 1 : -1;
    int dj = j1 > j0 ? 1 : -1;
    if (horizontal_first) {
        for (int i = i0; i != i1; i += di) seq.push_back(manhattan_cell(n, i, j0));
        for (int j = j0; j != j1; j += dj) seq.push_back(manhattan_cell(n, i1, j));
    } else {
        for (int j = j0; j != j1; j += dj) seq.push_back(manhattan_cell(n, i0, j));
        for (int i = i0; i != i1; i += di) seq.push_back(manhattan_cell(n, i, j1));
    }
    seq.push_back(manhattan_cell(n, i1, j1));
    return seq;
}

std::vector<Trace> manhattan_traces(int n) {
    std::vector<Trace> traces;
    traces.reserve(static_cast<std::size_t>(2) * n * n * n);
    for (int i0 = 0; i0 < n; ++i0)
        for (int j0 = 0; j0 < n; ++j0)
            for (int i1 = 0; i1 < n; ++i1)
                for (int j1 = 0; j1 < n; ++j1) {
                    if (i0 == i1 && j0 == j1) continue;
                    traces.push_back(Trace{manhattan_path(n, i0, j0, i1, j1, true)});
                    if (i0 != i1 && j0 != j1)
                        traces.push_back(Trace{manhattan_path(n, i0, j0, i1, j1, false)});
                }
    return traces;
}

std::int64_t manhattan_eta(int n, GridCoord from, GridCoord at) {
    check_n(n);
    check_cell(n, from);
    check_cell(n, at);
    const std::int64_t N = n;
    const std::int64_t i = at.i, j = at.j;
    if (from.i < at.i && from.j < at.j) return 2 * N - i - j;
    if (from.i > at.i && from.j > at.j) return i + j + 2;
    if (from.i < at.i && from.j > at.j) return N + 1 - i + j;
    if (from.i > at.i && from.j < at.j) return N + 1 + i - j;
    if (from.i == at.i && from.j < at.j) return N * N - N * j;
    if (from.i < at.i && from.j == at.j) return N * N - N * i;
    if (from.i == at.i && from.j > at.j) return N + N * j;
    if (from.i > at.i && from.j == at.j) return N + N * i;
    return 2 * N * N - 2 * N + 1;  // from == at
}

std::int64_t manhattan_gamma(int n, GridCoord at) {
    check_n(n);
    check_cell(n, at);
    const std::int64_t N = n;
    const std::int64_t i = at.i, j = at.j;
    return (4 * N * N - 6 * N + 2) * (i + j) - (4 * N - 2) * (i * i + j * j) + 6 * N * N -
           8 * N + 3;
}

std::int64_t manhattan_state_count(int n) {
    check_n(n);
    const std::int64_t N = n;
    return (N * N * N * N - N * N) * (4 * N - 2) / 3;
}

std::int64_t manhattan_out_degree(int n) {
    const std::int64_t N = n;
    return 2 * N * (N - 1);
}

std::int64_t manhattan_trace_count(int n) {
    const std::int64_t N = n;
    return N * N * manhattan_out_degree(n);
}

std::int64_t manhattan_visits_exact(int n, GridCoord at) {
    return manhattan_gamma(n, at) - 1 - manhattan_out_degree(n);
}

Rational manhattan_spatial_closed(int n, GridCoord at) {
    return num::ratio(3 * manhattan_gamma(n, at),
                      (static_cast<std::int64_t>(n) * n * n * n - static_cast<std::int64_t>(n) * n) *
                          (4 * static_cast<std::int64_t>(n) - 2));
}

Rational manhattan_spatial_exact(int n, GridCoord at) {
    return num::ratio(manhattan_visits_exact(n, at), manhattan_state_count(n));
}

Rational manhattan_dest_closed(int n, GridCoord at, GridCoord dest) {
    return num::ratio(manhattan_eta(n, dest, at), manhattan_gamma(n, at));
}

double density_spatial(double length, double x, double y) {
    const double l3 = length * length * length;
    return 3 * (x + y) / l3 - 3 * (x * x + y * y) / (l3 * length);
}

namespace {

double quadrant_denominator(double length, double x0, double y0) {
    return length * (x0 + y0) - (x0 * x0 + y0 * y0);
}

void check_conditioning(double length, double x0, double y0) {
    if (quadrant_denominator(length, x0, y0) == 0)
        fail(Errc::degenerate_conditioning, "conditioning point is a degenerate corner");
}

}  // namespace

DestDensity density_dest(double length, double x0, double y0, double x, double y) {
    check_conditioning(length, x0, y0);
    const double d = 4 * length * quadrant_denominator(length, x0, y0);
    DestDensity r;
    if (x == x0 || y == y0) {
        r.on_cross = true;
        if (x == x0 && y == y0) r.side = CrossSide::center;
        else if (x == x0) r.side = y < y0 ? CrossSide::south : CrossSide::north;
        else r.side = x < x0 ? CrossSide::west : CrossSide::east;
        return r;
    }
    if (x < x0 && y < y0) r.density = (2 * length - x0 - y0) / d;
    else if (x > x0 && y > y0) r.density = (x0 + y0) / d;
    else if (x < x0 && y > y0) r.density = (length - x0 + y0) / d;
    else r.density = (length + x0 - y0) / d;
    return r;
}

CrossProbabilities cross_probabilities(double length, double x0, double y0) {
    if (x0 <= 0 || x0 >= length || y0 <= 0 || y0 >= length)
        fail(Errc::degenerate_conditioning, "conditioning point must be interior");
    const double d = 4 * quadrant_denominator(length, x0, y0);
    CrossProbabilities r;
    r.south = r.north = y0 * (length - y0) / d;
    r.west = r.east = x0 * (length - x0) / d;
    r.seg_south = 1 / y0;
    r.seg_west = 1 / x0;
    r.seg_north = 1 / (length - y0);
    r.seg_east = 1 / (length - x0);
    return r;
}

}  // namespace mtm
