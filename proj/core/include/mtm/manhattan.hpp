#pragma once

#include <cstdint>
#include <vector>

#include "mtm/model.hpp"
#include "mtm/numeric.hpp"

namespace mtm {

// N x N cell grid; N = ceil(L / eps). Cell (i,j) has point id i*N + j.
struct ManhattanParams {
    int n = 2;          // grid side in cells
    double length = 1;  // physical side length L

    double eps() const { return length / n; }
};

// Path-counting conventions. A is the closed-form convention: visits are
// counted at every index including the start, and each cell carries one
// degenerate self-path. B is the chain-exact convention: states exist at
// indices 1..|T|-1 only, and there are no self-paths.
enum class Convention { A, B };

inline PointId manhattan_cell(int n, int i, int j) { return static_cast<PointId>(i * n + j); }

// The one-corner path model over the n x n grid with the uniform rule:
// two paths per non-collinear ordered cell pair, one per collinear pair.
template <class S>
MTModel<S> build_manhattan(int n);

// Point sequence of the one-corner path, horizontal segment first when
// horizontal_first, from (i0,j0) to (i1,j1).
std::vector<PointId> manhattan_path(int n, int i0, int j0, int i1, int j1, bool horizontal_first);

std::vector<Trace> manhattan_traces(int n);

// Closed-form count of convention-A paths starting at `from` that visit
// `at` (nine-case formula).
std::int64_t manhattan_eta(int n, GridCoord from, GridCoord at);

// Total convention-A visit count at a cell, summed over all start cells.
std::int64_t manhattan_gamma(int n, GridCoord at);

// |S(T)| = (N^4 - N^2)(4N - 2) / 3
std::int64_t manhattan_state_count(int n);

// |Out(u)| = 2N(N-1), the same for every cell.
std::int64_t manhattan_out_degree(int n);

std::int64_t manhattan_trace_count(int n);

// Chain-exact visit count at a cell: convention-A total minus the start
// visits and the self-path. Verified against enumeration in the tests.
std::int64_t manhattan_visits_exact(int n, GridCoord at);

// Convention-A closed-form spatial value 3*Gamma / ((N^4-N^2)(4N-2)).
// Not exactly normalized at finite N; the excess is (|T| + N^2)/|S|.
Rational manhattan_spatial_closed(int n, GridCoord at);

// Chain-exact spatial value |T_u| / |S|.
Rational manhattan_spatial_exact(int n, GridCoord at);

// Convention-A closed-form destination probability eta(dest, at) / Gamma(at).
Rational manhattan_dest_closed(int n, GridCoord at, GridCoord dest);

// Continuum limits ------------------------------------------------------

// Spatial density s(x,y) = 3(x+y)/L^3 - 3(x^2+y^2)/L^4 on [0,L]^2.
double density_spatial(double length, double x, double y);

enum class CrossSide { south, west, north, east, center };

struct DestDensity {
    bool on_cross = false;
    double density = 0;       // quadrant constant when not on the cross
    CrossSide side = CrossSide::center;
};

// Destination density conditioned on (x0,y0): a constant per open quadrant,
// a Cross marker on x=x0 or y=y0 where the density is infinite.
DestDensity density_dest(double length, double x0, double y0, double x, double y);

struct CrossProbabilities {
    double south = 0, west = 0, north = 0, east = 0;
    // conditional per-segment densities; uniform along each segment
    double seg_south = 0, seg_west = 0, seg_north = 0, seg_east = 0;

    double total() const { return south + west + north + east; }
};

// Mass of the four cross segments; totals 1/2 for any interior point.
CrossProbabilities cross_probabilities(double length, double x0, double y0);

template <class S>
MTModel<S> build_manhattan(int n) {
    if (n < 2) fail(Errc::invalid_argument, "manhattan grid needs n >= 2");
    std::vector<Point> points(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PointId id = manhattan_cell(n, i, j);
            points[id] = Point{id, GridCoord{i, j}};
        }
    return uniform_rule<S>(TraceSet::build(std::move(points), manhattan_traces(n)));
}

}  // namespace mtm
