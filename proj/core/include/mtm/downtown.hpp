#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtm/modular.hpp"
#include "mtm/numeric.hpp"

namespace mtm {

// Street grid with (n/2+1) horizontal and vertical streets at even indices
// 0..n. Grid coordinates (i,j): cross-ways at even/even, horizontal blocks
// at even/odd, vertical blocks at odd/even, buildings at odd/odd.
struct DownTownParams {
    int n = 2;                   // last street index, even
    int m = 1;                   // cells per stripe per block
    std::vector<Rational> slk;   // transit slowness by cell index, size m
    Rational wait = 1;           // parking cell slowness
    Rational crc = 1;            // cross-way cell slowness

    static DownTownParams unit(int n, int m);
    void validate() const;
};

enum class DTRole { transit, parking, cross };

struct DTCellInfo {
    DTRole role = DTRole::cross;
    int i = 0, j = 0;      // block coords for block cells, cross coords otherwise
    int stripe = 0;        // +1 / -1 for block cells, 0 for cross cells
    int k = 0;             // 1..m stripe index, or 1..12 cross position
    bool horizontal = true;
    int gx = 0, gy = 0;    // global lattice cell
};

enum class DTBundleKind { transit, start, end, cross_straight, cross_turn };

struct DTBundleInfo {
    DTBundleKind kind = DTBundleKind::transit;
    int i = 0, j = 0;
    int k = 0;             // parking index for start/end bundles
    bool horizontal = true;
    int s1 = +1;           // transit/straight: direction; start/end: parking stripe;
                           // turn: in-direction
    int s2 = +1;           // start: out-direction; end: in-direction; turn: out-direction

    std::string name() const;
};

// The generated route system plus the cell and bundle metadata needed for
// exports and for checking the closed-form counts.
struct DownTown {
    DownTownParams params;
    RouteSystem rs;
    std::vector<DTCellInfo> cells;           // per point id
    std::vector<DTBundleInfo> bundle_info;   // per bundle id
    std::vector<PointId> parking_cells;
    int grid_side = 0;

    std::int64_t route_count() const { return rs.route_total(); }
};

// Builds bundles from the slowness profile and one single-path route per
// ordered pair of parking cells in different blocks, following the paper's
// driving directions.
DownTown build_downtown(const DownTownParams& params);

// Closed-form bundle-path counts (the sigma-B formulas), as claimed.
Rational dt_sigma_closed(const DownTownParams& p, const DTBundleInfo& b);

// Exhaustive per-bundle path counts walked from the generated routes.
std::vector<std::int64_t> dt_sigma_walked(const DownTown& dt);

// Closed-form cell spatial probability. Covers horizontal positive-stripe
// transit cells with i not in {0,n}, all parking cells, and the interior
// cross lane cell (+,-). Other cells raise BoundaryCellNotCovered.
Rational downtown_closed_spatial(const DownTown& dt, PointId cell);
bool downtown_closed_covers(const DownTown& dt, PointId cell);

// Normalizer of the printed closed forms, Lambda_b of the route system in
// the full-count convention; scales linearly with slowness.
Rational downtown_lambda_full(const DownTown& dt);

// Chain-exact normalizer, |R| times the mean stationary trace length.
Rational downtown_lambda_exact(const DownTown& dt);

struct DTErrataEntry {
    std::string what;     // formula id and coordinates
    std::string closed;   // formula value
    std::string actual;   // walked count or pipeline value
    double rel_dev = 0;
};

struct DTErrataReport {
    std::int64_t sigma_checked = 0;
    std::int64_t sigma_equal = 0;
    std::vector<DTErrataEntry> sigma_mismatches;
    std::int64_t cells_checked = 0;
    std::int64_t cells_equal = 0;
    std::vector<DTErrataEntry> cell_mismatches;
    std::string lambda_full;
    std::string lambda_exact;
};

// Compares every sigma-B formula against the walked counts and every
// covered closed-form cell value against the exact balanced pipeline.
DTErrataReport downtown_errata(const DownTown& dt);

std::string downtown_errata_json(const DownTown& dt, const DTErrataReport& report);

}  // namespace mtm
