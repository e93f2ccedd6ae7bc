#include "mtm/downtown.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace mtm {

namespace {

int band_origin(const DownTownParams& p, int street) { return (street / 2) * (4 + p.m); }

struct Grid {
    const DownTownParams& p;
    int side;
    std::vector<PointId> id_of;  // gx + side*gy -> point id, -1 for buildings

    PointId at(int gx, int gy) const { return id_of[gx + static_cast<std::size_t>(side) * gy]; }
};

// start/end of the m transit cells of a block, in travel order
struct BlockFrame {
    // horizontal block: rows top..bottom are parking-, transit-, transit+, parking+
    // vertical block: cols west..east are parking+, transit+, transit-, parking-
    int i, j;
    bool horizontal;
    const DownTownParams& p;

    // global cell of the stripe cell with index k (1..m)
    std::pair<int, int> transit(int sign, int k) const {
        if (horizontal) {
            int x0 = band_origin(p, j - 1) + 4;
            int gy = band_origin(p, i) + (sign > 0 ? 2 : 1);
            int gx = sign > 0 ? x0 + k - 1 : x0 + p.m - k;
            return {gx, gy};
        }
        int y0 = band_origin(p, i - 1) + 4;
        int gx = band_origin(p, j) + (sign > 0 ? 1 : 2);
        int gy = sign > 0 ? y0 + k - 1 : y0 + p.m - k;
        return {gx, gy};
    }
    std::pair<int, int> parking(int sign, int k) const {
        if (horizontal) {
            int x0 = band_origin(p, j - 1) + 4;
            int gy = band_origin(p, i) + (sign > 0 ? 3 : 0);
            int gx = sign > 0 ? x0 + k - 1 : x0 + p.m - k;
            return {gx, gy};
        }
        int y0 = band_origin(p, i - 1) + 4;
        int gx = band_origin(p, j) + (sign > 0 ? 0 : 3);
        int gy = sign > 0 ? y0 + k - 1 : y0 + p.m - k;
        return {gx, gy};
    }
};

// cross-way lane rows/cols: r1 = H-, r2 = H+, c1 = V+, c2 = V-
std::pair<int, int> cross_cell(const DownTownParams& p, int i, int j, int r, int c) {
    return {band_origin(p, j) + c, band_origin(p, i) + r};
}

int cross_position(int r, int c) {
    static const int pos[4][4] = {{0, 1, 2, 0}, {3, 4, 5, 6}, {7, 8, 9, 10}, {0, 11, 12, 0}};
    return pos[r][c];
}

struct Builder {
    const DownTownParams& p;
    Grid grid;
    std::vector<DTCellInfo> cells;
    std::vector<Rational> cell_slowness;
    std::vector<Bundle> bundles;
    std::vector<DTBundleInfo> bundle_info;
    std::map<std::tuple<int, int, int, int, int, int>, BundleId> bundle_ids;

    explicit Builder(const DownTownParams& params) : p(params), grid{params, 0, {}} {}

    void classify_cells() {
        const int period = 4 + p.m;
        grid.side = (p.n / 2 + 1) * 4 + (p.n / 2) * p.m;
        grid.id_of.assign(static_cast<std::size_t>(grid.side) * grid.side, -1);
        for (int gy = 0; gy < grid.side; ++gy)
            for (int gx = 0; gx < grid.side; ++gx) {
                int bx = gx / period, ox = gx % period;
                int by = gy / period, oy = gy % period;
                bool band_x = ox < 4, band_y = oy < 4;
                DTCellInfo info;
                info.gx = gx;
                info.gy = gy;
                if (band_x && band_y) {
                    bool corner = (ox == 0 || ox == 3) && (oy == 0 || oy == 3);
                    if (corner) continue;  // building corner of the cross-way
                    info.role = DTRole::cross;
                    info.i = 2 * by;
                    info.j = 2 * bx;
                    info.k = cross_position(oy, ox);
                } else if (band_y && !band_x) {
                    // horizontal block (i = 2*by, j = 2*bx + 1)
                    info.i = 2 * by;
                    info.j = 2 * bx + 1;
                    info.horizontal = true;
                    int pos = ox - 4;
                    switch (oy) {
                        case 0: info.role = DTRole::parking; info.stripe = -1; info.k = p.m - pos; break;
                        case 1: info.role = DTRole::transit; info.stripe = -1; info.k = p.m - pos; break;
                        case 2: info.role = DTRole::transit; info.stripe = +1; info.k = pos + 1; break;
                        default: info.role = DTRole::parking; info.stripe = +1; info.k = pos + 1; break;
                    }
                } else if (band_x && !band_y) {
                    // vertical block (i = 2*by + 1, j = 2*bx)
                    info.i = 2 * by + 1;
                    info.j = 2 * bx;
                    info.horizontal = false;
                    int pos = oy - 4;
                    switch (ox) {
                        case 0: info.role = DTRole::parking; info.stripe = +1; info.k = pos + 1; break;
                        case 1: info.role = DTRole::transit; info.stripe = +1; info.k = pos + 1; break;
                        case 2: info.role = DTRole::transit; info.stripe = -1; info.k = p.m - pos; break;
                        default: info.role = DTRole::parking; info.stripe = -1; info.k = p.m - pos; break;
                    }
                } else {
                    continue;  // building block
                }
                grid.id_of[gx + static_cast<std::size_t>(grid.side) * gy] =
                    static_cast<PointId>(cells.size());
                cells.push_back(info);
            }
        cell_slowness.resize(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            switch (cells[c].role) {
                case DTRole::transit: cell_slowness[c] = p.slk[cells[c].k - 1]; break;
                case DTRole::parking: cell_slowness[c] = p.wait; break;
                case DTRole::cross: cell_slowness[c] = p.crc; break;
            }
        }
    }

    PointId cell_id(std::pair<int, int> gc) const { return grid.at(gc.first, gc.second); }

    BundleId add_bundle(const DTBundleInfo& info, const std::vector<PointId>& shadow) {
        std::vector<Rational> slowness(shadow.size());
        for (std::size_t i = 0; i < shadow.size(); ++i) slowness[i] = cell_slowness[shadow[i]];
        Bundle b = bundle_from_slowness(shadow, slowness);
        BundleId id = static_cast<BundleId>(bundles.size());
        bundles.push_back(std::move(b));
        bundle_info.push_back(info);
        bundle_ids[key(info)] = id;
        return id;
    }

    static std::tuple<int, int, int, int, int, int> key(const DTBundleInfo& b) {
        return {static_cast<int>(b.kind), b.i, b.j, b.k, b.s1 * 2 + (b.horizontal ? 1 : 0), b.s2};
    }

    BundleId find(DTBundleKind kind, int i, int j, int k, bool horizontal, int s1, int s2) const {
        DTBundleInfo q{kind, i, j, k, horizontal, s1, s2};
        auto it = bundle_ids.find(key(q));
        if (it == bundle_ids.end()) fail(Errc::invalid_argument, "missing bundle " + q.name());
        return it->second;
    }

    void block_bundles(int i, int j, bool horizontal) {
        BlockFrame f{i, j, horizontal, p};
        for (int sign : {+1, -1}) {
            std::vector<PointId> shadow;
            for (int k = 1; k <= p.m; ++k) shadow.push_back(cell_id(f.transit(sign, k)));
            add_bundle({DTBundleKind::transit, i, j, 0, horizontal, sign, 0}, shadow);
        }
        for (int k = 1; k <= p.m; ++k) {
            for (int stripe : {+1, -1}) {
                // start bundles: lateral merge at index k, then forward
                {
                    std::vector<PointId> shadow{cell_id(f.parking(stripe, k)),
                                                cell_id(f.transit(stripe, k))};
                    for (int h = k + 1; h <= p.m; ++h) shadow.push_back(cell_id(f.transit(stripe, h)));
                    add_bundle({DTBundleKind::start, i, j, k, horizontal, stripe, stripe}, shadow);
                }
                {
                    std::vector<PointId> shadow{cell_id(f.parking(stripe, k)),
                                                cell_id(f.transit(stripe, k))};
                    for (int h = p.m + 1 - k; h <= p.m; ++h)
                        shadow.push_back(cell_id(f.transit(-stripe, h)));
                    add_bundle({DTBundleKind::start, i, j, k, horizontal, stripe, -stripe}, shadow);
                }
                // end bundles: inbound run, then lateral park at index k
                {
                    std::vector<PointId> shadow;
                    for (int h = 1; h <= k; ++h) shadow.push_back(cell_id(f.transit(stripe, h)));
                    shadow.push_back(cell_id(f.parking(stripe, k)));
                    add_bundle({DTBundleKind::end, i, j, k, horizontal, stripe, stripe}, shadow);
                }
                {
                    std::vector<PointId> shadow;
                    for (int h = 1; h <= p.m + 1 - k; ++h)
                        shadow.push_back(cell_id(f.transit(-stripe, h)));
                    shadow.push_back(cell_id(f.transit(stripe, k)));
                    shadow.push_back(cell_id(f.parking(stripe, k)));
                    add_bundle({DTBundleKind::end, i, j, k, horizontal, stripe, -stripe}, shadow);
                }
            }
        }
    }

    void cross_bundles(int i, int j) {
        auto c = [&](int r, int cc) { return cell_id(cross_cell(p, i, j, r, cc)); };
        auto add = [&](DTBundleKind kind, bool horizontal, int s1, int s2,
                       std::vector<PointId> shadow) {
            add_bundle({kind, i, j, 0, horizontal, s1, s2}, shadow);
        };
        add(DTBundleKind::cross_straight, true, +1, 0, {c(2, 0), c(2, 1), c(2, 2), c(2, 3)});
        add(DTBundleKind::cross_straight, true, -1, 0, {c(1, 3), c(1, 2), c(1, 1), c(1, 0)});
        add(DTBundleKind::cross_straight, false, +1, 0, {c(0, 1), c(1, 1), c(2, 1), c(3, 1)});
        add(DTBundleKind::cross_straight, false, -1, 0, {c(3, 2), c(2, 2), c(1, 2), c(0, 2)});
        // turns switch lanes at the intersection cell of the in- and out-lane
        add(DTBundleKind::cross_turn, true, +1, +1, {c(2, 0), c(2, 1), c(3, 1)});
        add(DTBundleKind::cross_turn, true, +1, -1, {c(2, 0), c(2, 1), c(2, 2), c(1, 2), c(0, 2)});
        add(DTBundleKind::cross_turn, true, -1, -1, {c(1, 3), c(1, 2), c(0, 2)});
        add(DTBundleKind::cross_turn, true, -1, +1, {c(1, 3), c(1, 2), c(1, 1), c(2, 1), c(3, 1)});
        add(DTBundleKind::cross_turn, false, +1, +1, {c(0, 1), c(1, 1), c(2, 1), c(2, 2), c(2, 3)});
        add(DTBundleKind::cross_turn, false, +1, -1, {c(0, 1), c(1, 1), c(1, 0)});
        add(DTBundleKind::cross_turn, false, -1, -1, {c(3, 2), c(2, 2), c(1, 2), c(1, 1), c(1, 0)});
        add(DTBundleKind::cross_turn, false, -1, +1, {c(3, 2), c(2, 2), c(2, 3)});
    }

    // full elements strictly between two positions along a street
    void horizontal_leg(int street, int from, int to, std::vector<BundleId>& path) const {
        int d = to > from ? 1 : -1;
        for (int c = from + d; c != to; c += d) {
            if (c % 2 == 0)
                path.push_back(find(DTBundleKind::cross_straight, street, c, 0, true, d, 0));
            else
                path.push_back(find(DTBundleKind::transit, street, c, 0, true, d, 0));
        }
    }
    void vertical_leg(int street, int from, int to, std::vector<BundleId>& path) const {
        int d = to > from ? 1 : -1;
        for (int r = from + d; r != to; r += d) {
            if (r % 2 == 0)
                path.push_back(find(DTBundleKind::cross_straight, r, street, 0, false, d, 0));
            else
                path.push_back(find(DTBundleKind::transit, r, street, 0, false, d, 0));
        }
    }

    std::vector<BundleId> route_path(const DTCellInfo& from, const DTCellInfo& to) const {
        std::vector<BundleId> path;
        auto start = [&](int dir) {
            path.push_back(find(DTBundleKind::start, from.i, from.j, from.k, from.horizontal,
                                from.stripe, dir));
        };
        auto finish = [&](int dir) {
            path.push_back(
                find(DTBundleKind::end, to.i, to.j, to.k, to.horizontal, to.stripe, dir));
        };
        auto hturn = [&](int i, int j, int din, int dout) {
            path.push_back(find(DTBundleKind::cross_turn, i, j, 0, true, din, dout));
        };
        auto vturn = [&](int i, int j, int din, int dout) {
            path.push_back(find(DTBundleKind::cross_turn, i, j, 0, false, din, dout));
        };

        if (from.horizontal) {
            if (!to.horizontal) {
                // vertical end block: straight to cross (i, to.j), turn
                int d1 = to.j > from.j ? 1 : -1;
                int d2 = to.i > from.i ? 1 : -1;
                start(d1);
                horizontal_leg(from.i, from.j, to.j, path);
                hturn(from.i, to.j, d1, d2);
                vertical_leg(to.j, from.i, to.i, path);
                finish(d2);
            } else if (to.i == from.i) {
                int d = to.j > from.j ? 1 : -1;
                start(d);
                horizontal_leg(from.i, from.j, to.j, path);
                finish(d);
            } else {
                // other horizontal street: detour via an adjacent vertical street
                int a = to.j != from.j ? (to.j > from.j ? 1 : -1) : from.stripe;
                int d2 = to.i > from.i ? 1 : -1;
                int d3 = to.j > from.j + a ? 1 : -1;
                start(a);
                hturn(from.i, from.j + a, a, d2);
                vertical_leg(from.j + a, from.i, to.i, path);
                vturn(to.i, from.j + a, d2, d3);
                horizontal_leg(to.i, from.j + a, to.j, path);
                finish(d3);
            }
        } else {
            if (to.horizontal) {
                int d1 = to.i > from.i ? 1 : -1;
                int d2 = to.j > from.j ? 1 : -1;
                start(d1);
                vertical_leg(from.j, from.i, to.i, path);
                vturn(to.i, from.j, d1, d2);
                horizontal_leg(to.i, from.j, to.j, path);
                finish(d2);
            } else if (to.j == from.j) {
                int d = to.i > from.i ? 1 : -1;
                start(d);
                vertical_leg(from.j, from.i, to.i, path);
                finish(d);
            } else {
                int a = to.i != from.i ? (to.i > from.i ? 1 : -1) : from.stripe;
                int d2 = to.j > from.j ? 1 : -1;
                int d3 = to.i > from.i + a ? 1 : -1;
                start(a);
                vturn(from.i + a, from.j, a, d2);
                horizontal_leg(from.i + a, from.j, to.j, path);
                hturn(from.i + a, to.j, d2, d3);
                vertical_leg(to.j, from.i + a, to.i, path);
                finish(d3);
            }
        }
        return path;
    }
};

}  // namespace

DownTownParams DownTownParams::unit(int n, int m) {
    DownTownParams p;
    p.n = n;
    p.m = m;
    p.slk.assign(m, Rational(1));
    return p;
}

void DownTownParams::validate() const {
    if (n < 2 || n % 2 != 0) fail(Errc::invalid_argument, "n must be even and >= 2");
    if (m < 1) fail(Errc::invalid_argument, "m must be >= 1");
    if (static_cast<int>(slk.size()) != m)
        fail(Errc::invalid_argument, "slk must list one slowness per cell index");
    for (const Rational& s : slk)
        if (s < 1) fail(Errc::invalid_argument, "slk values must be >= 1");
    if (wait < 1 || crc < 1) fail(Errc::invalid_argument, "wait and crc must be >= 1");
}

std::string DTBundleInfo::name() const {
    auto sgn = [](int s) { return s > 0 ? "+" : "-"; };
    std::ostringstream os;
    switch (kind) {
        case DTBundleKind::transit:
            os << "B_T^{" << sgn(s1) << "}(" << i << "," << j << ")";
            break;
        case DTBundleKind::start:
            os << "B_{S," << k << "}^{" << sgn(s1) << sgn(s2) << "}(" << i << "," << j << ")";
            break;
        case DTBundleKind::end:
            os << "B_{E," << k << "}^{" << sgn(s1) << sgn(s2) << "}(" << i << "," << j << ")";
            break;
        case DTBundleKind::cross_straight:
            os << "B_C^{" << (horizontal ? "H" : "V") << "," << sgn(s1) << "}(" << i << "," << j
               << ")";
            break;
        case DTBundleKind::cross_turn:
            os << "B_C^{" << (horizontal ? "H" : "V") << "," << sgn(s1) << sgn(s2) << "}(" << i
               << "," << j << ")";
            break;
    }
    return os.str();
}

DownTown build_downtown(const DownTownParams& params) {
    params.validate();
    Builder b(params);
    b.classify_cells();
    for (int i = 0; i <= params.n; ++i)
        for (int j = 0; j <= params.n; ++j) {
            if (i % 2 == 0 && j % 2 == 1) b.block_bundles(i, j, true);
            if (i % 2 == 1 && j % 2 == 0) b.block_bundles(i, j, false);
            if (i % 2 == 0 && j % 2 == 0) b.cross_bundles(i, j);
        }

    std::vector<PointId> parking;
    for (PointId c = 0; c < static_cast<PointId>(b.cells.size()); ++c)
        if (b.cells[c].role == DTRole::parking) parking.push_back(c);

    std::vector<std::pair<Route, std::int64_t>> routes;
    routes.reserve(parking.size() * parking.size());
    for (PointId from : parking)
        for (PointId to : parking) {
            const DTCellInfo& a = b.cells[from];
            const DTCellInfo& c = b.cells[to];
            if (a.i == c.i && a.j == c.j && a.horizontal == c.horizontal) continue;
            Route r;
            r.paths.push_back({BundlePath{b.route_path(a, c)}, 1});
            routes.push_back({std::move(r), 1});
        }

    DownTown dt;
    dt.params = params;
    dt.rs = RouteSystem::make(static_cast<PointId>(b.cells.size()), std::move(b.bundles),
                              std::move(routes));
    dt.cells = std::move(b.cells);
    dt.bundle_info = std::move(b.bundle_info);
    dt.parking_cells = std::move(parking);
    dt.grid_side = b.grid.side;
    return dt;
}

namespace {

Rational sigma_start_h(const DownTownParams& p, std::int64_t j, int stripe, int dir) {
    const std::int64_t n = p.n, m = p.m;
    if (stripe > 0 && dir > 0) return Rational(m * ((n + 1) * (n - j + 1) - 2));
    if (stripe < 0 && dir < 0) return Rational(m * ((n + 1) * (j + 1) - 2));
    if (stripe > 0 && dir < 0) return Rational(m * ((n + 1) * j - 1));
    return Rational(m * ((n + 1) * (n - j) - 1));
}

Rational sigma_end_h(const DownTownParams& p, std::int64_t j, int stripe, int dir) {
    const std::int64_t n = p.n, m = p.m;
    if (stripe > 0 && dir > 0) return Rational(m * ((n + 1) * j + n / 2 - 1));
    if (stripe < 0 && dir < 0) return Rational(m * ((n + 1) * (n - j) + n / 2 - 1));
    if (stripe > 0 && dir < 0) return Rational(m * ((n + 1) * (n - j) + n / 2 - 1));
    return Rational(m * ((n + 1) * j + n / 2 - 1));
}

// transit helper eta(i,j), defined for i even / j odd
Rational transit_eta(const DownTownParams& p, std::int64_t i, std::int64_t j) {
    const std::int64_t n = p.n;
    const Rational m2(static_cast<std::int64_t>(p.m) * p.m);
    if (!(i % 2 == 0 && j % 2 == 1)) return Rational(0);
    if (i != 0 && i != n)
        return m2 * Rational((n - j + 1) * (n * j - (j + 1)) + (n - j - 1) * (n * j + 2 * j + n - i));
    if (i == 0)
        return m2 * (Rational(n - j + 1) * (Rational(n * j) - num::ratio(3, 2) * Rational(j + 1)) +
                     Rational((n - j - 1) * (n * j + 2 * j + n)));
    return m2 * (Rational(n - j + 1) *
                     (Rational(n * j) - num::ratio(n + 1, 2) * Rational(j + 1)) +
                 Rational((n - j - 1) * (n * j + 2 * j)));
}

Rational sigma_transit_pos(const DownTownParams& p, std::int64_t i, std::int64_t j) {
    if (i % 2 == 0 && j % 2 == 1) return transit_eta(p, i, j);
    if (i % 2 == 1 && j % 2 == 0) return transit_eta(p, j, i);
    return Rational(0);
}

Rational sigma_cross_hplus(const DownTownParams& p, std::int64_t i, std::int64_t j) {
    const std::int64_t n = p.n;
    const Rational m2(static_cast<std::int64_t>(p.m) * p.m);
    if (i % 2 != 0 || j % 2 != 0) return Rational(0);
    if (i != 0 && i != n && j != 0 && j != n) return m2 * Rational((n - j) * (2 * n * j - i + j));
    if (i == 0 && j != 0 && j != n)
        return m2 * Rational(n - j) * (Rational(2 * n * j) + Rational(j) / 2);
    if (i == n && j != 0 && j != n)
        return m2 * Rational(n - j) * (num::ratio(3, 2) * Rational(j * (n + 1)) - Rational(n));
    return Rational(0);
}

Rational sigma_cross_hpm(const DownTownParams& p, std::int64_t i, std::int64_t j) {
    const std::int64_t n = p.n;
    const Rational m2(static_cast<std::int64_t>(p.m) * p.m);
    if (i % 2 != 0 || j % 2 != 0) return Rational(0);
    if (i != 0 && i != n && j != 0) return m2 * Rational(2 * i * j + i + j);
    if (i == n && j != 0) return m2 * Rational(n * j + n + j);
    return Rational(0);
}

Rational sigma_cross_hpp(const DownTownParams& p, std::int64_t i, std::int64_t j) {
    const std::int64_t n = p.n;
    const Rational m2(static_cast<std::int64_t>(p.m) * p.m);
    if (i % 2 != 0 || j % 2 != 0) return Rational(0);
    if (i != n && j != 0)
        return m2 * Rational(n * n - n + (2 * n - 1) * j - (n - 1) * i - 2 * i * j);
    return Rational(0);
}

}  // namespace

Rational dt_sigma_closed(const DownTownParams& p, const DTBundleInfo& b) {
    const std::int64_t n = p.n;
    switch (b.kind) {
        case DTBundleKind::start: {
            std::int64_t coord = b.horizontal ? b.j : b.i;
            if (coord < 0 || coord > n) fail(Errc::unsupported_coordinates, b.name());
            return sigma_start_h(p, coord, b.s1, b.s2);
        }
        case DTBundleKind::end: {
            std::int64_t coord = b.horizontal ? b.j : b.i;
            if (coord < 0 || coord > n) fail(Errc::unsupported_coordinates, b.name());
            return sigma_end_h(p, coord, b.s1, b.s2);
        }
        case DTBundleKind::transit:
            return b.s1 > 0 ? sigma_transit_pos(p, b.i, b.j)
                            : sigma_transit_pos(p, n - b.j, b.i);
        case DTBundleKind::cross_straight:
            if (b.horizontal)
                return b.s1 > 0 ? sigma_cross_hplus(p, b.i, b.j)
                                : sigma_cross_hplus(p, n - b.i, n - b.j);
            return b.s1 > 0 ? sigma_cross_hplus(p, n - b.j, b.i)
                            : sigma_cross_hplus(p, b.j, n - b.i);
        case DTBundleKind::cross_turn:
            if (b.horizontal) {
                if (b.s1 > 0 && b.s2 > 0) return sigma_cross_hpp(p, b.i, b.j);
                if (b.s1 > 0 && b.s2 < 0) return sigma_cross_hpm(p, b.i, b.j);
                if (b.s1 < 0 && b.s2 < 0) return sigma_cross_hpp(p, n - b.i, n - b.j);
                return sigma_cross_hpm(p, n - b.i, n - b.j);  // H-+
            }
            if (b.s1 > 0 && b.s2 > 0) return sigma_cross_hpm(p, n - b.j, b.i);    // V++
            if (b.s1 > 0 && b.s2 < 0) return sigma_cross_hpp(p, n - b.j, b.i);    // V+-
            if (b.s1 < 0 && b.s2 < 0) return sigma_cross_hpm(p, b.j, n - b.i);    // V--
            return sigma_cross_hpp(p, b.j, n - b.i);                              // V-+
    }
    fail(Errc::unsupported_coordinates, b.name());
}

std::vector<std::int64_t> dt_sigma_walked(const DownTown& dt) {
    std::vector<std::int64_t> count(dt.rs.bundles().size(), 0);
    for (const auto& [route, mult] : dt.rs.routes())
        for (const auto& [path, pmult] : route.paths)
            for (BundleId b : path.bundles) count[b] += mult * pmult;
    return count;
}

bool downtown_closed_covers(const DownTown& dt, PointId cell) {
    const DTCellInfo& c = dt.cells[cell];
    const int n = dt.params.n;
    switch (c.role) {
        case DTRole::parking:
            return true;
        case DTRole::transit:
            return c.horizontal && c.stripe > 0 && c.i != 0 && c.i != n;
        case DTRole::cross:
            // lane cell (+,-) = intersection of the H+ row and V- column
            return c.k == 9 && c.i != 0 && c.i != n && c.j != 0 && c.j != n;
    }
    return false;
}

Rational downtown_lambda_full(const DownTown& dt) { return lambda_balanced_full<Rational>(dt.rs); }

Rational downtown_lambda_exact(const DownTown& dt) { return lambda_balanced<Rational>(dt.rs); }

Rational downtown_closed_spatial(const DownTown& dt, PointId cell) {
    const DTCellInfo& c = dt.cells[cell];
    const DownTownParams& p = dt.params;
    const std::int64_t n = p.n, m = p.m;
    if (!downtown_closed_covers(dt, cell))
        fail(Errc::boundary_cell_not_covered, "no printed formula for this cell");
    const Rational lambda = downtown_lambda_full(dt) / Rational(static_cast<std::int64_t>(m) * m);

    if (c.role == DTRole::parking) {
        Rational value = Rational(2 * n * n + 4 * n - 4) / Rational(m);
        return p.wait / lambda * value;
    }
    if (c.role == DTRole::transit) {
        const std::int64_t i = c.i, j = c.j, k = c.k;
        Rational a((n - j) * (2 * n * j + j + n - i - 1) + (n - 2) * j + i - 2);
        a -= Rational(n) / 2;
        Rational bb(n * (n + 1) - 2 * (n + 1) * j);
        bb += Rational(n) / 2;
        Rational cc((n + 1) * (n + j) + n - 3);
        Rational value = a + Rational(k) / Rational(m) * bb + cc / Rational(m);
        return p.slk[k - 1] / lambda * value;
    }
    const std::int64_t i = c.i, j = c.j;
    Rational value(n * n * (2 * j + 2 * i + 3) - 2 * n * (j * j + i * i + j + i + 1) -
                   (i - j) * (i - j) + 2 * (i * j + j + i));
    return p.crc / lambda * value;
}

DTErrataReport downtown_errata(const DownTown& dt) {
    DTErrataReport rep;
    auto walked = dt_sigma_walked(dt);
    for (BundleId b = 0; b < static_cast<BundleId>(dt.rs.bundles().size()); ++b) {
        Rational closed = dt_sigma_closed(dt.params, dt.bundle_info[b]);
        Rational actual(walked[b]);
        ++rep.sigma_checked;
        if (closed == actual) {
            ++rep.sigma_equal;
        } else {
            DTErrataEntry e;
            e.what = "sigma-" + dt.bundle_info[b].name();
            e.closed = closed.get_str();
            e.actual = actual.get_str();
            double cv = closed.get_d(), av = actual.get_d();
            e.rel_dev = av == 0 ? (cv == 0 ? 0 : 1) : std::abs(cv - av) / std::abs(av);
            rep.sigma_mismatches.push_back(std::move(e));
        }
    }

    auto exact = spatial_balanced<Rational>(dt.rs);
    for (PointId cell = 0; cell < static_cast<PointId>(dt.cells.size()); ++cell) {
        if (!downtown_closed_covers(dt, cell)) continue;
        Rational closed = downtown_closed_spatial(dt, cell);
        ++rep.cells_checked;
        if (closed == exact[cell]) {
            ++rep.cells_equal;
        } else {
            const DTCellInfo& c = dt.cells[cell];
            DTErrataEntry e;
            std::ostringstream what;
            what << "spatial-"
                 << (c.role == DTRole::parking ? "parking"
                                               : c.role == DTRole::transit ? "transit" : "cross")
                 << "(" << c.i << "," << c.j << ",k=" << c.k << ")";
            e.what = what.str();
            e.closed = closed.get_str();
            e.actual = exact[cell].get_str();
            double cv = closed.get_d(), av = exact[cell].get_d();
            e.rel_dev = av == 0 ? (cv == 0 ? 0 : 1) : std::abs(cv - av) / std::abs(av);
            rep.cell_mismatches.push_back(std::move(e));
        }
    }
    rep.lambda_full = downtown_lambda_full(dt).get_str();
    rep.lambda_exact = downtown_lambda_exact(dt).get_str();
    return rep;
}

std::string downtown_errata_json(const DownTown& dt, const DTErrataReport& rep) {
    nlohmann::json j;
    j["params"] = {{"n", dt.params.n}, {"m", dt.params.m}, {"wait", dt.params.wait.get_str()},
                   {"crc", dt.params.crc.get_str()}};
    nlohmann::json slk = nlohmann::json::array();
    for (const auto& s : dt.params.slk) slk.push_back(s.get_str());
    j["params"]["slk"] = slk;
    j["lambda"] = {{"closed_full", rep.lambda_full}, {"chain_exact", rep.lambda_exact}};
    j["sigma_b"] = {{"checked", rep.sigma_checked}, {"equal", rep.sigma_equal}};
    nlohmann::json sm = nlohmann::json::array();
    for (const auto& e : rep.sigma_mismatches)
        sm.push_back({{"formula", e.what}, {"closed", e.closed}, {"walked", e.actual}});
    j["sigma_b"]["mismatches"] = sm;
    j["cells"] = {{"checked", rep.cells_checked}, {"equal", rep.cells_equal}};
    nlohmann::json cm = nlohmann::json::array();
    for (const auto& e : rep.cell_mismatches)
        cm.push_back({{"cell", e.what}, {"closed", e.closed}, {"exact", e.actual},
                      {"rel_dev", e.rel_dev}});
    j["cells"]["mismatches"] = cm;
    return j.dump(2);
}

}  // namespace mtm
