#include "mtm/oracle.hpp"

#include "mtm/linalg.hpp"

namespace mtm {
namespace oracle {

ManhattanCensus manhattan_census(int n) {
    ManhattanCensus census;
    census.n = n;
    const int cells = n * n;
    census.eta.assign(cells, std::vector<std::int64_t>(cells, 0));
    census.gamma.assign(cells, 0);
    census.visits_exact.assign(cells, 0);

    auto tally = [&](int from_cell, const std::vector<PointId>& path) {
        for (std::size_t idx = 0; idx < path.size(); ++idx) {
            census.eta[from_cell][path[idx]] += 1;
            census.gamma[path[idx]] += 1;
            if (idx >= 1) census.visits_exact[path[idx]] += 1;
        }
    };

    for (int i0 = 0; i0 < n; ++i0)
        for (int j0 = 0; j0 < n; ++j0) {
            const int from = i0 * n + j0;
            // degenerate self-path: one visit at the cell itself
            census.eta[from][from] += 1;
            census.gamma[from] += 1;
            for (int i1 = 0; i1 < n; ++i1)
                for (int j1 = 0; j1 < n; ++j1) {
                    if (i0 == i1 && j0 == j1) continue;
                    auto walk = manhattan_path(n, i0, j0, i1, j1, true);
                    census.trace_count += 1;
                    census.state_count += static_cast<std::int64_t>(walk.size()) - 1;
                    tally(from, walk);
                    if (i0 != i1 && j0 != j1) {
                        auto walk2 = manhattan_path(n, i0, j0, i1, j1, false);
                        census.trace_count += 1;
                        census.state_count += static_cast<std::int64_t>(walk2.size()) - 1;
                        tally(from, walk2);
                    }
                }
        }
    return census;
}

std::optional<std::vector<Rational>> full_chain_stationary(const MTModel<Rational>& m) {
    const TraceSet& ts = m.ts();
    const auto n = static_cast<int>(ts.state_count());
    std::vector<SparseEntry<Rational>> entries;
    for (StateId id = 0; id < n; ++id) {
        for (const auto& [next, p] : transitions(m, ts.state_at(id)))
            entries.push_back({static_cast<int>(id), static_cast<int>(ts.state_id(next)), p});
    }
    return stationary_dense<Rational>(n, entries);
}

}  // namespace oracle
}  // namespace mtm
