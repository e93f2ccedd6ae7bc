#include "mtm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "mtm/rng.hpp"

namespace mtm {

namespace {

void run_agents(const MTModel<double>& m, const AliasTable* start_table, const SimConfig& cfg,
                std::int64_t first_agent, std::int64_t last_agent, EmpiricalHistogram& out) {
    const TraceSet& ts = m.ts();
    out.occupancy.assign(ts.point_count(), 0);
    for (std::int64_t agent = first_agent; agent < last_agent; ++agent) {
        Xoshiro256 rng = Xoshiro256::stream(cfg.seed, static_cast<std::uint64_t>(agent));
        ChainState s = cfg.fixed_start;
        if (start_table) s = ts.state_at(static_cast<StateId>(start_table->sample(rng)));
        for (std::int64_t t = 0; t < cfg.steps; ++t) {
            if (t >= cfg.warmup) {
                PointId u = ts.position_of(s);
                out.occupancy[u] += 1;
                out.total += 1;
                if (cfg.track_destinations) {
                    PointId v = ts.trace(s.trace).end();
                    out.destination[EmpiricalHistogram::dest_key(u, v)] += 1;
                }
            }
            s = step(m, s, rng);
        }
    }
}

}  // namespace

EmpiricalHistogram simulate(const MTModel<double>& m, const std::vector<double>* pi,
                            const SimConfig& cfg) {
    const TraceSet& ts = m.ts();
    if (cfg.agents < 1) fail(Errc::invalid_argument, "agents must be >= 1");
    if (cfg.warmup >= cfg.steps && cfg.steps > 0)
        fail(Errc::invalid_argument, "warmup must be smaller than steps");

    std::optional<AliasTable> start_table;
    if (cfg.stationary_start) {
        if (!pi || pi->size() != static_cast<std::size_t>(ts.state_count()))
            fail(Errc::invalid_argument, "stationary start requires a full-chain pi");
        start_table.emplace(*pi);
    }

    int threads = std::max(1, cfg.threads);
    threads = static_cast<int>(std::min<std::int64_t>(threads, cfg.agents));
    std::vector<EmpiricalHistogram> parts(threads);
    if (threads == 1) {
        run_agents(m, start_table ? &*start_table : nullptr, cfg, 0, cfg.agents, parts[0]);
    } else {
        std::vector<std::thread> pool;
        std::int64_t chunk = (cfg.agents + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::int64_t lo = t * chunk;
            std::int64_t hi = std::min<std::int64_t>(cfg.agents, lo + chunk);
            pool.emplace_back([&, lo, hi, t] {
                run_agents(m, start_table ? &*start_table : nullptr, cfg, lo, hi, parts[t]);
            });
        }
        for (auto& th : pool) th.join();
    }

    EmpiricalHistogram merged;
    merged.occupancy.assign(ts.point_count(), 0);
    for (const auto& part : parts) {
        if (part.occupancy.empty()) continue;
        for (PointId u = 0; u < ts.point_count(); ++u) merged.occupancy[u] += part.occupancy[u];
        for (const auto& [k, v] : part.destination) merged.destination[k] += v;
        merged.total += part.total;
    }
    return merged;
}

CompareResult compare(const EmpiricalHistogram& h, const std::vector<double>& analytic) {
    if (h.occupancy.size() != analytic.size())
        fail(Errc::mismatched_support, "point sets differ");
    CompareResult r;
    if (h.total == 0) fail(Errc::mismatched_support, "empty histogram");
    const double total = static_cast<double>(h.total);
    std::int64_t cells = 0;
    for (std::size_t u = 0; u < analytic.size(); ++u) {
        double emp = h.occupancy[u] / total;
        r.l1 += std::abs(emp - analytic[u]);
        double expected = analytic[u] * total;
        if (expected == 0) {
            if (h.occupancy[u] != 0)
                fail(Errc::mismatched_support,
                     "observations at point " + std::to_string(u) + " with zero analytic mass");
            continue;
        }
        double diff = h.occupancy[u] - expected;
        r.chi2_stat += diff * diff / expected;
        ++cells;
    }
    r.tv = r.l1 / 2;
    r.dof = cells - 1;
    if (r.dof > 0) {
        boost::math::chi_squared dist(static_cast<double>(r.dof));
        r.chi2_pvalue = boost::math::cdf(boost::math::complement(dist, r.chi2_stat));
    } else {
        r.chi2_pvalue = 1.0;
    }
    return r;
}

}  // namespace mtm
