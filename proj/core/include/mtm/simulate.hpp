#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mtm/model.hpp"

namespace mtm {

struct SimConfig {
    std::int64_t agents = 1;
    std::int64_t steps = 0;    // recorded positions per agent = steps - warmup
    std::int64_t warmup = 0;
    std::uint64_t seed = 0;
    bool stationary_start = true;       // sample pi directly ("perfect simulation")
    ChainState fixed_start{0, 1};       // used when stationary_start is false
    bool track_destinations = false;
    int threads = 1;
};

struct EmpiricalHistogram {
    std::vector<std::int64_t> occupancy;                       // per point id
    std::unordered_map<std::uint64_t, std::int64_t> destination;  // key (u << 32) | v
    std::int64_t total = 0;

    static std::uint64_t dest_key(PointId u, PointId v) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
               static_cast<std::uint32_t>(v);
    }
};

// Runs independent agents; per-agent streams are derived from the seed, so
// the result is identical for any thread count.
EmpiricalHistogram simulate(const MTModel<double>& m, const std::vector<double>* pi,
                            const SimConfig& cfg);

struct CompareResult {
    double tv = 0;        // total variation distance
    double l1 = 0;
    double chi2_stat = 0;
    double chi2_pvalue = 0;
    std::int64_t dof = 0;
};

// Distances between the empirical occupancy and an analytic spatial
// distribution over the same points, plus a chi-square goodness-of-fit test.
CompareResult compare(const EmpiricalHistogram& h, const std::vector<double>& analytic);

}  // namespace mtm
