#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtm/manhattan.hpp"
#include "mtm/model.hpp"

namespace mtm {
namespace oracle {

// Brute-force convention-A path census for the one-corner model: every
// path is walked cell by cell, visits are tallied at every index including
// the start, and each cell contributes one degenerate self-path. Kept free
// of the closed forms it is used to check.
struct ManhattanCensus {
    int n = 0;
    // eta[from][at]: paths starting at `from` that visit `at`
    std::vector<std::vector<std::int64_t>> eta;
    std::vector<std::int64_t> gamma;         // total visits per cell
    std::vector<std::int64_t> visits_exact;  // visits at counted indices 1..|T|-1, real traces only
    std::int64_t state_count = 0;            // sum of |T|-1 over real traces
    std::int64_t trace_count = 0;            // real traces, self-paths excluded
};

ManhattanCensus manhattan_census(int n);

// Dense stationary solve of the full chain, for tiny models. Exact.
std::optional<std::vector<Rational>> full_chain_stationary(const MTModel<Rational>& m);

}  // namespace oracle
}  // namespace mtm
