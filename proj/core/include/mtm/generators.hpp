#pragma once

#include <cstdint>
#include <vector>

#include "mtm/model.hpp"
#include "mtm/modular.hpp"
#include "mtm/rng.hpp"

namespace mtm {
namespace gen {

// Random row-stochastic matrix with exact rational rows.
std::vector<std::vector<Rational>> random_stochastic_matrix(Xoshiro256& rng, int n);

struct ModelSpec {
    int points = 5;
    int extra_traces = 4;
    bool balanced = false;  // built from trace cycles only
    bool skewed = false;    // non-uniform psi at some point
};

// Strongly connected random model: a trace cycle covering every point plus
// random extra material, balanced variants built from whole cycles.
MTModel<Rational> random_model(Xoshiro256& rng, const ModelSpec& spec);

struct RouteSystemSpec {
    int hubs = 3;
    int extra_cycles = 2;     // balanced route material beyond the base cycle
    int unbalanced_routes = 0;
    int max_bundle_segments = 3;
    int max_path_bundles = 3;
    bool fractional_slowness = false;
};

// Route system whose route graph cycles through all hubs; balanced unless
// unbalanced_routes > 0. Bundles are shared across routes and may appear
// both first and mid-path.
RouteSystem random_route_system(Xoshiro256& rng, const RouteSystemSpec& spec);

}  // namespace gen
}  // namespace mtm
