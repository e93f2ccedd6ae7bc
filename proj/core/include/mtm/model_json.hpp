#pragma once

#include <string>

#include "mtm/model.hpp"
#include "mtm/modular.hpp"

namespace mtm {

// Model format:
//   { "points": [{"id":0,"coords":[0,0]}, ...] | <count>,
//     "traces": [[0,1,3], ...],
//     "rule": "uniform" | {"weights": {"<trace index>": "1/3" | 0.25, ...}} }
// Weight lists given as floats are renormalized exactly per start point;
// rational strings are taken as-is and must sum to 1.
MTModel<Rational> load_model_json(const std::string& text);
MTModel<Rational> load_model_file(const std::string& path);

std::string model_to_json(const MTModel<Rational>& m);

// Route-system format:
//   { "points": <count> | [...],
//     "bundles": [ {"segments": [{"points":[...], "count":1}, ...]}
//                | {"shadow": [...], "slowness": ["3/2", ...]} ],
//     "routes": [ {"paths": [{"bundles":[0,2], "count":1}], "count":1}, ...] }
RouteSystem load_route_system_json(const std::string& text);
RouteSystem load_route_system_file(const std::string& path);

}  // namespace mtm
