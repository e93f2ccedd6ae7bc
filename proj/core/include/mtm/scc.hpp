#pragma once

#include <vector>

namespace mtm {

struct SccResult {
    // component id per vertex, components numbered in reverse topological
    // order (an edge u->v implies comp[u] >= comp[v]).
    std::vector<int> comp;
    int count = 0;
    // components with no edge leaving them
    std::vector<int> terminal;
};

SccResult strongly_connected_components(const std::vector<std::vector<int>>& graph);

}  // namespace mtm
