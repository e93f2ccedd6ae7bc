#include "mtm/scc.hpp"

#include <algorithm>

namespace mtm {

// Iterative Tarjan; recursion depth on path-like kernels can exceed the
// stack for large grids.
SccResult strongly_connected_components(const std::vector<std::vector<int>>& graph) {
    const int n = static_cast<int>(graph.size());
    SccResult res;
    res.comp.assign(n, -1);

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, child] = call.back();
            if (child == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (child < graph[v].size()) {
                int w = graph[v][child++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                int c = res.count++;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    res.comp[w] = c;
                } while (w != v);
            }
            int finished = v;
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().v;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }

    std::vector<bool> has_exit(res.count, false);
    for (int u = 0; u < n; ++u)
        for (int w : graph[u])
            if (res.comp[u] != res.comp[w]) has_exit[res.comp[u]] = true;
    for (int c = 0; c < res.count; ++c)
        if (!has_exit[c]) res.terminal.push_back(c);
    return res;
}

}  // namespace mtm
