#pragma once

#include <string>
#include <vector>

#include "mtm/linalg.hpp"
#include "mtm/model.hpp"
#include "mtm/scc.hpp"

namespace mtm {

// The way-point chain: states are the points with outgoing traces,
// K(u,v) = sum of psi_u(T) over T in Trips(u,v).
template <class S>
struct KernelChain {
    std::vector<PointId> states;          // ascending point ids
    std::vector<int> index_of_point;      // point id -> kernel index, -1 if absent
    std::vector<std::size_t> row_ptr;     // CSR over kernel indices
    std::vector<int> col;
    std::vector<S> val;

    int size() const { return static_cast<int>(states.size()); }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> g(size());
        for (int u = 0; u < size(); ++u)
            for (std::size_t e = row_ptr[u]; e < row_ptr[u + 1]; ++e) g[u].push_back(col[e]);
        return g;
    }
};

enum class StationaryKind { kernel, full };

template <class S>
struct StationaryVector {
    StationaryKind kind = StationaryKind::kernel;
    // kernel: per kernel state; full: per chain state id
    std::vector<S> values;
};

template <class S>
struct StationarySolution {
    bool unique = true;
    std::vector<StationaryVector<S>> vectors;  // one per terminal component

    const StationaryVector<S>& sigma() const { return vectors.front(); }
};

template <class S>
KernelChain<S> build_kernel(const MTModel<S>& m) {
    const TraceSet& ts = m.ts();
    KernelChain<S> k;
    k.states = ts.start_points();
    k.index_of_point.assign(ts.point_count(), -1);
    for (int i = 0; i < k.size(); ++i) k.index_of_point[k.states[i]] = i;

    k.row_ptr.assign(k.size() + 1, 0);
    std::vector<std::vector<std::pair<int, S>>> rows(k.size());
    for (int u = 0; u < k.size(); ++u) {
        std::vector<std::pair<PointId, S>> acc;
        for (TraceId t : ts.out(k.states[u])) {
            const S& p = m.rule.prob(t);
            if (num::is_zero(p)) continue;
            PointId v = ts.trace(t).end();
            bool found = false;
            for (auto& [pv, pp] : acc)
                if (pv == v) {
                    pp += p;
                    found = true;
                    break;
                }
            if (!found) acc.emplace_back(v, p);
        }
        for (auto& [v, p] : acc) {
            int vi = k.index_of_point[v];
            rows[u].emplace_back(vi, p);
        }
    }
    for (int u = 0; u < k.size(); ++u) k.row_ptr[u + 1] = k.row_ptr[u] + rows[u].size();
    k.col.resize(k.row_ptr.back());
    k.val.resize(k.row_ptr.back());
    std::size_t e = 0;
    for (int u = 0; u < k.size(); ++u)
        for (auto& [v, p] : rows[u]) {
            k.col[e] = v;
            k.val[e] = p;
            ++e;
        }
    return k;
}

// Expected remaining trace length from each start point,
// Lambda_psi(u) = sum over Out(u) of (|T|-1) psi_u(T). Zero for points
// without outgoing traces.
template <class S>
std::vector<S> lambda_psi(const MTModel<S>& m) {
    const TraceSet& ts = m.ts();
    std::vector<S> lambda(ts.point_count(), S(0));
    for (PointId u : ts.start_points()) {
        S acc(0);
        for (TraceId t : ts.out(u))
            acc += S(static_cast<std::int64_t>(ts.trace(t).size() - 1)) * m.rule.prob(t);
        lambda[u] = acc;
    }
    return lambda;
}

namespace detail {

template <class S>
bool sigma_is_stationary(const KernelChain<S>& k, const std::vector<S>& sigma, double tol) {
    if (sigma.size() != static_cast<std::size_t>(k.size())) return false;
    std::vector<S> next(k.size(), S(0));
    S total(0);
    for (int u = 0; u < k.size(); ++u) {
        if (sigma[u] < S(0)) {
            if constexpr (num::traits<S>::exact) return false;
            else if (sigma[u] < S(-tol)) return false;
        }
        total += sigma[u];
        for (std::size_t e = k.row_ptr[u]; e < k.row_ptr[u + 1]; ++e)
            next[k.col[e]] += sigma[u] * k.val[e];
    }
    if constexpr (num::traits<S>::exact) {
        if (!(total == S(1))) return false;
        for (int u = 0; u < k.size(); ++u)
            if (!(next[u] == sigma[u])) return false;
    } else {
        if (num::abs_val(total - S(1)) > tol) return false;
        for (int u = 0; u < k.size(); ++u)
            if (num::abs_val(next[u] - sigma[u]) > tol) return false;
    }
    return true;
}

template <class S>
std::vector<S> solve_irreducible(const KernelChain<S>& k, const std::vector<int>& members) {
    const int n = static_cast<int>(members.size());
    std::vector<int> local(k.size(), -1);
    for (int i = 0; i < n; ++i) local[members[i]] = i;
    std::vector<SparseEntry<S>> entries;
    for (int i = 0; i < n; ++i) {
        int u = members[i];
        for (std::size_t e = k.row_ptr[u]; e < k.row_ptr[u + 1]; ++e) {
            int vj = local[k.col[e]];
            if (vj >= 0) entries.push_back({i, vj, k.val[e]});
        }
    }
    std::optional<std::vector<S>> local_sigma;
    if constexpr (!num::traits<S>::exact) {
        if (n > 20000)
            local_sigma = stationary_power_iteration(n, entries);
        else if (n > 512)
            local_sigma = stationary_sparse_lu(n, entries);
        else
            local_sigma = stationary_dense(n, entries);
    } else {
        local_sigma = stationary_dense(n, entries);
    }
    if (!local_sigma) fail(Errc::solve_failed, "stationary solve failed");
    std::vector<S> sigma(k.size(), S(0));
    for (int i = 0; i < n; ++i) sigma[members[i]] = (*local_sigma)[i];
    return sigma;
}

}  // namespace detail

// Stationary distribution(s) of the kernel. Strongly connected kernels get
// the unique solution; otherwise one stationary vector per terminal
// component, flagged non-unique when there are several.
template <class S>
StationarySolution<S> stationary_kernel(const KernelChain<S>& k) {
    auto scc = strongly_connected_components(k.adjacency());
    StationarySolution<S> sol;
    sol.unique = scc.terminal.size() == 1;
    for (int c : scc.terminal) {
        std::vector<int> members;
        for (int u = 0; u < k.size(); ++u)
            if (scc.comp[u] == c) members.push_back(u);
        StationaryVector<S> v;
        v.kind = StationaryKind::kernel;
        v.values = detail::solve_irreducible(k, members);
        if (!detail::sigma_is_stationary(k, v.values, 1e-12))
            fail(Errc::solve_failed, "residual above tolerance");
        sol.vectors.push_back(std::move(v));
    }
    return sol;
}

// Theorem-1 direction (a): pi(<T,i>) = sigma(T_start) psi(T) / sum_u sigma(u) Lambda(u).
template <class S>
StationaryVector<S> lift_sigma_to_pi(const MTModel<S>& m, const KernelChain<S>& k,
                                     const StationaryVector<S>& sigma) {
    if (sigma.kind != StationaryKind::kernel || !detail::sigma_is_stationary(k, sigma.values, 1e-9))
        fail(Errc::not_stationary_input, "sigma is not stationary for the kernel");
    const TraceSet& ts = m.ts();
    auto lambda = lambda_psi(m);
    S denom(0);
    for (int u = 0; u < k.size(); ++u) denom += sigma.values[u] * lambda[k.states[u]];

    StationaryVector<S> pi;
    pi.kind = StationaryKind::full;
    pi.values.assign(ts.state_count(), S(0));
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        int u = k.index_of_point[ts.trace(t).start()];
        S value = sigma.values[u] * m.rule.prob(t) / denom;
        const std::int32_t len = static_cast<std::int32_t>(ts.trace(t).size());
        for (std::int32_t i = 1; i < len; ++i) pi.values[ts.state_id({t, i})] = value;
    }
    return pi;
}

// Verifies pi P = pi on the full chain.
template <class S>
bool pi_is_stationary(const MTModel<S>& m, const std::vector<S>& pi, double tol = 1e-9) {
    const TraceSet& ts = m.ts();
    if (pi.size() != static_cast<std::size_t>(ts.state_count())) return false;
    S total(0);
    for (const S& v : pi) {
        if constexpr (num::traits<S>::exact) {
            if (v < S(0)) return false;
        } else {
            if (v < -tol) return false;
        }
        total += v;
    }
    auto close = [&](const S& a, const S& b) {
        if constexpr (num::traits<S>::exact)
            return a == b;
        else
            return num::abs_val(a - b) <= tol;
    };
    if (!close(total, S(1))) return false;

    // inflow at <T,1> per trace
    std::vector<S> end_mass(ts.point_count(), S(0));
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        const Trace& tr = ts.trace(t);
        end_mass[tr.end()] += pi[ts.state_id({t, static_cast<std::int32_t>(tr.size()) - 1})];
    }
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        const Trace& tr = ts.trace(t);
        const std::int32_t len = static_cast<std::int32_t>(tr.size());
        for (std::int32_t i = 2; i < len; ++i)
            if (!close(pi[ts.state_id({t, i})], pi[ts.state_id({t, i - 1})])) return false;
        if (!close(pi[ts.state_id({t, 1})], S(end_mass[tr.start()] * m.rule.prob(t)))) return false;
    }
    return true;
}

// Theorem-1 direction (b): sigma(u) proportional to sum over Out(u) of pi(<T,1>).
template <class S>
StationaryVector<S> project_pi_to_sigma(const MTModel<S>& m, const KernelChain<S>& k,
                                        const StationaryVector<S>& pi) {
    if (pi.kind != StationaryKind::full || !pi_is_stationary(m, pi.values))
        fail(Errc::not_stationary_input, "pi is not stationary for the full chain");
    const TraceSet& ts = m.ts();
    StationaryVector<S> sigma;
    sigma.kind = StationaryKind::kernel;
    sigma.values.assign(k.size(), S(0));
    S total(0);
    for (TraceId t = 0; t < ts.trace_count(); ++t) {
        const S& v = pi.values[ts.state_id({t, 1})];
        sigma.values[k.index_of_point[ts.trace(t).start()]] += v;
        total += v;
    }
    for (S& v : sigma.values) v /= total;
    return sigma;
}

// True iff every point reaches every point through positive-probability
// trace choices.
template <class S>
bool is_strongly_connected(const MTModel<S>& m) {
    KernelChain<S> k = build_kernel(m);
    auto scc = strongly_connected_components(k.adjacency());
    return scc.count == 1;
}

struct UniformityReport {
    bool uniformly_selective = false;
    bool balanced = false;
    bool uniform_stationary = false;  // the Theorem-5 predicate
};

template <class S>
UniformityReport uniformity_test(const MTModel<S>& m) {
    const TraceSet& ts = m.ts();
    UniformityReport r;
    r.uniformly_selective = m.rule.uniformly_selective(ts);
    r.balanced = true;
    for (PointId u = 0; u < ts.point_count(); ++u)
        if (ts.in(u).size() != ts.out(u).size()) {
            r.balanced = false;
            break;
        }
    r.uniform_stationary = r.uniformly_selective && r.balanced;
    return r;
}

}  // namespace mtm
