#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mtm/numeric.hpp"

namespace mtm {

template <class S>
struct SparseEntry {
    int row;
    int col;
    S value;
};

namespace detail {

// Gaussian elimination on a dense system. Exact for rational scalars;
// partial pivoting by magnitude for doubles.
template <class S>
std::optional<std::vector<S>> solve_dense(std::vector<std::vector<S>> a, std::vector<S> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        if constexpr (num::traits<S>::exact) {
            for (std::size_t r = col; r < n; ++r)
                if (!num::is_zero(a[r][col])) {
                    pivot = r;
                    break;
                }
        } else {
            S best(0);
            for (std::size_t r = col; r < n; ++r) {
                S mag = num::abs_val(a[r][col]);
                if (pivot == n || best < mag) {
                    best = mag;
                    pivot = r;
                }
            }
            if (pivot != n && num::is_zero(a[pivot][col])) pivot = n;
        }
        if (pivot == n) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (num::is_zero(a[r][col])) continue;
            S factor = a[r][col] / a[col][col];
            a[r][col] = S(0);
            for (std::size_t c = col + 1; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<S> x(n, S(0));
    for (std::size_t ri = n; ri-- > 0;) {
        S acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a[ri][c] * x[c];
        x[ri] = acc / a[ri][ri];
    }
    return x;
}

}  // namespace detail

// Solves sigma K = sigma with sum(sigma) = 1 on a dense copy of the sparse
// kernel restricted to `n` states. Entries are (row=u, col=v, K(u,v)).
template <class S>
std::optional<std::vector<S>> stationary_dense(int n, const std::vector<SparseEntry<S>>& entries) {
    // (K^T - I) sigma = 0 with the last balance equation replaced by sum = 1.
    std::vector<std::vector<S>> a(n, std::vector<S>(n, S(0)));
    for (const auto& e : entries) a[e.col][e.row] += e.value;
    for (int i = 0; i < n; ++i) a[i][i] -= S(1);
    std::vector<S> b(n, S(0));
    for (int c = 0; c < n; ++c) a[n - 1][c] = S(1);
    b[n - 1] = S(1);
    return detail::solve_dense(std::move(a), std::move(b));
}

// Float-only large-instance paths, implemented in sparse_solve.cpp.
std::optional<std::vector<double>> stationary_sparse_lu(
    int n, const std::vector<SparseEntry<double>>& entries);

// Power iteration on the lazy transform (K+I)/2, which has the same
// stationary vector and converges for periodic chains too.
std::optional<std::vector<double>> stationary_power_iteration(
    int n, const std::vector<SparseEntry<double>>& entries, double tol = 1e-13,
    std::int64_t max_iter = 1000000);

}  // namespace mtm
