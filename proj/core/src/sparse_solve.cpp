#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "mtm/linalg.hpp"

namespace mtm {

std::optional<std::vector<double>> stationary_sparse_lu(
    int n, const std::vector<SparseEntry<double>>& entries) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(entries.size() + 2 * n);
    for (const auto& e : entries) {
        if (e.col == n - 1) continue;  // row replaced by the normalization
        trip.emplace_back(e.col, e.row, e.value);
    }
    for (int i = 0; i < n - 1; ++i) trip.emplace_back(i, i, -1.0);
    for (int c = 0; c < n; ++c) trip.emplace_back(n - 1, c, 1.0);

    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) return std::nullopt;

    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b[n - 1] = 1.0;
    Eigen::VectorXd x = lu.solve(b);
    if (lu.info() != Eigen::Success) return std::nullopt;
    return std::vector<double>(x.data(), x.data() + n);
}

std::optional<std::vector<double>> stationary_power_iteration(
    int n, const std::vector<SparseEntry<double>>& entries, double tol, std::int64_t max_iter) {
    std::vector<double> x(n, 1.0 / n), next(n);
    for (std::int64_t it = 0; it < max_iter; ++it) {
        // next = x * (K + I) / 2
        for (int i = 0; i < n; ++i) next[i] = 0.5 * x[i];
        for (const auto& e : entries) next[e.col] += 0.5 * x[e.row] * e.value;
        double sum = 0;
        for (double v : next) sum += v;
        double err = 0;
        for (int i = 0; i < n; ++i) {
            next[i] /= sum;
            err = std::max(err, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (err < tol) return x;
    }
    return std::nullopt;
}

}  // namespace mtm
