#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "coarsekit/rng.hpp"

namespace coarsekit {

/// Dense symmetric matrix, full row-major storage. Sizes here are desk
/// scale (a few thousand at most), so no packed storage.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    void set_sym(int i, int j, double v) {
        at(i, j) = v;
        at(j, i) = v;
    }
};

struct EigenSystem {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // vectors[k] pairs with values[k]; empty if not requested
};

/// Cyclic Jacobi for symmetric matrices. Rotations are applied until the
/// off-diagonal one-norm drops below tol * (initial scale). Eigenvalues
/// come back sorted ascending with matching eigenvectors.
inline EigenSystem jacobi_eigensystem(SymMatrix m, bool want_vectors = false,
                                      double tol = 1e-12, int max_sweeps = 64) {
    const int n = m.n;
    EigenSystem out;
    if (n == 0) return out;
    if (n == 1) {
        out.values = {m.at(0, 0)};
        if (want_vectors) out.vectors = {{1.0}};
        return out;
    }

    std::vector<double> v;
    if (want_vectors) {
        v.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
    }

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m.at(i, j)));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(m.at(p, q));
        if (off <= tol * scale) break;
        const double thresh = (sweep < 3) ? 0.2 * off / (n * n) : 0.0;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(m.at(p, p)) + g == std::abs(m.at(p, p)) &&
                    std::abs(m.at(q, q)) + g == std::abs(m.at(q, q))) {
                    m.set_sym(p, q, 0.0);
                    continue;
                }
                if (std::abs(apq) <= thresh) continue;

                const double h = m.at(q, q) - m.at(p, p);
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double delta = t * apq;

                m.at(p, p) -= delta;
                m.at(q, q) += delta;
                m.set_sym(p, q, 0.0);

                auto rotate = [&](double& x, double& y) {
                    const double gx = x;
                    const double hy = y;
                    x = gx - s * (hy + gx * tau);
                    y = hy + s * (gx - hy * tau);
                };
                for (int j = 0; j < p; ++j) {
                    rotate(m.at(j, p), m.at(j, q));
                    m.at(p, j) = m.at(j, p);
                    m.at(q, j) = m.at(j, q);
                }
                for (int j = p + 1; j < q; ++j) {
                    rotate(m.at(p, j), m.at(j, q));
                    m.at(j, p) = m.at(p, j);
                    m.at(q, j) = m.at(j, q);
                }
                for (int j = q + 1; j < n; ++j) {
                    rotate(m.at(p, j), m.at(q, j));
                    m.at(j, p) = m.at(p, j);
                    m.at(j, q) = m.at(q, j);
                }
                if (want_vectors) {
                    for (int j = 0; j < n; ++j)
                        rotate(v[static_cast<std::size_t>(j) * n + p],
                               v[static_cast<std::size_t>(j) * n + q]);
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return m.at(x, x) < m.at(y, y); });

    out.values.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.values[static_cast<std::size_t>(k)] = m.at(order[k], order[k]);
    if (want_vectors) {
        out.vectors.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                out.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                    v[static_cast<std::size_t>(i) * n + order[k]];
    }
    return out;
}

using MatVec = std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Power iteration for a symmetric operator; returns the Rayleigh quotient
/// of the converged iterate (the dominant-in-magnitude eigenvalue, signed).
/// Stops on the residual ||Ax - ray*x||, which for symmetric operators
/// bounds the distance from ray to the spectrum, so the returned value
/// carries a certified error. The start vector is seed-fixed so repeat
/// runs are bitwise identical.
inline double power_dominant_eigen(const MatVec& apply, int n, std::uint64_t seed = 12345,
                                   double rel_tol = 1e-11, int max_iters = 200000) {
    if (n <= 0) throw std::invalid_argument("power_dominant_eigen: empty operator");
    Rng rng(seed ^ (static_cast<std::uint64_t>(n) << 32));
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& xi : x) xi = rng.uniform(-1.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(n));

    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double t : v) s += t * t;
        return std::sqrt(s);
    };

    double nx = norm(x);
    if (nx == 0.0) {
        x[0] = 1.0;
        nx = 1.0;
    }
    for (auto& xi : x) xi /= nx;

    double lambda = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        apply(x, y);
        double ray = 0.0;
        for (int i = 0; i < n; ++i)
            ray += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
        double residual2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = y[static_cast<std::size_t>(i)] - ray * x[static_cast<std::size_t>(i)];
            residual2 += r * r;
        }
        if (std::sqrt(residual2) <= rel_tol * std::max(1.0, std::abs(ray))) return ray;
        const double ny = norm(y);
        if (ny == 0.0) return 0.0; // operator annihilates the iterate
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] / ny;
        lambda = ray;
    }
    return lambda;
}

/// Operator 2-norm via power iteration on A^T A.
inline double operator_norm_power(const MatVec& apply, const MatVec& apply_transpose, int n_rows,
                                  int n_cols, std::uint64_t seed = 12345, double rel_tol = 1e-11,
                                  int max_iters = 200000) {
    std::vector<double> mid(static_cast<std::size_t>(n_rows));
    MatVec ata = [&](const std::vector<double>& in, std::vector<double>& out) {
        apply(in, mid);
        apply_transpose(mid, out);
    };
    const double top = power_dominant_eigen(ata, n_cols, seed, rel_tol, max_iters);
    return std::sqrt(std::max(0.0, top));
}

} // namespace coarsekit
