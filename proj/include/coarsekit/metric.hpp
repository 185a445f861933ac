#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"

namespace coarsekit {

/// Finite metric space as a dense symmetric distance matrix. Entries are
/// doubles; graph-derived spaces carry exact integers.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    explicit FiniteMetricSpace(int n)
        : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}

    FiniteMetricSpace(int n, std::vector<double> dist) : n_(n), d_(std::move(dist)) {
        if (d_.size() != static_cast<std::size_t>(n) * n)
            throw Error("FiniteMetricSpace: matrix size mismatch");
    }

    int point_count() const { return n_; }
    double at(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        d_[static_cast<std::size_t>(i) * n_ + j] = v;
        d_[static_cast<std::size_t>(j) * n_ + i] = v;
    }
    const std::vector<double>& raw() const { return d_; }

    double diameter() const {
        double m = 0.0;
        for (double v : d_) m = std::max(m, v);
        return m;
    }

    bool is_integer(double eps = 1e-9) const {
        for (double v : d_)
            if (std::abs(v - std::round(v)) > eps) return false;
        return true;
    }

    struct TripleWitness {
        int i, j, k;
        double slack; // d(i,j) - d(i,k) - d(k,j), positive when violated
    };

    /// Full triple scan. Returns a violating triple when the matrix is not
    /// a metric (zero diagonal, symmetry and the triangle inequality).
    std::optional<TripleWitness> validate(double eps = 1e-9) const {
        for (int i = 0; i < n_; ++i) {
            if (std::abs(at(i, i)) > eps) return TripleWitness{i, i, i, std::abs(at(i, i))};
            for (int j = 0; j < i; ++j) {
                if (std::abs(at(i, j) - at(j, i)) > eps)
                    return TripleWitness{i, j, j, std::abs(at(i, j) - at(j, i))};
                if (at(i, j) < -eps) return TripleWitness{i, j, j, -at(i, j)};
            }
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) {
                    const double slack = at(i, j) - at(i, k) - at(k, j);
                    if (slack > eps) return TripleWitness{i, j, k, slack};
                }
        return std::nullopt;
    }

    /// Metric restricted to a point subset, relabelled by input order.
    FiniteMetricSpace restrict(const std::vector<int>& points) const {
        const int m = static_cast<int>(points.size());
        FiniteMetricSpace r(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                r.d_[static_cast<std::size_t>(i) * m + j] =
                    at(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
        return r;
    }

    /// Closed ball as a sorted index list.
    std::vector<int> ball(int center, double radius) const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (at(center, v) <= radius + 1e-12) out.push_back(v);
        return out;
    }

private:
    int n_ = 0;
    std::vector<double> d_;
};

/// All-pairs BFS metric of a connected graph. Disconnected input is
/// rejected naming one vertex pair with no path between them.
inline FiniteMetricSpace shortest_path_metric(const FiniteGraph& g) {
    const int n = g.vertex_count();
    FiniteMetricSpace m(n);
    for (int v = 0; v < n; ++v) {
        const auto dist = g.bfs_distances(v);
        for (int u = 0; u < n; ++u) {
            if (dist[static_cast<std::size_t>(u)] < 0)
                throw Error("shortest_path_metric: graph disconnected, no path between vertices " +
                            std::to_string(v) + " and " + std::to_string(u));
            m.set(v, u, static_cast<double>(dist[static_cast<std::size_t>(u)]));
        }
    }
    return m;
}

} // namespace coarsekit
