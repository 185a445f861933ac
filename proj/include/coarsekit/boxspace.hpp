#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"
#include "coarsekit/metric.hpp"

namespace coarsekit {

/// Finite prefix of a coarse disjoint union: connected graph pieces, each
/// carrying its edge metric, glued far apart. Cross-piece distances run
/// through per-piece basepoints (vertex 0) and rays r_k = ceil(spacing(k)/2)
/// to a virtual hub:
///
///     d(x in X_m, y in X_n) = d_m(x, b_m) + r_m + r_n + d_n(b_n, y),  m != n.
///
/// This is the shortest-path metric of gluing a length-r_k ray to each
/// basepoint, so the triangle inequality holds unconditionally, pieces keep
/// their edge metric exactly, and the piece separations r_m + r_n are at
/// least spacing(min(m,n)) and grow along the sequence.
class BoxSpace {
public:
    static BoxSpace assemble(std::vector<FiniteGraph> pieces,
                             const std::vector<long long>& spacing) {
        if (pieces.empty()) throw Error("BoxSpace: need at least one piece");
        if (spacing.size() != pieces.size())
            throw Error("BoxSpace: spacing must list one value per piece");
        for (std::size_t k = 0; k + 1 < spacing.size(); ++k)
            if (spacing[k] >= spacing[k + 1])
                throw Error("BoxSpace: spacing must be strictly increasing, violated at pieces " +
                            std::to_string(k + 1) + "," + std::to_string(k + 2) + " (" +
                            std::to_string(spacing[k]) + " >= " + std::to_string(spacing[k + 1]) +
                            ")");
        if (spacing.front() <= 0) throw Error("BoxSpace: spacing must be positive");

        BoxSpace b;
        b.pieces_ = std::move(pieces);
        b.spacing_ = spacing;
        int total = 0;
        for (std::size_t k = 0; k < b.pieces_.size(); ++k) {
            const auto& g = b.pieces_[k];
            if (!g.is_connected())
                throw Error("BoxSpace: piece " + std::to_string(k + 1) + " is disconnected");
            b.offsets_.push_back(total);
            total += g.vertex_count();
            b.piece_metrics_.push_back(shortest_path_metric(g));
            b.girths_.push_back(girth(g));
            b.rays_.push_back(static_cast<long long>((spacing[k] + 1) / 2));
        }

        b.realized_ = FiniteMetricSpace(total);
        for (std::size_t m = 0; m < b.pieces_.size(); ++m) {
            const auto& dm = b.piece_metrics_[m];
            for (int x = 0; x < b.pieces_[m].vertex_count(); ++x)
                for (int y = 0; y < b.pieces_[m].vertex_count(); ++y)
                    b.realized_.set(b.offsets_[m] + x, b.offsets_[m] + y, dm.at(x, y));
            for (std::size_t n = m + 1; n < b.pieces_.size(); ++n) {
                const auto& dn = b.piece_metrics_[n];
                const double bridge = static_cast<double>(b.rays_[m] + b.rays_[n]);
                for (int x = 0; x < b.pieces_[m].vertex_count(); ++x)
                    for (int y = 0; y < b.pieces_[n].vertex_count(); ++y)
                        b.realized_.set(b.offsets_[m] + x, b.offsets_[n] + y,
                                        dm.at(x, 0) + bridge + dn.at(0, y));
            }
        }
        return b;
    }

    /// Default schedule: spacing(k) = k + max piece diameter seen so far.
    static std::vector<long long> default_spacing(const std::vector<FiniteGraph>& pieces) {
        std::vector<long long> s;
        long long maxdiam = 0;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            if (!pieces[k].is_connected())
                throw Error("BoxSpace: piece " + std::to_string(k + 1) + " is disconnected");
            maxdiam = std::max(maxdiam, static_cast<long long>(pieces[k].diameter()));
            s.push_back(static_cast<long long>(k + 1) + maxdiam);
        }
        return s;
    }

    static BoxSpace assemble_default(std::vector<FiniteGraph> pieces) {
        auto s = default_spacing(pieces);
        return assemble(std::move(pieces), s);
    }

    int piece_count() const { return static_cast<int>(pieces_.size()); }
    const FiniteGraph& piece(int k) const { return pieces_[static_cast<std::size_t>(k)]; }
    const FiniteMetricSpace& piece_metric(int k) const {
        return piece_metrics_[static_cast<std::size_t>(k)];
    }
    std::optional<int> piece_girth(int k) const { return girths_[static_cast<std::size_t>(k)]; }
    long long spacing(int k) const { return spacing_[static_cast<std::size_t>(k)]; }
    const FiniteMetricSpace& realized() const { return realized_; }
    int total_points() const { return realized_.point_count(); }

    /// Uniform degree bound over the pieces.
    int degree_bound() const {
        int d = 0;
        for (const auto& g : pieces_) d = std::max(d, g.max_degree());
        return d;
    }

    int global_index(int piece, int vertex) const {
        return offsets_[static_cast<std::size_t>(piece)] + vertex;
    }
    int piece_offset(int piece) const { return offsets_[static_cast<std::size_t>(piece)]; }

    int piece_of(int global) const {
        int k = static_cast<int>(offsets_.size()) - 1;
        while (k > 0 && offsets_[static_cast<std::size_t>(k)] > global) --k;
        return k;
    }

    /// Realized distance from piece k to the union of the other pieces.
    long long separation(int k) const {
        long long best = -1;
        for (int m = 0; m < piece_count(); ++m) {
            if (m == k) continue;
            const long long s = rays_[static_cast<std::size_t>(k)] + rays_[static_cast<std::size_t>(m)];
            if (best < 0 || s < best) best = s;
        }
        return best; // -1 for a single piece (no other piece to separate from)
    }

private:
    std::vector<FiniteGraph> pieces_;
    std::vector<FiniteMetricSpace> piece_metrics_;
    std::vector<long long> spacing_;
    std::vector<long long> rays_;
    std::vector<int> offsets_;
    std::vector<std::optional<int>> girths_;
    FiniteMetricSpace realized_;
};

} // namespace coarsekit
