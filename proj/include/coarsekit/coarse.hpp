#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/metric.hpp"

namespace coarsekit {

/// Point map between finite metric spaces with its tightest nondecreasing
/// control envelopes over integer distances:
///   rho_minus(t) = min { d(fx, fy) : d(x, y) >= t }
///   rho_plus(t)  = max { d(fx, fy) : d(x, y) <= t }
/// so rho_minus(d(x,y)) <= d(fx,fy) <= rho_plus(d(x,y)) holds for every
/// pair by construction. Coarse embedding is an asymptotic notion, so the
/// quality of the lower envelope is reported, never asserted.
struct CoarseMap {
    FiniteMetricSpace source;
    FiniteMetricSpace target;
    std::vector<int> map;
    std::vector<double> rho_minus; // index t = 0 .. ceil(source diameter)
    std::vector<double> rho_plus;
    bool degenerate = false;           // rho_plus identically zero
    int strict_increase_from = -1;     // least T with rho_minus strictly increasing on [T, diam]

    double eval_rho_minus(double t) const {
        if (rho_minus.empty()) return 0.0;
        const auto idx = static_cast<std::size_t>(std::clamp(
            t, 0.0, static_cast<double>(rho_minus.size() - 1)));
        return rho_minus[idx];
    }

    double eval_rho_plus(double t) const {
        if (rho_plus.empty()) return 0.0;
        const auto idx = static_cast<std::size_t>(std::clamp(
            std::ceil(t), 0.0, static_cast<double>(rho_plus.size() - 1)));
        return rho_plus[idx];
    }
};

inline CoarseMap control_envelopes(const std::vector<int>& f, const FiniteMetricSpace& source,
                                   const FiniteMetricSpace& target) {
    const int n = source.point_count();
    if (static_cast<int>(f.size()) != n)
        throw Error("control_envelopes: map defined on " + std::to_string(f.size()) +
                    " of " + std::to_string(n) + " source points");
    for (int x = 0; x < n; ++x)
        if (f[static_cast<std::size_t>(x)] < 0 || f[static_cast<std::size_t>(x)] >= target.point_count())
            throw Error("control_envelopes: image of point " + std::to_string(x) +
                        " outside the target");

    CoarseMap cm;
    cm.source = source;
    cm.target = target;
    cm.map = f;

    const int diam = static_cast<int>(std::ceil(source.diameter()));
    cm.rho_plus.assign(static_cast<std::size_t>(diam) + 1, 0.0);
    cm.rho_minus.assign(static_cast<std::size_t>(diam) + 1, 0.0);

    for (int t = 0; t <= diam; ++t) {
        double up = 0.0;
        std::optional<double> lo;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const double d = source.at(x, y);
                const double img = target.at(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]);
                if (d <= t + 1e-12) up = std::max(up, img);
                if (d >= t - 1e-12) lo = lo ? std::min(*lo, img) : img;
            }
        cm.rho_plus[static_cast<std::size_t>(t)] = up;
        cm.rho_minus[static_cast<std::size_t>(t)] = lo.value_or(
            t > 0 ? cm.rho_minus[static_cast<std::size_t>(t) - 1] : 0.0);
    }

    cm.degenerate = cm.rho_plus.back() <= 1e-12;
    cm.strict_increase_from = diam;
    for (int t = diam; t >= 1; --t) {
        if (cm.rho_minus[static_cast<std::size_t>(t)] >
            cm.rho_minus[static_cast<std::size_t>(t) - 1] + 1e-12)
            cm.strict_increase_from = t - 1;
        else
            break;
    }
    if (diam == 0) cm.strict_increase_from = 0;
    return cm;
}

struct CoarseEquivalenceCheck {
    bool equivalent = false;
    int farthest_target = -1;  // witness when not equivalent
    double farthest_distance = 0.0;
};

/// True iff every target point lies within C of the image of the map.
inline CoarseEquivalenceCheck is_coarse_equivalence(const CoarseMap& f, double c) {
    CoarseEquivalenceCheck out;
    double worst = -1.0;
    for (int y = 0; y < f.target.point_count(); ++y) {
        double best = -1.0;
        for (int x : f.map) {
            const double d = f.target.at(y, x);
            if (best < 0 || d < best) best = d;
        }
        if (best > worst) {
            worst = best;
            out.farthest_target = y;
        }
    }
    out.farthest_distance = worst;
    out.equivalent = worst <= c + 1e-12;
    return out;
}

struct ApproximateInverse {
    CoarseMap inverse;              // target -> source
    double forward_displacement;    // sup_y d(y, f(g(y)))
    double backward_displacement;   // sup_x d(x, g(f(x)))
};

/// g(y) = the source point whose image is nearest to y (lowest index on
/// ties). Requires f to be a coarse equivalence at scale C.
inline ApproximateInverse approximate_inverse(const CoarseMap& f, double c) {
    const auto check = is_coarse_equivalence(f, c);
    if (!check.equivalent)
        throw Error("approximate_inverse: not a coarse equivalence at C = " + std::to_string(c) +
                    "; target point " + std::to_string(check.farthest_target) + " is at distance " +
                    std::to_string(check.farthest_distance) + " from the image");

    const int m = f.target.point_count();
    std::vector<int> g(static_cast<std::size_t>(m), 0);
    for (int y = 0; y < m; ++y) {
        int best = 0;
        double bestd = f.target.at(y, f.map[0]);
        for (int x = 1; x < f.source.point_count(); ++x) {
            const double d = f.target.at(y, f.map[static_cast<std::size_t>(x)]);
            if (d < bestd - 1e-12) {
                bestd = d;
                best = x;
            }
        }
        g[static_cast<std::size_t>(y)] = best;
    }

    ApproximateInverse out{control_envelopes(g, f.target, f.source), 0.0, 0.0};
    for (int y = 0; y < m; ++y)
        out.forward_displacement = std::max(
            out.forward_displacement,
            f.target.at(y, f.map[static_cast<std::size_t>(g[static_cast<std::size_t>(y)])]));
    for (int x = 0; x < f.source.point_count(); ++x)
        out.backward_displacement = std::max(
            out.backward_displacement,
            f.source.at(x, g[static_cast<std::size_t>(f.map[static_cast<std::size_t>(x)])]));
    return out;
}

/// (f*k)(x, y) = k(f(x), f(y)); zero diagonal and symmetry are inherited.
inline Kernel pullback_kernel(const std::vector<int>& f, const Kernel& k, int source_points) {
    if (static_cast<int>(f.size()) != source_points)
        throw Error("pullback_kernel: map size mismatch");
    for (int x : f)
        if (x < 0 || x >= k.point_count())
            throw Error("pullback_kernel: map image outside the kernel's point set");
    Kernel out(source_points);
    for (int i = 0; i < source_points; ++i)
        for (int j = 0; j <= i; ++j)
            out.set(i, j, k.at(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]));
    return out;
}

inline Kernel pullback_kernel(const CoarseMap& f, const Kernel& k) {
    if (k.point_count() != f.target.point_count())
        throw Error("pullback_kernel: kernel is not defined on the map's target");
    return pullback_kernel(f.map, k, f.source.point_count());
}

} // namespace coarsekit
