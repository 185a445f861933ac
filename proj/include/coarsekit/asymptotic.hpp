#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarsekit/boxspace.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/parallel.hpp"

namespace coarsekit {

struct BallVerdict {
    int piece = 0;   // 1-based piece index
    int center = 0;  // global point index in the box space
    bool cnd = false;
    double max_eigenvalue = 0.0;
};

/// Certificate that a kernel on a box space is conditionally negative
/// definite on every configuration of diameter <= radius outside the first
/// excluded_prefix pieces. The excluded prefix is chosen so that beyond it
/// every piece is separated from the rest by more than the radius (a ball
/// cannot straddle pieces) and has girth >= 2*radius; the per-ball checks
/// then cover every small configuration, since a set of diameter <= r lies
/// in the radius-r ball around any of its points and CND passes to subsets.
struct AsymptoticCndReport {
    int radius = 0;
    int excluded_prefix = 0;           // pieces 1..excluded_prefix form K(r)
    bool certified = false;
    int failing_piece = -1;            // 1-based; set when no valid prefix exists
    std::optional<BallVerdict> failing_ball;
    std::vector<BallVerdict> balls;    // one per center beyond the prefix
};

inline AsymptoticCndReport asymptotic_cnd_check(const BoxSpace& box, const Kernel& k, int radius,
                                                std::optional<double> tol = std::nullopt) {
    if (k.point_count() != box.total_points())
        throw Error("asymptotic_cnd_check: kernel is not defined on the realized box space");
    if (radius < 0) throw Error("asymptotic_cnd_check: radius must be >= 0");

    AsymptoticCndReport rep;
    rep.radius = radius;

    const int pieces = box.piece_count();
    auto qualifies = [&](int p) {
        if (radius == 0) return true;
        if (pieces > 1 && box.separation(p) <= radius) return false;
        const auto g = box.piece_girth(p);
        return !g.has_value() || *g >= 2 * radius;
    };

    int prefix = pieces;
    while (prefix > 0 && qualifies(prefix - 1)) --prefix;
    rep.excluded_prefix = prefix;
    if (prefix == pieces) {
        rep.failing_piece = pieces; // even the last piece disqualifies
        return rep;
    }

    std::vector<int> centers;
    for (int p = prefix; p < pieces; ++p)
        for (int v = 0; v < box.piece(p).vertex_count(); ++v)
            centers.push_back(box.global_index(p, v));

    rep.balls.assign(centers.size(), BallVerdict{});
    const auto& metric = box.realized();
    parallel_for(centers.size(), [&](std::size_t i) {
        const int c = centers[i];
        const auto pts = metric.ball(c, radius);
        const CndVerdict v = is_cnd_projected(k.restrict(pts), tol);
        rep.balls[i] = BallVerdict{box.piece_of(c) + 1, c, v.is_cnd(), v.max_eigenvalue};
    });

    rep.certified = true;
    for (const auto& b : rep.balls)
        if (!b.cnd) {
            rep.certified = false;
            if (!rep.failing_ball) rep.failing_ball = b;
        }
    return rep;
}

} // namespace coarsekit
