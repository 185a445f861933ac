#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/asymptotic.hpp"
#include "coarsekit/boxspace.hpp"
#include "coarsekit/coarse.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/metric.hpp"
#include "coarsekit/parallel.hpp"

namespace coarsekit {

/// Ambient finite metric space with a distinguished subset Z carrying a
/// piece structure, the finite stand-in for a group containing a coarsely
/// embedded box space. N_R(Z) filtrations are derived from the metric.
struct HostSpace {
    FiniteMetricSpace metric;
    std::vector<int> z;                     // sorted host indices
    std::vector<std::vector<int>> z_pieces; // host indices per piece, in box order

    double dist_to_z(int x) const {
        double best = -1.0;
        for (int zz : z) {
            const double d = metric.at(x, zz);
            if (best < 0 || d < best) best = d;
        }
        return best;
    }

    /// Sorted host indices of N_R(Z) = { x : d(x, Z) <= R }.
    std::vector<int> neighborhood(double r) const {
        std::vector<int> out;
        for (int x = 0; x < metric.point_count(); ++x)
            if (dist_to_z(x) <= r + 1e-12) out.push_back(x);
        return out;
    }

    int z_local_index(int host_index) const {
        const auto it = std::lower_bound(z.begin(), z.end(), host_index);
        if (it == z.end() || *it != host_index) return -1;
        return static_cast<int>(it - z.begin());
    }

    int piece_of_z(int host_index) const {
        for (std::size_t p = 0; p < z_pieces.size(); ++p)
            for (int v : z_pieces[p])
                if (v == host_index) return static_cast<int>(p);
        return -1;
    }
};

/// p_R : N_R(Z) -> Z for R = 0..r_max. p_0 is the identity on Z, each
/// p_{R+1} extends p_R, and new points go to the nearest Z point (lowest
/// index on ties), so d(p_{R+1}(x), x) <= R+1.
struct RetractionFamily {
    int r_max = 0;
    std::vector<std::vector<int>> p; // p[R][host] = Z host index, -1 outside N_R(Z)
};

inline RetractionFamily neighborhood_retraction(const HostSpace& h, int r_max) {
    if (r_max < 0) throw Error("neighborhood_retraction: r_max must be >= 0");
    const int n = h.metric.point_count();
    RetractionFamily rf;
    rf.r_max = r_max;
    rf.p.assign(static_cast<std::size_t>(r_max) + 1, std::vector<int>(static_cast<std::size_t>(n), -1));

    for (int zz : h.z) rf.p[0][static_cast<std::size_t>(zz)] = zz;
    for (int r = 1; r <= r_max; ++r) {
        for (int x = 0; x < n; ++x) {
            if (rf.p[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(x)] >= 0) {
                rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)] =
                    rf.p[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(x)];
                continue;
            }
            const double dz = h.dist_to_z(x);
            if (dz > r + 1e-12) continue;
            int best = -1;
            double bestd = 0.0;
            for (int zz : h.z) {
                const double d = h.metric.at(x, zz);
                if (best < 0 || d < bestd - 1e-12) {
                    best = zz;
                    bestd = d;
                }
            }
            if (bestd > r + 1e-12)
                throw Error("neighborhood_retraction: point " + std::to_string(x) +
                            " in N_" + std::to_string(r) + "(Z) but nearest Z point at distance " +
                            std::to_string(bestd));
            rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)] = best;
        }
    }
    return rf;
}

// ---------------------------------------------------------------------------

/// Kernel k_R on N_R(Z): the box distance pulled back along c ∘ p_R. The
/// retractions extend each other, so k_R restricted to N_S(Z) equals k_S
/// entrywise for S < R.
struct ExtendedKernel {
    int radius = 0;                 // the R of N_R(Z)
    std::vector<int> points;        // sorted host indices of N_R(Z)
    std::vector<int> local;         // host index -> position in points, -1 outside
    Kernel kernel;                  // over points
    PropernessProfile properness;   // against the host metric restricted to points

    double at_host(int x, int y) const {
        return kernel.at(local[static_cast<std::size_t>(x)], local[static_cast<std::size_t>(y)]);
    }
};

inline ExtendedKernel extended_kernel(const HostSpace& h, const CoarseMap& c, const BoxSpace& box,
                                      const RetractionFamily& rf, int r) {
    if (r < 0 || r > rf.r_max)
        throw Error("extended_kernel: R = " + std::to_string(r) + " outside retraction family (r_max " +
                    std::to_string(rf.r_max) + ")");
    if (c.source.point_count() != static_cast<int>(h.z.size()))
        throw Error("extended_kernel: coarse map must be defined on Z");
    if (c.target.point_count() != box.total_points())
        throw Error("extended_kernel: coarse map must land in the realized box space");

    ExtendedKernel ek;
    ek.radius = r;
    ek.points = h.neighborhood(r);
    ek.local.assign(static_cast<std::size_t>(h.metric.point_count()), -1);
    for (std::size_t i = 0; i < ek.points.size(); ++i)
        ek.local[static_cast<std::size_t>(ek.points[i])] = static_cast<int>(i);

    const int m = static_cast<int>(ek.points.size());
    ek.kernel = Kernel(m);
    auto image = [&](int host) {
        const int zz = rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(host)];
        return c.map[static_cast<std::size_t>(h.z_local_index(zz))];
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j)
            ek.kernel.set(i, j, box.realized().at(image(ek.points[static_cast<std::size_t>(i)]),
                                                  image(ek.points[static_cast<std::size_t>(j)])));

    ek.properness = properness_profile(ek.kernel, h.metric.restrict(ek.points));
    return ek;
}

/// Entrywise equality of k_big restricted to the smaller neighborhood.
inline bool extended_kernels_nested(const ExtendedKernel& small, const ExtendedKernel& big) {
    for (std::size_t i = 0; i < small.points.size(); ++i)
        for (std::size_t j = 0; j < small.points.size(); ++j) {
            const int x = small.points[i];
            const int y = small.points[j];
            if (big.local[static_cast<std::size_t>(x)] < 0 || big.local[static_cast<std::size_t>(y)] < 0)
                return false;
            if (small.at_host(x, y) != big.at_host(x, y)) return false;
        }
    return true;
}

/// Per-ball CND scan of an extended kernel, following the box-space
/// certificate: pieces whose host separation exceeds the radius and whose
/// underlying graph girth is >= 2*radius are scanned ball by ball; the
/// rest form the excluded prefix.
inline AsymptoticCndReport extended_kernel_acnd(const HostSpace& h, const ExtendedKernel& ek,
                                                const BoxSpace& box, const RetractionFamily& rf,
                                                int radius, std::optional<double> tol = std::nullopt) {
    AsymptoticCndReport rep;
    rep.radius = radius;

    const int pieces = static_cast<int>(h.z_pieces.size());
    // host points of N_R grouped by the piece of their retraction
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(pieces));
    for (int x : ek.points) {
        const int zz = rf.p[static_cast<std::size_t>(ek.radius)][static_cast<std::size_t>(x)];
        const int p = h.piece_of_z(zz);
        if (p < 0) throw Error("extended_kernel_acnd: retraction lands outside the piece structure");
        groups[static_cast<std::size_t>(p)].push_back(x);
    }

    auto separation = [&](int p) {
        double best = -1.0;
        for (int q = 0; q < pieces; ++q) {
            if (q == p) continue;
            for (int x : groups[static_cast<std::size_t>(p)])
                for (int y : groups[static_cast<std::size_t>(q)]) {
                    const double d = h.metric.at(x, y);
                    if (best < 0 || d < best) best = d;
                }
        }
        return best;
    };

    auto qualifies = [&](int p) {
        if (radius == 0) return true;
        if (pieces > 1) {
            const double sep = separation(p);
            if (sep >= 0 && sep <= radius) return false;
        }
        const auto g = box.piece_girth(p);
        return !g.has_value() || *g >= 2 * radius;
    };

    int prefix = pieces;
    while (prefix > 0 && qualifies(prefix - 1)) --prefix;
    rep.excluded_prefix = prefix;
    if (prefix == pieces) {
        rep.failing_piece = pieces;
        return rep;
    }

    std::vector<std::pair<int, int>> centers; // (piece, host index)
    for (int p = prefix; p < pieces; ++p)
        for (int x : groups[static_cast<std::size_t>(p)]) centers.emplace_back(p, x);

    rep.balls.assign(centers.size(), BallVerdict{});
    parallel_for(centers.size(), [&](std::size_t i) {
        const auto [p, c] = centers[i];
        std::vector<int> pts;
        for (int y : ek.points)
            if (h.metric.at(c, y) <= radius + 1e-12)
                pts.push_back(ek.local[static_cast<std::size_t>(y)]);
        const CndVerdict v = is_cnd_projected(ek.kernel.restrict(pts), tol);
        rep.balls[i] = BallVerdict{p + 1, c, v.is_cnd(), v.max_eigenvalue};
    });

    rep.certified = true;
    for (const auto& b : rep.balls)
        if (!b.cnd) {
            rep.certified = false;
            if (!rep.failing_ball) rep.failing_ball = b;
        }
    return rep;
}

// ---------------------------------------------------------------------------

/// Partial right translations on the host: each element carries a word
/// length, its inverse, and a partial point map (-1 where undefined). On a
/// genuine group ball with the word metric these satisfy d(x, xg) = l(g).
struct PatchElement {
    std::string name;
    long long length = 0;
    int inverse = -1;
    std::vector<int> map;
};

struct ActionPatch {
    std::vector<PatchElement> elems;
    int identity = -1;

    int apply(int g, int x) const {
        const auto& m = elems[static_cast<std::size_t>(g)].map;
        if (x < 0 || x >= static_cast<int>(m.size())) return -1;
        return m[static_cast<std::size_t>(x)];
    }
};

/// Everything needed to run finite-stage action checks together.
struct HostSystem {
    HostSpace host;
    BoxSpace box;
    CoarseMap c; // Z -> realized box space
    RetractionFamily retractions;
    ActionPatch patch;
};

/// h_fin(x, g) = k(x, xg); nullopt when the translate is undefined or
/// either point is outside the kernel's neighborhood.
inline std::optional<double> orbit_kernel(const HostSystem& sys, const ExtendedKernel& ek, int x,
                                          int g) {
    const int xg = sys.patch.apply(g, x);
    if (xg < 0) return std::nullopt;
    if (ek.local[static_cast<std::size_t>(x)] < 0 || ek.local[static_cast<std::size_t>(xg)] < 0)
        return std::nullopt;
    return ek.at_host(x, xg);
}

enum class ActionCheckStatus { Ok, NotApplicable };

struct ActionNegativityResult {
    ActionCheckStatus status = ActionCheckStatus::NotApplicable;
    double value = 0.0;
    bool nonpositive = false;
    std::string reason;
};

/// Evaluates sum_{i,j} t_i t_j k(x g_i, x g_j) for a sum-zero coefficient
/// vector, with every translate defined and outside the excluded prefix.
inline ActionNegativityResult verify_action_negativity(const HostSystem& sys,
                                                       const ExtendedKernel& ek, int x,
                                                       const std::vector<int>& gs,
                                                       const std::vector<double>& ts,
                                                       int excluded_prefix, double tol = 1e-9) {
    ActionNegativityResult out;
    if (gs.size() != ts.size()) {
        out.reason = "g and t lists differ in length";
        return out;
    }
    double sum = 0.0;
    for (double t : ts) sum += t;
    if (std::abs(sum) > 1e-12) {
        out.reason = "coefficients do not sum to zero";
        return out;
    }

    std::vector<int> translates;
    translates.reserve(gs.size());
    for (int g : gs) {
        const int xg = sys.patch.apply(g, x);
        if (xg < 0 || ek.local[static_cast<std::size_t>(xg)] < 0) {
            out.reason = "translate undefined or outside N_R(Z)";
            return out;
        }
        const int zz = sys.retractions.p[static_cast<std::size_t>(ek.radius)][static_cast<std::size_t>(xg)];
        const int piece = sys.host.piece_of_z(zz);
        if (piece < excluded_prefix) {
            out.reason = "translate lands in the excluded prefix";
            return out;
        }
        translates.push_back(xg);
    }

    double value = 0.0;
    for (std::size_t i = 0; i < translates.size(); ++i)
        for (std::size_t j = 0; j < translates.size(); ++j)
            value += ts[i] * ts[j] * ek.at_host(translates[i], translates[j]);
    out.status = ActionCheckStatus::Ok;
    out.value = value;
    out.nonpositive = value <= tol;
    return out;
}

struct ActionPropernessProfile {
    std::vector<long long> lengths;      // sorted achieved word lengths
    std::vector<double> min_value;       // min k(x, xg) per length
    std::vector<double> lower_envelope;  // largest nondecreasing minorant
    bool dominates_rho_minus = true;     // min_value(l) >= rho_-(l - R) for every achieved l
};

/// For each word length l, the minimum of k(x, xg) over pairs with both
/// ends in N_R(Z) and l(g) = l, compared against rho_-(l - R) of the
/// coarse map that built the kernel.
inline ActionPropernessProfile action_properness_profile(const HostSystem& sys,
                                                         const ExtendedKernel& ek) {
    std::vector<std::pair<long long, double>> samples;
    for (std::size_t g = 0; g < sys.patch.elems.size(); ++g) {
        const auto& el = sys.patch.elems[g];
        for (int x : ek.points) {
            const int xg = sys.patch.apply(static_cast<int>(g), x);
            if (xg < 0 || ek.local[static_cast<std::size_t>(xg)] < 0) continue;
            samples.emplace_back(el.length, ek.at_host(x, xg));
        }
    }
    std::sort(samples.begin(), samples.end());

    ActionPropernessProfile prof;
    for (const auto& [len, val] : samples) {
        if (prof.lengths.empty() || prof.lengths.back() != len) {
            prof.lengths.push_back(len);
            prof.min_value.push_back(val);
        } else {
            prof.min_value.back() = std::min(prof.min_value.back(), val);
        }
    }
    prof.lower_envelope = prof.min_value;
    for (std::size_t i = prof.lower_envelope.size(); i > 1; --i)
        prof.lower_envelope[i - 2] = std::min(prof.lower_envelope[i - 2], prof.lower_envelope[i - 1]);
    for (std::size_t i = 0; i < prof.lengths.size(); ++i) {
        const double bound = sys.c.eval_rho_minus(static_cast<double>(prof.lengths[i]) - ek.radius);
        if (prof.min_value[i] < bound - 1e-12) prof.dominates_rho_minus = false;
    }
    return prof;
}

// ---------------------------------------------------------------------------
// synthetic hosts

/// Box space plus a padding path of the given length hanging off every Z
/// vertex; realizes the N_R(Z) filtration exactly. Host indices 0..B-1 are
/// the box points; padding point a in 1..pad(z) of vertex z follows.
inline HostSpace host_from_box_with_padding(const BoxSpace& box, const std::vector<int>& padding) {
    const int b = box.total_points();
    if (static_cast<int>(padding.size()) != b)
        throw Error("host_from_box_with_padding: one padding length per Z vertex");

    std::vector<int> pad_offset(static_cast<std::size_t>(b), 0);
    int total = b;
    for (int zv = 0; zv < b; ++zv) {
        pad_offset[static_cast<std::size_t>(zv)] = total;
        total += padding[static_cast<std::size_t>(zv)];
    }

    // owner and offset per host point
    std::vector<int> owner(static_cast<std::size_t>(total));
    std::vector<int> off(static_cast<std::size_t>(total), 0);
    for (int zv = 0; zv < b; ++zv) owner[static_cast<std::size_t>(zv)] = zv;
    for (int zv = 0; zv < b; ++zv)
        for (int a = 1; a <= padding[static_cast<std::size_t>(zv)]; ++a) {
            const int idx = pad_offset[static_cast<std::size_t>(zv)] + a - 1;
            owner[static_cast<std::size_t>(idx)] = zv;
            off[static_cast<std::size_t>(idx)] = a;
        }

    FiniteMetricSpace m(total);
    for (int x = 0; x < total; ++x)
        for (int y = 0; y <= x; ++y) {
            double d;
            if (owner[static_cast<std::size_t>(x)] == owner[static_cast<std::size_t>(y)])
                d = std::abs(off[static_cast<std::size_t>(x)] - off[static_cast<std::size_t>(y)]);
            else
                d = off[static_cast<std::size_t>(x)] +
                    box.realized().at(owner[static_cast<std::size_t>(x)], owner[static_cast<std::size_t>(y)]) +
                    off[static_cast<std::size_t>(y)];
            m.set(x, y, d);
        }

    HostSpace h;
    h.metric = std::move(m);
    for (int zv = 0; zv < b; ++zv) h.z.push_back(zv);
    for (int p = 0; p < box.piece_count(); ++p) {
        std::vector<int> piece;
        for (int v = 0; v < box.piece(p).vertex_count(); ++v) piece.push_back(box.global_index(p, v));
        h.z_pieces.push_back(std::move(piece));
    }
    return h;
}

/// Large-girth box host: cycle pieces with uniform padding, the per-piece
/// rotation action (padding moves parallel to its attachment), Z -> X the
/// identity inclusion, and retractions up to r_max.
inline HostSystem synthetic_cycle_host_system(const std::vector<int>& cycle_sizes, int padding_len,
                                              int r_max) {
    std::vector<FiniteGraph> pieces;
    pieces.reserve(cycle_sizes.size());
    for (int m : cycle_sizes) pieces.push_back(cycle_graph(m));

    HostSystem sys{HostSpace{}, BoxSpace::assemble_default(std::move(pieces)), CoarseMap{},
                   RetractionFamily{}, ActionPatch{}};
    const int b = sys.box.total_points();
    sys.host = host_from_box_with_padding(sys.box, std::vector<int>(static_cast<std::size_t>(b), padding_len));
    sys.retractions = neighborhood_retraction(sys.host, r_max);

    std::vector<int> inclusion(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) inclusion[static_cast<std::size_t>(i)] = i;
    sys.c = control_envelopes(inclusion, sys.host.metric.restrict(sys.host.z), sys.box.realized());

    const int total = sys.host.metric.point_count();
    PatchElement id;
    id.name = "e";
    id.length = 0;
    id.inverse = 0;
    id.map.resize(static_cast<std::size_t>(total));
    for (int x = 0; x < total; ++x) id.map[static_cast<std::size_t>(x)] = x;
    sys.patch.elems.push_back(std::move(id));
    sys.patch.identity = 0;

    // host index helpers for the padded layout built above
    std::vector<int> owner(static_cast<std::size_t>(total)), off(static_cast<std::size_t>(total), 0);
    {
        int idx = b;
        for (int zv = 0; zv < b; ++zv) owner[static_cast<std::size_t>(zv)] = zv;
        for (int zv = 0; zv < b; ++zv)
            for (int a = 1; a <= padding_len; ++a) {
                owner[static_cast<std::size_t>(idx)] = zv;
                off[static_cast<std::size_t>(idx)] = a;
                ++idx;
            }
    }
    auto padded_index = [&](int zv, int a) {
        if (a == 0) return zv;
        return b + zv * padding_len + (a - 1);
    };

    for (std::size_t p = 0; p < cycle_sizes.size(); ++p) {
        const int m = cycle_sizes[p];
        const int base = sys.box.piece_offset(static_cast<int>(p));
        const int first = static_cast<int>(sys.patch.elems.size());
        for (int s = 1; s < m; ++s) {
            PatchElement el;
            el.name = "p" + std::to_string(p + 1) + ".s" + std::to_string(s);
            el.length = std::min(s, m - s);
            el.map.assign(static_cast<std::size_t>(total), -1);
            for (int x = 0; x < total; ++x) {
                const int zv = owner[static_cast<std::size_t>(x)];
                if (zv < base || zv >= base + m) continue;
                const int rotated = base + (zv - base + s) % m;
                el.map[static_cast<std::size_t>(x)] = padded_index(rotated, off[static_cast<std::size_t>(x)]);
            }
            sys.patch.elems.push_back(std::move(el));
        }
        for (int s = 1; s < m; ++s)
            sys.patch.elems[static_cast<std::size_t>(first + s - 1)].inverse = first + (m - s) - 1;
    }
    return sys;
}

} // namespace coarsekit
