#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "coarsekit/eigen.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"

namespace coarsekit {

/// Spectra and expansion data for one graph. Adjacency eigenvalues live in
/// [-D, D]; normalized Laplacian eigenvalues in [0, 2]. cheeger_lo/hi
/// bracket the vertex expansion constant c = min |N1(A)|/|A| over nonempty
/// A with |A| <= n/2 (closed neighborhood, so c >= 1 always).
struct SpectralReport {
    std::vector<double> adjacency_eigenvalues;  // ascending
    std::vector<double> laplacian_eigenvalues;  // ascending, normalized Laplacian
    double laplacian_gap = 0.0;                 // second-smallest normalized Laplacian eigenvalue
    double expansion = 0.0;                     // exact c, or the spectral estimate (= cheeger_hi)
    double cheeger_lo = 0.0;
    double cheeger_hi = 0.0;
    bool exact = false;
};

namespace detail {

inline SymMatrix adjacency_matrix(const FiniteGraph& g) {
    SymMatrix a(g.vertex_count());
    for (auto [u, v] : g.edges()) a.set_sym(u, v, 1.0);
    return a;
}

inline SymMatrix normalized_laplacian(const FiniteGraph& g) {
    const int n = g.vertex_count();
    SymMatrix l(n);
    for (int i = 0; i < n; ++i) l.at(i, i) = g.degree(i) > 0 ? 1.0 : 0.0;
    for (auto [u, v] : g.edges()) {
        const double w = -1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(v));
        l.set_sym(u, v, w);
    }
    return l;
}

/// |N1(A)|/|A| for A given as a bitmask (n <= 24 paths) is handled in the
/// exact scan below; this is the general set version.
inline double neighborhood_ratio(const FiniteGraph& g, const std::vector<int>& set) {
    std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : set) in[static_cast<std::size_t>(v)] = 1;
    int count = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (in[static_cast<std::size_t>(v)]) {
            ++count;
            continue;
        }
        for (int u : g.neighbors(v))
            if (in[static_cast<std::size_t>(u)]) {
                ++count;
                break;
            }
    }
    return static_cast<double>(count) / static_cast<double>(set.size());
}

} // namespace detail

/// Full symmetric eigendecomposition of adjacency and normalized Laplacian.
inline SpectralReport spectral_profile(const FiniteGraph& g) {
    if (!g.is_connected()) throw Error("spectral_profile: graph must be connected");
    SpectralReport rep;
    rep.adjacency_eigenvalues = jacobi_eigensystem(detail::adjacency_matrix(g)).values;
    rep.laplacian_eigenvalues = jacobi_eigensystem(detail::normalized_laplacian(g)).values;
    if (rep.laplacian_eigenvalues.size() >= 2) rep.laplacian_gap = rep.laplacian_eigenvalues[1];
    return rep;
}

enum class ExpansionMode { Exact, Spectral };

inline constexpr int kExactExpansionLimit = 24;

/// Vertex expansion constant. Exact mode scans all 2^n subsets (refused
/// above kExactExpansionLimit vertices). Spectral mode returns a certified
/// bracket: the lower bound comes from the normalized Laplacian gap via the
/// Cheeger inequality (with a d_min/d_max factor for irregular graphs), and
/// the upper bound from the best Fiedler sweep cut, which exhibits a
/// concrete set.
inline SpectralReport expansion_constant(const FiniteGraph& g, ExpansionMode mode) {
    const int n = g.vertex_count();
    if (!g.is_connected()) throw Error("expansion_constant: graph must be connected");

    if (mode == ExpansionMode::Exact) {
        if (n > kExactExpansionLimit)
            throw Error("expansion_constant: exact subset scan limited to " +
                        std::to_string(kExactExpansionLimit) + " vertices, got " +
                        std::to_string(n));
        std::vector<std::uint32_t> closed(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            closed[static_cast<std::size_t>(v)] = 1U << v;
            for (int u : g.neighbors(v)) closed[static_cast<std::size_t>(v)] |= 1U << u;
        }
        double best = static_cast<double>(n);
        const std::uint32_t full = n == 32 ? 0xffffffffU : ((1U << n) - 1U);
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            const int size = std::popcount(mask);
            if (2 * size > n) continue;
            std::uint32_t nb = 0;
            std::uint32_t rest = mask;
            while (rest) {
                const int v = std::countr_zero(rest);
                rest &= rest - 1;
                nb |= closed[static_cast<std::size_t>(v)];
            }
            const double ratio = static_cast<double>(std::popcount(nb)) / size;
            best = std::min(best, ratio);
        }
        SpectralReport rep = spectral_profile(g);
        rep.expansion = best;
        rep.exact = true;
        // also attach the spectral bracket so exact-vs-bracket agreement is checkable
        const SpectralReport sp = expansion_constant(g, ExpansionMode::Spectral);
        rep.cheeger_lo = sp.cheeger_lo;
        rep.cheeger_hi = sp.cheeger_hi;
        return rep;
    }

    SpectralReport rep;
    const auto lap = jacobi_eigensystem(detail::normalized_laplacian(g), true);
    rep.laplacian_eigenvalues = lap.values;
    rep.laplacian_gap = n >= 2 ? lap.values[1] : 0.0;
    rep.adjacency_eigenvalues = jacobi_eigensystem(detail::adjacency_matrix(g)).values;

    int dmin = n, dmax = 0;
    for (int v = 0; v < n; ++v) {
        dmin = std::min(dmin, g.degree(v));
        dmax = std::max(dmax, g.degree(v));
    }
    rep.cheeger_lo = 1.0 + 0.5 * rep.laplacian_gap * static_cast<double>(dmin) / dmax;

    // Fiedler sweep: order vertices by the second eigenvector (in the
    // D^{1/2}-weighted coordinates) and try every prefix up to n/2 from
    // both ends.
    double hi = static_cast<double>(n);
    if (n >= 2) {
        std::vector<double> f = lap.vectors[1];
        for (int v = 0; v < n; ++v) f[static_cast<std::size_t>(v)] /= std::sqrt(static_cast<double>(g.degree(v)));
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            if (f[static_cast<std::size_t>(x)] != f[static_cast<std::size_t>(y)])
                return f[static_cast<std::size_t>(x)] < f[static_cast<std::size_t>(y)];
            return x < y;
        });
        std::vector<int> prefix;
        for (int k = 0; 2 * (k + 1) <= n; ++k) {
            prefix.push_back(order[static_cast<std::size_t>(k)]);
            hi = std::min(hi, detail::neighborhood_ratio(g, prefix));
        }
        prefix.clear();
        for (int k = 0; 2 * (k + 1) <= n; ++k) {
            prefix.push_back(order[static_cast<std::size_t>(n - 1 - k)]);
            hi = std::min(hi, detail::neighborhood_ratio(g, prefix));
        }
    }
    rep.cheeger_hi = hi;
    rep.expansion = hi;
    rep.exact = false;
    return rep;
}

} // namespace coarsekit
