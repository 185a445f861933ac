#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/rng.hpp"

namespace coarsekit {

/// Simple undirected graph on vertices 0..n-1. Self-loops and parallel
/// edges are rejected at construction; the adjacency lists are kept sorted
/// so traversal order (and everything downstream) is deterministic.
class FiniteGraph {
public:
    FiniteGraph() = default;

    FiniteGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
        if (n <= 0) throw Error("FiniteGraph: vertex count must be positive");
        std::set<std::pair<int, int>> seen;
        adj_.assign(static_cast<std::size_t>(n), {});
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw Error("FiniteGraph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") out of range");
            if (u == v)
                throw Error("FiniteGraph: self-loop at vertex " + std::to_string(u));
            auto e = std::minmax(u, v);
            if (!seen.insert({e.first, e.second}).second)
                throw Error("FiniteGraph: duplicate edge (" + std::to_string(e.first) + "," +
                            std::to_string(e.second) + ")");
        }
        edges_.assign(seen.begin(), seen.end());
        for (auto [u, v] : edges_) {
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    bool has_edge(int u, int v) const {
        const auto& nb = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// BFS distances from root; unreachable vertices get -1.
    std::vector<int> bfs_distances(int root) const {
        std::vector<int> dist(static_cast<std::size_t>(n_), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(root)] = 0;
        q.push(root);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : neighbors(u)) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
        return dist;
    }

    bool is_connected() const {
        if (n_ == 0) return false;
        const auto d = bfs_distances(0);
        return std::find(d.begin(), d.end(), -1) == d.end();
    }

    /// Component id per vertex, ids in discovery order from vertex 0.
    std::vector<int> components() const {
        std::vector<int> comp(static_cast<std::size_t>(n_), -1);
        int id = 0;
        for (int s = 0; s < n_; ++s) {
            if (comp[static_cast<std::size_t>(s)] >= 0) continue;
            std::queue<int> q;
            comp[static_cast<std::size_t>(s)] = id;
            q.push(s);
            while (!q.empty()) {
                const int u = q.front();
                q.pop();
                for (int v : neighbors(u))
                    if (comp[static_cast<std::size_t>(v)] < 0) {
                        comp[static_cast<std::size_t>(v)] = id;
                        q.push(v);
                    }
            }
            ++id;
        }
        return comp;
    }

    int diameter() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) {
            for (int x : bfs_distances(v)) {
                if (x < 0) throw Error("diameter: graph is disconnected");
                d = std::max(d, x);
            }
        }
        return d;
    }

    /// Induced subgraph on the given vertices (any order); vertices are
    /// relabelled 0..k-1 following the input order.
    FiniteGraph induced_subgraph(const std::vector<int>& verts) const {
        std::vector<int> local(static_cast<std::size_t>(n_), -1);
        for (std::size_t i = 0; i < verts.size(); ++i) local[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
        std::vector<std::pair<int, int>> es;
        for (auto [u, v] : edges_) {
            const int lu = local[static_cast<std::size_t>(u)];
            const int lv = local[static_cast<std::size_t>(v)];
            if (lu >= 0 && lv >= 0) es.emplace_back(lu, lv);
        }
        return FiniteGraph(static_cast<int>(verts.size()), std::move(es));
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Exact girth: per-root BFS; every non-tree edge closes a walk of length
/// dist[u]+dist[v]+1 >= girth, and a root on a shortest cycle realizes
/// equality, so the minimum over roots and edges is exact. Returns nullopt
/// for forests. Disconnected input is fine.
inline std::optional<int> girth(const FiniteGraph& g) {
    const int n = g.vertex_count();
    int best = std::numeric_limits<int>::max();
    for (int root = 0; root < n; ++root) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::vector<int> parent(static_cast<std::size_t>(n), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(root)] = 0;
        q.push(root);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            if (2 * dist[static_cast<std::size_t>(u)] >= best) continue;
            for (int v : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(v)] = u;
                    q.push(v);
                } else if (v != parent[static_cast<std::size_t>(u)]) {
                    best = std::min(best, dist[static_cast<std::size_t>(u)] +
                                              dist[static_cast<std::size_t>(v)] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// stock graphs

inline FiniteGraph cycle_graph(int n) {
    if (n < 3) throw Error("cycle_graph: need n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return FiniteGraph(n, std::move(e));
}

inline FiniteGraph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return FiniteGraph(n, std::move(e));
}

inline FiniteGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return FiniteGraph(n, std::move(e));
}

inline FiniteGraph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return FiniteGraph(a + b, std::move(e));
}

inline FiniteGraph star_graph(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return FiniteGraph(leaves + 1, std::move(e));
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline FiniteGraph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
        e.emplace_back(i, i + 5);
    }
    return FiniteGraph(10, std::move(e));
}

/// Uniform random labelled tree (random parent among previous vertices,
/// then a seed-fixed relabelling so the shape is not index-biased).
inline FiniteGraph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw Error("random_tree: need n >= 1");
    Rng rng(seed);
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(i)] = i;
    rng.shuffle(label);
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) {
        const int p = static_cast<int>(rng.uniform_int(0, i - 1));
        e.emplace_back(label[static_cast<std::size_t>(i)], label[static_cast<std::size_t>(p)]);
    }
    return FiniteGraph(n, std::move(e));
}

/// Moore bound: minimum vertex count of a d-regular graph with girth g.
inline long long moore_bound(int d, int g) {
    if (d <= 2) return g; // a single cycle
    long long total;
    if (g % 2 == 1) {
        total = 1;
        long long layer = d;
        for (int i = 0; i < (g - 1) / 2; ++i) {
            total += layer;
            layer *= (d - 1);
        }
    } else {
        total = 0;
        long long layer = 1;
        for (int i = 0; i < g / 2; ++i) {
            total += 2 * layer;
            layer *= (d - 1);
        }
    }
    return total;
}

namespace detail {

/// Shortest cycle through any vertex, truncated: returns an edge on some
/// cycle of length < bound, or nullopt if none exists.
inline std::optional<std::pair<int, int>> find_short_cycle_edge(
    const std::vector<std::vector<int>>& adj, int bound) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(root)] = 0;
        q.push(root);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            if (2 * dist[static_cast<std::size_t>(u)] >= bound) continue;
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(v)] = u;
                    q.push(v);
                } else if (v != parent[static_cast<std::size_t>(u)]) {
                    if (dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(v)] + 1 <
                        bound)
                        return std::make_pair(u, v);
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// d-regular simple connected graph with girth >= girth_target, built from a
/// seeded pairing and repaired by double edge swaps: any edge on a too-short
/// cycle is swapped against a random partner until no short cycle remains.
/// Deterministic per seed. Fails loudly when the Moore bound rules the
/// instance out or the swap budget (10^4) is exhausted.
inline FiniteGraph random_regular_with_girth(int degree, int n, int girth_target,
                                             std::uint64_t seed, int swap_budget = 10000) {
    if (degree < 2) throw Error("random_regular_with_girth: need degree >= 2");
    if ((static_cast<long long>(degree) * n) % 2 != 0)
        throw Error("random_regular_with_girth: d*n must be even (d=" + std::to_string(degree) +
                    ", n=" + std::to_string(n) + ")");
    const long long moore = moore_bound(degree, girth_target);
    if (n < moore)
        throw Error("random_regular_with_girth: infeasible, Moore bound for degree " +
                    std::to_string(degree) + " girth " + std::to_string(girth_target) + " is " +
                    std::to_string(moore) + " > n = " + std::to_string(n));

    Rng rng(seed);

    // adjacency sets as sorted vectors; edge list maintained alongside
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> edge_list;

    auto has_edge = [&](int u, int v) {
        const auto& nb = adj[static_cast<std::size_t>(u)];
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    };
    auto add_edge = [&](int u, int v) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
        edge_list.emplace_back(std::min(u, v), std::max(u, v));
    };
    auto remove_edge = [&](int u, int v) {
        auto& nu = adj[static_cast<std::size_t>(u)];
        auto& nv = adj[static_cast<std::size_t>(v)];
        nu.erase(std::find(nu.begin(), nu.end(), v));
        nv.erase(std::find(nv.begin(), nv.end(), u));
        const auto key = std::make_pair(std::min(u, v), std::max(u, v));
        edge_list.erase(std::find(edge_list.begin(), edge_list.end(), key));
    };

    // pairing model: random matching on d*n stubs, retried until simple
    {
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(degree) * n);
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 200)
                throw Error("random_regular_with_girth: pairing model failed to produce a simple "
                            "graph after 200 attempts");
            stubs.clear();
            for (int v = 0; v < n; ++v)
                for (int k = 0; k < degree; ++k) stubs.push_back(v);
            rng.shuffle(stubs);
            bool simple = true;
            for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
                const int u = stubs[i];
                const int v = stubs[i + 1];
                if (u == v || has_edge(u, v)) {
                    simple = false;
                    break;
                }
                add_edge(u, v);
            }
            if (simple) break;
            for (auto& a : adj) a.clear();
            edge_list.clear();
        }
    }

    auto swap_pair = [&](std::pair<int, int> e1, std::pair<int, int> e2) {
        // (a,b),(c,d) -> (a,c),(b,d); caller checked admissibility
        remove_edge(e1.first, e1.second);
        remove_edge(e2.first, e2.second);
        add_edge(e1.first, e2.first);
        add_edge(e1.second, e2.second);
    };

    auto admissible = [&](int a, int b, int c, int d) {
        return a != c && a != d && b != c && b != d && !has_edge(a, c) && !has_edge(b, d);
    };

    // distance from x to y in the graph minus the edge (x,y), truncated:
    // returns true when that distance + 1 >= bound, i.e. the edge lies on
    // no cycle shorter than bound
    auto edge_cycle_free = [&](int x, int y, int bound) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(x)] = 0;
        q.push(x);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            if (dist[static_cast<std::size_t>(u)] + 1 >= bound - 1) continue;
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (u == x && v == y) continue; // skip the edge itself
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    if (v == y) // shortest detour found; cycle length is dist + 1
                        return dist[static_cast<std::size_t>(v)] + 1 >= bound;
                    q.push(v);
                }
            }
        }
        return dist[static_cast<std::size_t>(y)] < 0 || dist[static_cast<std::size_t>(y)] + 1 >= bound;
    };

    int swaps = 0;
    // Swap the bad edge against a partner that creates no new short cycle
    // through either fresh edge; such a swap strictly decreases the number
    // of short cycles. Falls back to an unchecked shake when no clean
    // partner turns up.
    auto random_swap_against = [&](std::pair<int, int> bad, int bound) {
        for (int tries = 0; tries < 400; ++tries) {
            const auto other =
                edge_list[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(edge_list.size()) - 1))];
            if (other == bad) continue;
            int c = other.first;
            int d = other.second;
            if (rng.next_u64() & 1U) std::swap(c, d);
            if (!admissible(bad.first, bad.second, c, d)) continue;
            swap_pair({bad.first, bad.second}, {c, d});
            ++swaps;
            if (tries < 350 &&
                (!edge_cycle_free(bad.first, c, bound) || !edge_cycle_free(bad.second, d, bound))) {
                // revert and try another partner; the attempted swap stays
                // counted against the budget
                swap_pair({bad.first, c}, {bad.second, d});
                continue;
            }
            return true;
        }
        return false;
    };

    // connectivity repair: swap a cross pair between components
    auto make_connected = [&]() {
        for (;;) {
            std::vector<int> comp(static_cast<std::size_t>(n), -1);
            int ncomp = 0;
            for (int s = 0; s < n; ++s) {
                if (comp[static_cast<std::size_t>(s)] >= 0) continue;
                std::queue<int> q;
                comp[static_cast<std::size_t>(s)] = ncomp;
                q.push(s);
                while (!q.empty()) {
                    const int u = q.front();
                    q.pop();
                    for (int v : adj[static_cast<std::size_t>(u)])
                        if (comp[static_cast<std::size_t>(v)] < 0) {
                            comp[static_cast<std::size_t>(v)] = ncomp;
                            q.push(v);
                        }
                }
                ++ncomp;
            }
            if (ncomp == 1) return;
            std::pair<int, int> e1{-1, -1}, e2{-1, -1};
            for (const auto& e : edge_list) {
                if (comp[static_cast<std::size_t>(e.first)] == 0) e1 = e;
                else e2 = e;
                if (e1.first >= 0 && e2.first >= 0) break;
            }
            if (e2.first < 0 || !admissible(e1.first, e1.second, e2.first, e2.second))
                throw Error("random_regular_with_girth: could not reconnect components");
            swap_pair(e1, e2);
            ++swaps;
        }
    };

    make_connected();

    while (swaps < swap_budget) {
        const auto bad = detail::find_short_cycle_edge(adj, girth_target);
        if (!bad) break;
        if (!random_swap_against(*bad, girth_target))
            throw Error("random_regular_with_girth: no admissible swap found for a short cycle");
        make_connected();
    }

    if (detail::find_short_cycle_edge(adj, girth_target))
        throw Error("random_regular_with_girth: swap budget " + std::to_string(swap_budget) +
                    " exhausted before reaching girth " + std::to_string(girth_target));

    FiniteGraph g(n, std::move(edge_list));
    if (!g.is_connected())
        throw Error("random_regular_with_girth: output graph disconnected");
    return g;
}

} // namespace coarsekit
