#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/metric.hpp"

namespace coarsekit {

/// Depth-bounded piece of the universal cover: vertices are the
/// non-backtracking walks from the center of length <= radius, projected
/// back to the source by the covering map. The certificate records whether
/// the projection is a bijective isometry onto the ball around the center,
/// where the ball carries the shortest-path metric of its induced subgraph
/// (the ball as a graph in its own right). That agreement is verified
/// exhaustively, never inferred from the girth alone: at the odd boundary
/// girth = 2*radius + 1 the ball contains the whole short cycle and the
/// lift genuinely disagrees.
struct TreeLift {
    int center = 0;
    int radius = 0;
    FiniteGraph tree;                 // vertex 0 is the root walk
    std::vector<int> projection;      // tree vertex -> source vertex
    std::vector<int> ball;            // sorted source ball B(center, radius)
    bool bijective = false;
    bool local_isometry = false;      // bijective + exhaustive distance agreement
};

inline constexpr std::size_t kLiftVertexCap = 1000000;

inline TreeLift lift_ball(const FiniteGraph& g, int center, int radius,
                          std::size_t vertex_cap = kLiftVertexCap) {
    if (!g.is_connected()) throw Error("lift_ball: graph must be connected");
    if (center < 0 || center >= g.vertex_count())
        throw Error("lift_ball: center out of range");
    if (radius < 0) throw Error("lift_ball: radius must be >= 0");

    TreeLift lift;
    lift.center = center;
    lift.radius = radius;

    // grow the non-backtracking walk tree breadth-first
    std::vector<int> proj{center};
    std::vector<int> parent{-1};
    std::vector<int> depth{0};
    std::vector<std::pair<int, int>> tree_edges;
    std::queue<int> frontier;
    frontier.push(0);
    while (!frontier.empty()) {
        const int t = frontier.front();
        frontier.pop();
        if (depth[static_cast<std::size_t>(t)] >= radius) continue;
        const int u = proj[static_cast<std::size_t>(t)];
        const int back = parent[static_cast<std::size_t>(t)] < 0
                             ? -1
                             : proj[static_cast<std::size_t>(parent[static_cast<std::size_t>(t)])];
        for (int w : g.neighbors(u)) {
            if (w == back) continue;
            if (proj.size() >= vertex_cap)
                throw Error("lift_ball: lift exceeds the vertex cap of " +
                            std::to_string(vertex_cap) + "; reduce the radius");
            const int fresh = static_cast<int>(proj.size());
            proj.push_back(w);
            parent.push_back(t);
            depth.push_back(depth[static_cast<std::size_t>(t)] + 1);
            tree_edges.emplace_back(t, fresh);
            frontier.push(fresh);
        }
    }
    lift.tree = FiniteGraph(static_cast<int>(proj.size()), std::move(tree_edges));
    lift.projection = std::move(proj);

    const auto dist = g.bfs_distances(center);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] <= radius)
            lift.ball.push_back(v);

    // bijectivity: every ball vertex hit exactly once
    std::vector<int> hits(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : lift.projection) ++hits[static_cast<std::size_t>(v)];
    lift.bijective = lift.projection.size() == lift.ball.size();
    if (lift.bijective)
        for (int v : lift.ball)
            if (hits[static_cast<std::size_t>(v)] != 1) lift.bijective = false;

    if (lift.bijective) {
        // distances in the induced ball subgraph vs. in the lift tree
        const FiniteGraph ball_graph = g.induced_subgraph(lift.ball);
        std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t i = 0; i < lift.ball.size(); ++i)
            local[static_cast<std::size_t>(lift.ball[i])] = static_cast<int>(i);

        lift.local_isometry = true;
        const int tn = lift.tree.vertex_count();
        for (int t = 0; t < tn && lift.local_isometry; ++t) {
            const auto dt = lift.tree.bfs_distances(t);
            const auto db = ball_graph.bfs_distances(local[static_cast<std::size_t>(
                lift.projection[static_cast<std::size_t>(t)])]);
            for (int s = 0; s < tn; ++s) {
                const int lb = local[static_cast<std::size_t>(lift.projection[static_cast<std::size_t>(s)])];
                if (dt[static_cast<std::size_t>(s)] != db[static_cast<std::size_t>(lb)]) {
                    lift.local_isometry = false;
                    break;
                }
            }
        }
    }
    return lift;
}

// ---------------------------------------------------------------------------

/// 0/1 vector over tree edges: the characteristic function of the edges on
/// the unique basepoint-to-vertex path. Stored as the sorted support.
struct EdgePathVector {
    std::vector<int> support;

    long long norm_squared() const { return static_cast<long long>(support.size()); }

    /// ||a - b||^2 = size of the symmetric difference (entries are 0/1).
    static long long distance_squared(const EdgePathVector& a, const EdgePathVector& b) {
        std::size_t i = 0, j = 0;
        long long sym = 0;
        while (i < a.support.size() && j < b.support.size()) {
            if (a.support[i] == b.support[j]) {
                ++i;
                ++j;
            } else if (a.support[i] < b.support[j]) {
                ++sym;
                ++i;
            } else {
                ++sym;
                ++j;
            }
        }
        sym += static_cast<long long>(a.support.size() - i);
        sym += static_cast<long long>(b.support.size() - j);
        return sym;
    }
};

struct TreeEmbedding {
    int basepoint = 0;
    std::vector<EdgePathVector> xi; // per tree vertex
};

/// Edge-path embedding of a tree into l2 of its edge set.
inline TreeEmbedding tree_embedding(const FiniteGraph& t, int basepoint) {
    if (!t.is_connected()) throw Error("tree_embedding: input must be connected");
    const auto gir = girth(t);
    if (gir.has_value())
        throw Error("tree_embedding: input has a cycle (girth " + std::to_string(*gir) +
                    "), expected girth infinity");
    if (basepoint < 0 || basepoint >= t.vertex_count())
        throw Error("tree_embedding: basepoint out of range");

    // edge ids
    std::vector<std::vector<std::pair<int, int>>> incident(
        static_cast<std::size_t>(t.vertex_count())); // (neighbor, edge id)
    for (std::size_t e = 0; e < t.edges().size(); ++e) {
        const auto [u, v] = t.edges()[e];
        incident[static_cast<std::size_t>(u)].emplace_back(v, static_cast<int>(e));
        incident[static_cast<std::size_t>(v)].emplace_back(u, static_cast<int>(e));
    }

    TreeEmbedding emb;
    emb.basepoint = basepoint;
    emb.xi.assign(static_cast<std::size_t>(t.vertex_count()), {});
    std::vector<char> seen(static_cast<std::size_t>(t.vertex_count()), 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(basepoint)] = 1;
    q.push(basepoint);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (auto [v, e] : incident[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            auto sup = emb.xi[static_cast<std::size_t>(u)].support;
            sup.push_back(e);
            std::sort(sup.begin(), sup.end());
            emb.xi[static_cast<std::size_t>(v)].support = std::move(sup);
            q.push(v);
        }
    }
    return emb;
}

struct EmbeddingProof {
    bool ok = false;
    long long pairs_checked = 0;
    std::optional<std::pair<int, int>> failure;
};

/// Exact integer check of ||xi(x) - xi(y)||^2 = d(x, y) over all pairs.
inline EmbeddingProof verify_embedding_identity(const FiniteGraph& t, int basepoint) {
    const TreeEmbedding emb = tree_embedding(t, basepoint);
    EmbeddingProof proof;
    const int n = t.vertex_count();
    for (int x = 0; x < n; ++x) {
        const auto dist = t.bfs_distances(x);
        for (int y = x; y < n; ++y) {
            ++proof.pairs_checked;
            const long long lhs = EdgePathVector::distance_squared(
                emb.xi[static_cast<std::size_t>(x)], emb.xi[static_cast<std::size_t>(y)]);
            if (lhs != static_cast<long long>(dist[static_cast<std::size_t>(y)])) {
                proof.failure = std::make_pair(x, y);
                return proof;
            }
        }
    }
    proof.ok = true;
    return proof;
}

// ---------------------------------------------------------------------------

struct BallCndCertificate {
    std::vector<int> ball;        // sorted source vertices of B(center, radius)
    Kernel kernel;                // shortest-path metric of the induced ball subgraph
    bool constructive = false;    // exact Gram identity through the lift held on all pairs
    long long pairs_checked = 0;
    CndVerdict eigen;             // independent projected-eigenvalue cross-check
};

/// Constructive CND certificate for the ball distance kernel: lift the ball
/// to the cover, embed the lift tree from the center, and check the exact
/// integer identity ||xi(u) - xi(v)||^2 = k(u, v) on every pair; the Gram
/// expansion of that identity is the CND certificate. The projected
/// eigenvalue check runs on the same kernel as an independent route.
inline BallCndCertificate ball_cnd_certificate(const FiniteGraph& g, int center, int radius,
                                               std::optional<double> tol = std::nullopt) {
    const auto gir = girth(g);
    if (gir.has_value() && 2 * radius >= *gir)
        throw Error("ball_cnd_certificate: requires 2*radius < girth, got radius " +
                    std::to_string(radius) + " with girth " + std::to_string(*gir));

    const TreeLift lift = lift_ball(g, center, radius);
    BallCndCertificate cert;
    cert.ball = lift.ball;

    const FiniteGraph ball_graph = g.induced_subgraph(lift.ball);
    cert.kernel = Kernel::from_metric(shortest_path_metric(ball_graph));

    if (lift.bijective && lift.local_isometry) {
        const TreeEmbedding emb = tree_embedding(lift.tree, 0);
        std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t i = 0; i < lift.ball.size(); ++i)
            local[static_cast<std::size_t>(lift.ball[i])] = static_cast<int>(i);

        cert.constructive = true;
        const int tn = lift.tree.vertex_count();
        for (int a = 0; a < tn && cert.constructive; ++a)
            for (int b = a; b < tn; ++b) {
                ++cert.pairs_checked;
                const long long lhs = EdgePathVector::distance_squared(
                    emb.xi[static_cast<std::size_t>(a)], emb.xi[static_cast<std::size_t>(b)]);
                const int ia = local[static_cast<std::size_t>(lift.projection[static_cast<std::size_t>(a)])];
                const int ib = local[static_cast<std::size_t>(lift.projection[static_cast<std::size_t>(b)])];
                const long long rhs = static_cast<long long>(std::llround(cert.kernel.at(ia, ib)));
                if (lhs != rhs) {
                    cert.constructive = false;
                    break;
                }
            }
    }

    cert.eigen = is_cnd_projected(cert.kernel, tol);
    return cert;
}

} // namespace coarsekit
