#include <doctest.h>

#include "coarsekit/graph.hpp"
#include "coarsekit/metric.hpp"

using namespace coarsekit;

TEST_CASE("graph construction rejects malformed input") {
    CHECK_THROWS_AS(FiniteGraph(3, {{0, 0}}), Error);
    CHECK_THROWS_AS(FiniteGraph(3, {{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(FiniteGraph(2, {{0, 2}}), Error);
    CHECK_THROWS_AS(FiniteGraph(0, {}), Error);
}

TEST_CASE("girth of stock graphs") {
    CHECK(girth(cycle_graph(7)) == 7);
    CHECK(girth(cycle_graph(3)) == 3);
    CHECK_FALSE(girth(path_graph(10)).has_value());
    CHECK_FALSE(girth(star_graph(5)).has_value());
    CHECK(girth(complete_graph(4)) == 3);
    CHECK(girth(complete_bipartite(2, 3)) == 4);
    CHECK(girth(petersen_graph()) == 5);
}

TEST_CASE("girth handles disconnected graphs") {
    // triangle plus an isolated edge plus a square
    FiniteGraph g(9, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {5, 6}, {6, 7}, {7, 8}, {8, 5}});
    CHECK(girth(g) == 3);
    FiniteGraph forest(6, {{0, 1}, {2, 3}, {4, 5}});
    CHECK_FALSE(girth(forest).has_value());
}

TEST_CASE("girth agrees with an edge-deletion oracle on random graphs") {
    // oracle: girth = min over edges (u,v) of dist_{G-(u,v)}(u,v) + 1
    auto oracle = [](const FiniteGraph& g) -> std::optional<int> {
        int best = std::numeric_limits<int>::max();
        for (auto [u, v] : g.edges()) {
            std::vector<std::pair<int, int>> rest;
            for (auto e : g.edges())
                if (e != std::make_pair(u, v)) rest.push_back(e);
            const FiniteGraph h(g.vertex_count(), rest);
            const auto d = h.bfs_distances(u);
            if (d[static_cast<std::size_t>(v)] >= 0)
                best = std::min(best, d[static_cast<std::size_t>(v)] + 1);
        }
        if (best == std::numeric_limits<int>::max()) return std::nullopt;
        return best;
    };
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_int(0, 8));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next_double() < 0.3) edges.emplace_back(u, v);
        const FiniteGraph g(n, edges);
        CHECK(girth(g) == oracle(g));
    }
}

TEST_CASE("girth is at most 2*diameter + 1 on connected non-forests") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const int n = 6 + static_cast<int>(rng.uniform_int(0, 8));
        // random connected graph: tree plus a few extra edges
        FiniteGraph tree = random_tree(n, seed * 11);
        auto edges = tree.edges();
        for (int extra = 0; extra < 3; ++extra) {
            const int u = static_cast<int>(rng.uniform_int(0, n - 1));
            const int v = static_cast<int>(rng.uniform_int(0, n - 1));
            if (u == v) continue;
            bool dup = false;
            for (auto [a, b] : edges)
                if ((a == std::min(u, v)) && (b == std::max(u, v))) dup = true;
            if (!dup) edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        FiniteGraph g(n, edges);
        const auto gir = girth(g);
        if (!gir) continue;
        CHECK(*gir <= 2 * g.diameter() + 1);
    }
}

TEST_CASE("random trees are trees") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const FiniteGraph t = random_tree(30, seed);
        CHECK(t.is_connected());
        CHECK(static_cast<int>(t.edges().size()) == 29);
        CHECK_FALSE(girth(t).has_value());
    }
}

TEST_CASE("moore bound values") {
    CHECK(moore_bound(3, 5) == 10);  // Petersen is the cage
    CHECK(moore_bound(3, 6) == 14);  // Heawood
    CHECK(moore_bound(3, 8) == 30);  // Tutte-Coxeter
    CHECK(moore_bound(3, 7) == 22);
    CHECK(moore_bound(2, 9) == 9);   // cycle
}

TEST_CASE("random_regular_with_girth: degree 2 gives the cycle") {
    const FiniteGraph g = random_regular_with_girth(2, 9, 9, 42);
    CHECK(g.vertex_count() == 9);
    CHECK(g.is_connected());
    for (int v = 0; v < 9; ++v) CHECK(g.degree(v) == 2);
    CHECK(girth(g) == 9);
}

TEST_CASE("random_regular_with_girth: cubic girth targets") {
    const FiniteGraph g = random_regular_with_girth(3, 30, 6, 1);
    CHECK(g.is_connected());
    for (int v = 0; v < 30; ++v) CHECK(g.degree(v) == 3);
    const auto gir = girth(g);
    REQUIRE(gir.has_value());
    CHECK(*gir >= 6);

    const FiniteGraph h = random_regular_with_girth(3, 80, 8, 5);
    const auto gh = girth(h);
    REQUIRE(gh.has_value());
    CHECK(*gh >= 8);
    CHECK(h.is_connected());
}

TEST_CASE("random_regular_with_girth: infeasible request fails naming the bound") {
    // Moore bound for (3,7) is 22 > 10
    CHECK_THROWS_WITH_AS(random_regular_with_girth(3, 10, 7, 1),
                         doctest::Contains("Moore bound"), Error);
    CHECK_THROWS_AS(random_regular_with_girth(3, 11, 4, 1), Error); // odd d*n
}

TEST_CASE("random_regular_with_girth is reproducible per seed") {
    const FiniteGraph a = random_regular_with_girth(3, 30, 6, 99);
    const FiniteGraph b = random_regular_with_girth(3, 30, 6, 99);
    CHECK(a.edges() == b.edges());
    const FiniteGraph c = random_regular_with_girth(3, 30, 6, 100);
    CHECK(a.edges() != c.edges()); // different seed, different graph
}
