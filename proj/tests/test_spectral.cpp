#include <doctest.h>

#include <cmath>

#include "coarsekit/graph.hpp"
#include "coarsekit/sl2.hpp"
#include "coarsekit/spectral.hpp"

using namespace coarsekit;

TEST_CASE("jacobi recovers a planted spectrum") {
    // diag(1,2,3) conjugated by a rotation in the (0,2) plane
    SymMatrix m(3);
    const double c = std::cos(0.3), s = std::sin(0.3);
    // A = R diag R^T with diag = (1,2,3)
    m.at(0, 0) = c * c * 1 + s * s * 3;
    m.at(2, 2) = s * s * 1 + c * c * 3;
    m.at(1, 1) = 2;
    m.set_sym(0, 2, c * s * (3 - 1));
    const auto sys = jacobi_eigensystem(m, true);
    CHECK(sys.values[0] == doctest::Approx(1).epsilon(1e-10));
    CHECK(sys.values[1] == doctest::Approx(2).epsilon(1e-10));
    CHECK(sys.values[2] == doctest::Approx(3).epsilon(1e-10));
    // eigenvector residual
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            double av = 0;
            for (int j = 0; j < 3; ++j) av += m.at(i, j) * sys.vectors[k][j];
            CHECK(av == doctest::Approx(sys.values[k] * sys.vectors[k][i]).epsilon(1e-8));
        }
    }
}

TEST_CASE("complete graph adjacency spectrum is {n-1, -1^(n-1)}") {
    for (int n : {4, 7}) {
        const auto rep = spectral_profile(complete_graph(n));
        CHECK(rep.adjacency_eigenvalues.back() == doctest::Approx(n - 1).epsilon(1e-9));
        for (std::size_t i = 0; i + 1 < rep.adjacency_eigenvalues.size(); ++i)
            CHECK(rep.adjacency_eigenvalues[i] == doctest::Approx(-1).epsilon(1e-9));
    }
}

TEST_CASE("cycle adjacency eigenvalues are 2cos(2 pi k / n)") {
    const int n = 9;
    const double two_pi = 6.283185307179586476925286766559;
    const auto rep = spectral_profile(cycle_graph(n));
    std::vector<double> expected;
    for (int k = 0; k < n; ++k) expected.push_back(2 * std::cos(two_pi * k / n));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < n; ++i)
        CHECK(rep.adjacency_eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("petersen adjacency spectrum is {3, 1^5, (-2)^4}") {
    const auto rep = spectral_profile(petersen_graph());
    for (int i = 0; i < 4; ++i)
        CHECK(rep.adjacency_eigenvalues[i] == doctest::Approx(-2).epsilon(1e-9));
    for (int i = 4; i < 9; ++i)
        CHECK(rep.adjacency_eigenvalues[i] == doctest::Approx(1).epsilon(1e-9));
    CHECK(rep.adjacency_eigenvalues[9] == doctest::Approx(3).epsilon(1e-9));
}

TEST_CASE("normalized laplacian eigenvalues stay in [0, 2]") {
    for (const auto& g : {petersen_graph(), complete_bipartite(3, 4), cycle_graph(6)}) {
        const auto rep = spectral_profile(g);
        CHECK(rep.laplacian_eigenvalues.front() >= -1e-9);
        CHECK(rep.laplacian_eigenvalues.back() <= 2 + 1e-9);
        const int d = g.max_degree();
        CHECK(rep.adjacency_eigenvalues.front() >= -d - 1e-9);
        CHECK(rep.adjacency_eigenvalues.back() <= d + 1e-9);
    }
}

TEST_CASE("exact expansion of K4 is 2") {
    const auto rep = expansion_constant(complete_graph(4), ExpansionMode::Exact);
    CHECK(rep.expansion == doctest::Approx(2.0));
}

TEST_CASE("exact expansion of C8 is 1.5") {
    const auto rep = expansion_constant(cycle_graph(8), ExpansionMode::Exact);
    CHECK(rep.expansion == doctest::Approx(1.5)); // arc of length 4 -> 6/4
}

TEST_CASE("exact mode refuses oversized graphs naming the threshold") {
    CHECK_THROWS_WITH_AS(expansion_constant(cycle_graph(25), ExpansionMode::Exact),
                         doctest::Contains("24"), Error);
}

TEST_CASE("spectral bracket contains the exact expansion on small graphs") {
    std::vector<FiniteGraph> graphs = {cycle_graph(8),  cycle_graph(11), complete_graph(6),
                                       petersen_graph(), complete_bipartite(3, 3),
                                       complete_bipartite(2, 5)};
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
        graphs.push_back(random_tree(10 + static_cast<int>(seed), seed));
    for (const auto& g : graphs) {
        const auto ex = expansion_constant(g, ExpansionMode::Exact);
        CHECK(ex.cheeger_lo <= ex.expansion + 1e-9);
        CHECK(ex.expansion <= ex.cheeger_hi + 1e-9);
    }
}

TEST_CASE("SL(2,Z/5) cayley graph spectral report is a valid bracket") {
    const auto g = cayley_graph_sl2(5);
    const auto rep = expansion_constant(g, ExpansionMode::Spectral);
    CHECK(rep.cheeger_lo > 1.0);
    CHECK(rep.cheeger_lo <= rep.cheeger_hi + 1e-9);
    CHECK(rep.laplacian_gap > 0.05); // expander-quality gap
}

TEST_CASE("cayley graph spectra agree across BFS vertex orderings") {
    const auto g = cayley_graph_sl2(3);
    auto spectrum_from_root = [&](int root) {
        const auto d = g.bfs_distances(root);
        std::vector<int> order(g.vertex_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (d[a] != d[b]) return d[a] < d[b];
            return a < b;
        });
        std::vector<int> pos(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) pos[order[i]] = i;
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges()) edges.emplace_back(pos[u], pos[v]);
        return spectral_profile(FiniteGraph(g.vertex_count(), edges)).adjacency_eigenvalues;
    };
    const auto s0 = spectrum_from_root(0);
    for (int root : {3, 11, 17}) {
        const auto s = spectrum_from_root(root);
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(s[i] == doctest::Approx(s0[i]).epsilon(1e-8));
    }
}
