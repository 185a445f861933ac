#include <doctest.h>

#include <numeric>

#include "coarsekit/boxspace.hpp"
#include "coarsekit/coarse.hpp"
#include "coarsekit/graph.hpp"
#include "coarsekit/host.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/treelift.hpp"

using namespace coarsekit;

TEST_CASE("identity map has rho_- = rho_+ = t") {
    const auto m = shortest_path_metric(cycle_graph(8));
    std::vector<int> id(8);
    for (int i = 0; i < 8; ++i) id[i] = i;
    const auto cm = control_envelopes(id, m, m);
    for (std::size_t t = 0; t < cm.rho_plus.size(); ++t) {
        CHECK(cm.rho_plus[t] == static_cast<double>(t));
        CHECK(cm.rho_minus[t] == static_cast<double>(t));
    }
    CHECK_FALSE(cm.degenerate);
    CHECK(cm.strict_increase_from == 0);
}

TEST_CASE("constant map is degenerate") {
    const auto m = shortest_path_metric(path_graph(6));
    const auto cm = control_envelopes(std::vector<int>(6, 0), m, m);
    for (double v : cm.rho_plus) CHECK(v == 0.0);
    CHECK(cm.degenerate);
}

TEST_CASE("piece inclusion into a box space is isometric on the piece's range") {
    const auto box = BoxSpace::assemble_default({cycle_graph(6), cycle_graph(8)});
    const auto piece = shortest_path_metric(cycle_graph(6));
    std::vector<int> inc(6);
    for (int i = 0; i < 6; ++i) inc[i] = box.global_index(0, i);
    const auto cm = control_envelopes(inc, piece, box.realized());
    for (std::size_t t = 0; t < cm.rho_plus.size(); ++t) {
        CHECK(cm.rho_plus[t] == static_cast<double>(t));
        CHECK(cm.rho_minus[t] == static_cast<double>(t));
    }
}

TEST_CASE("coarse equivalence detection with witness") {
    const auto host = shortest_path_metric(path_graph(10));
    // image = {0..4}: farthest target is 9 at distance 5
    const auto sub = host.restrict({0, 1, 2, 3, 4});
    const auto cm = control_envelopes({0, 1, 2, 3, 4}, sub, host);
    CHECK(is_coarse_equivalence(cm, 5).equivalent);
    const auto bad = is_coarse_equivalence(cm, 4);
    CHECK_FALSE(bad.equivalent);
    CHECK(bad.farthest_target == 9);
    CHECK(bad.farthest_distance == 5);
}

TEST_CASE("inclusion of Z into N_R(Z) is a coarse equivalence at C = R") {
    const auto box = BoxSpace::assemble_default({cycle_graph(6), cycle_graph(8)});
    std::vector<int> padding(static_cast<std::size_t>(box.total_points()), 0);
    padding[0] = 2;
    padding[5] = 3;
    const HostSpace host = host_from_box_with_padding(box, padding);
    const int big_r = 2;
    const auto nr = host.neighborhood(big_r);
    const auto nr_metric = host.metric.restrict(nr);

    // Z's positions inside the N_R point list
    std::vector<int> inc;
    for (int z : host.z) {
        const auto it = std::lower_bound(nr.begin(), nr.end(), z);
        inc.push_back(static_cast<int>(it - nr.begin()));
    }
    const auto cm = control_envelopes(inc, host.metric.restrict(host.z), nr_metric);
    CHECK(is_coarse_equivalence(cm, big_r).equivalent);

    // with a padding path reaching past R, C = R fails and the witness is
    // the deepest outlier
    const auto all = host.metric.restrict([&] {
        std::vector<int> everything(static_cast<std::size_t>(host.metric.point_count()));
        std::iota(everything.begin(), everything.end(), 0);
        return everything;
    }());
    std::vector<int> inc_all = host.z;
    const auto cm_all = control_envelopes(inc_all, host.metric.restrict(host.z), all);
    const auto check = is_coarse_equivalence(cm_all, 2.0);
    CHECK_FALSE(check.equivalent);
    CHECK(check.farthest_distance == 3.0); // the length-3 padding path's tip
    CHECK(host.dist_to_z(check.farthest_target) == 3.0);
}

TEST_CASE("surjective map is a coarse equivalence at C = 0") {
    const auto m = shortest_path_metric(cycle_graph(7));
    std::vector<int> perm = {3, 1, 0, 2, 6, 5, 4};
    const auto cm = control_envelopes(perm, m, m);
    CHECK(is_coarse_equivalence(cm, 0).equivalent);
}

TEST_CASE("approximate inverse of a bijective isometry has zero displacement") {
    const auto m = shortest_path_metric(cycle_graph(9));
    std::vector<int> rot(9);
    for (int i = 0; i < 9; ++i) rot[i] = (i + 4) % 9;
    const auto cm = control_envelopes(rot, m, m);
    const auto inv = approximate_inverse(cm, 0);
    CHECK(inv.forward_displacement == 0);
    CHECK(inv.backward_displacement == 0);
}

TEST_CASE("approximate inverse bounds verified by scan on a random equivalence") {
    Rng rng(13);
    const FiniteGraph tree = random_tree(60, 5);
    const auto m = shortest_path_metric(tree);
    // perturb the identity by jumps to a neighbor
    std::vector<int> f(60);
    for (int i = 0; i < 60; ++i) {
        const auto& nb = tree.neighbors(i);
        f[i] = (rng.next_double() < 0.3 && !nb.empty())
                   ? nb[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(nb.size()) - 1))]
                   : i;
    }
    const auto cm = control_envelopes(f, m, m);
    const auto eq = is_coarse_equivalence(cm, 1.0);
    REQUIRE(eq.equivalent);
    const auto inv = approximate_inverse(cm, 1.0);
    CHECK(inv.forward_displacement <= 1.0);
    for (int x = 0; x < 60; ++x)
        CHECK(m.at(x, inv.inverse.map[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])]) <=
              inv.backward_displacement + 1e-12);
    CHECK_THROWS_AS(approximate_inverse(cm, 0.0), Error); // not surjective at C=0
}

TEST_CASE("envelopes bound every pair by construction") {
    Rng rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5 + static_cast<int>(rng.uniform_int(0, 15));
        const auto src = shortest_path_metric(random_tree(n, rng.next_u64()));
        const auto tgt = shortest_path_metric(cycle_graph(6 + static_cast<int>(rng.uniform_int(0, 6))));
        std::vector<int> f(static_cast<std::size_t>(n));
        for (auto& v : f) v = static_cast<int>(rng.uniform_int(0, tgt.point_count() - 1));
        const auto cm = control_envelopes(f, src, tgt);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const double img = tgt.at(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]);
                CHECK(cm.eval_rho_minus(src.at(x, y)) <= img + 1e-12);
                CHECK(img <= cm.eval_rho_plus(src.at(x, y)) + 1e-12);
            }
        for (std::size_t t = 0; t + 1 < cm.rho_minus.size(); ++t) {
            CHECK(cm.rho_minus[t] <= cm.rho_minus[t + 1] + 1e-12);
            CHECK(cm.rho_plus[t] <= cm.rho_plus[t + 1] + 1e-12);
        }
    }
}

TEST_CASE("partial or out-of-range maps are rejected") {
    const auto m = shortest_path_metric(path_graph(4));
    CHECK_THROWS_AS(control_envelopes({0, 1}, m, m), Error);        // partial
    CHECK_THROWS_AS(control_envelopes({0, 1, 2, 9}, m, m), Error);  // out of range
}

TEST_CASE("pullback along the identity is the same kernel") {
    const auto m = shortest_path_metric(cycle_graph(6));
    const Kernel k = Kernel::from_metric(m);
    std::vector<int> id = {0, 1, 2, 3, 4, 5};
    const Kernel pk = pullback_kernel(id, k, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(pk.at(i, j) == k.at(i, j));
}

TEST_CASE("pullback of the box distance along a piece inclusion is the piece distance") {
    const auto box = BoxSpace::assemble_default({cycle_graph(6), cycle_graph(8)});
    std::vector<int> inc(8);
    for (int i = 0; i < 8; ++i) inc[i] = box.global_index(1, i);
    const Kernel pk = pullback_kernel(inc, Kernel::from_metric(box.realized()), 8);
    const auto pm = shortest_path_metric(cycle_graph(8));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(pk.at(i, j) == pm.at(i, j));
}

TEST_CASE("pullback of the lift-tree distance along a protected ball equals the ball distance") {
    const auto g = random_regular_with_girth(3, 60, 8, 77);
    const auto lift = lift_ball(g, 0, 3);
    REQUIRE(lift.bijective);
    REQUIRE(lift.local_isometry);
    const Kernel tree_kernel = Kernel::from_metric(shortest_path_metric(lift.tree));
    // map: ball-local index -> tree vertex (inverse of the projection)
    std::vector<int> to_tree(lift.ball.size());
    for (int t = 0; t < lift.tree.vertex_count(); ++t) {
        const auto it = std::lower_bound(lift.ball.begin(), lift.ball.end(),
                                         lift.projection[static_cast<std::size_t>(t)]);
        to_tree[static_cast<std::size_t>(it - lift.ball.begin())] = t;
    }
    const Kernel pulled =
        pullback_kernel(to_tree, tree_kernel, static_cast<int>(lift.ball.size()));
    const Kernel ball_kernel =
        Kernel::from_metric(shortest_path_metric(g.induced_subgraph(lift.ball)));
    for (int i = 0; i < pulled.point_count(); ++i)
        for (int j = 0; j < pulled.point_count(); ++j)
            CHECK(pulled.at(i, j) == ball_kernel.at(i, j));
}

TEST_CASE("pullback preserves CND") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int target_n = 6 + static_cast<int>(rng.uniform_int(0, 10));
        const int source_n = 4 + static_cast<int>(rng.uniform_int(0, 10));
        // CND kernel on the target: squared Euclidean distances
        std::vector<double> xs(target_n);
        for (auto& x : xs) x = rng.uniform(-3.0, 3.0);
        Kernel k(target_n);
        for (int i = 0; i < target_n; ++i)
            for (int j = 0; j < i; ++j) k.set(i, j, (xs[i] - xs[j]) * (xs[i] - xs[j]));
        REQUIRE(is_cnd_projected(k).is_cnd());
        std::vector<int> f(source_n);
        for (auto& v : f) v = static_cast<int>(rng.uniform_int(0, target_n - 1));
        CHECK(is_cnd_projected(pullback_kernel(f, k, source_n)).is_cnd());
    }
}
