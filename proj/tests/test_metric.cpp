#include <doctest.h>

#include "coarsekit/graph.hpp"
#include "coarsekit/metric.hpp"

using namespace coarsekit;

TEST_CASE("shortest path metric on cycles") {
    const auto m = shortest_path_metric(cycle_graph(5));
    CHECK(m.at(0, 1) == 1); // adjacent pair
    CHECK(m.at(0, 2) == 2); // antipodal-most pair of C5
    CHECK(m.at(0, 3) == 2);
    CHECK(m.at(2, 2) == 0);
    CHECK_FALSE(m.validate().has_value());
}

TEST_CASE("petersen graph has diameter 2") {
    const auto m = shortest_path_metric(petersen_graph());
    double maxd = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) maxd = std::max(maxd, m.at(i, j));
    CHECK(maxd == 2);
    CHECK(m.is_integer());
}

TEST_CASE("disconnected input is rejected with the offending pair") {
    const FiniteGraph g(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_WITH_AS(shortest_path_metric(g), doctest::Contains("disconnected"), Error);
}

TEST_CASE("validate finds planted triangle violations") {
    FiniteMetricSpace m(3);
    m.set(0, 1, 1.0);
    m.set(1, 2, 1.0);
    m.set(0, 2, 5.0); // violates through 1
    const auto w = m.validate();
    REQUIRE(w.has_value());
    CHECK(w->slack == doctest::Approx(3.0));
}

TEST_CASE("restriction keeps distances") {
    const auto m = shortest_path_metric(cycle_graph(8));
    const auto r = m.restrict({0, 2, 5});
    CHECK(r.at(0, 1) == m.at(0, 2));
    CHECK(r.at(1, 2) == m.at(2, 5));
    CHECK(r.at(0, 2) == m.at(0, 5));
}

TEST_CASE("balls collect points within the radius") {
    const auto m = shortest_path_metric(path_graph(10));
    const auto b = m.ball(4, 2);
    CHECK(b == std::vector<int>({2, 3, 4, 5, 6}));
}
