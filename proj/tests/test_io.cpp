#include <doctest.h>

#include "coarsekit/io.hpp"

using namespace coarsekit;

TEST_CASE("graph json round trip") {
    const auto g = petersen_graph();
    const auto back = graph_from_json(graph_to_json(g));
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
}

TEST_CASE("edge list text parsing") {
    const auto g = graph_from_edge_list_text("0 1\n1 2\n2 0\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edges().size() == 3);
    CHECK_THROWS_AS(graph_from_edge_list_text("0 1 2"), Error);
}

TEST_CASE("metric csv round trip with header") {
    const auto m = shortest_path_metric(cycle_graph(5));
    const std::string csv = metric_to_csv(m);
    CHECK(csv.substr(0, 2) == "p0");
    const auto back = metric_from_csv(csv);
    REQUIRE(back.point_count() == 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(back.at(i, j) == m.at(i, j));
}

TEST_CASE("kernel csv round trip without header") {
    Kernel k(3);
    k.set(0, 1, 1.5);
    k.set(1, 2, -0.25);
    const auto back = kernel_from_csv(kernel_to_csv(k));
    REQUIRE(back.point_count() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(back.at(i, j) == k.at(i, j));
}

TEST_CASE("fixed formatting is stable") {
    CHECK(fmt_fixed(0.0) == "0.000000000000");
    CHECK(fmt_fixed(-0.0) == "0.000000000000");
    CHECK(fmt_fixed(1.0 / 3.0) == "0.333333333333");
    CHECK(quantize(1.0 / 3.0) == quantize(quantize(1.0 / 3.0)));
}

TEST_CASE("host space json round trip via a metric csv file") {
    const auto sys = synthetic_cycle_host_system({4, 6}, 2, 2);
    const std::string dir = "/tmp/coarsekit_io_test";
    std::system(("mkdir -p " + dir).c_str());
    write_file(dir + "/host_metric.csv", metric_to_csv(sys.host.metric));
    const json j = host_space_to_json(sys.host, "host_metric.csv");
    const HostSpace back = host_space_from_json(j, dir);
    CHECK(back.metric.point_count() == sys.host.metric.point_count());
    CHECK(back.z == sys.host.z);
    CHECK(back.z_pieces == sys.host.z_pieces);
    for (int i = 0; i < back.metric.point_count(); ++i)
        for (int k = 0; k < back.metric.point_count(); ++k)
            CHECK(back.metric.at(i, k) == sys.host.metric.at(i, k));
}

TEST_CASE("embedding export lists supports per vertex") {
    const auto emb = tree_embedding(path_graph(3), 0);
    const json j = embedding_to_json(emb);
    REQUIRE(j.size() == 3);
    CHECK(j[0].at("vertex") == 0);
    CHECK(j[0].at("support").empty());
    CHECK(j[2].at("support").size() == 2);
}

TEST_CASE("group algebra element from json") {
    const json j = json::parse(R"({"terms": [
        {"word": "T", "coeff": [1, 2]},
        {"word": "T^-1", "coeff": [-1, 2]},
        {"word": "T S", "coeff": [3, 1]}
    ]})");
    const GroupAlgebraElement x = element_from_json(j);
    CHECK(x.support_size() == 3);
    CHECK(x.terms().at(sl2_t()) == Rational(1, 2));
    CHECK(x.terms().at(sl2_t() * sl2_s()) == Rational(3));
}

TEST_CASE("verdict json carries witness data") {
    const Kernel k = Kernel::from_metric(shortest_path_metric(complete_bipartite(2, 3)));
    const auto j = verdict_to_json(is_cnd_projected(k));
    CHECK(j.at("verdict") == "NOT_CND");
    CHECK(j.contains("witness"));
    CHECK(j.at("witness_value").get<double>() > 1e-6);
}
