#include <doctest.h>

#include "coarsekit/rng.hpp"
#include "coarsekit/sl2.hpp"

using namespace coarsekit;

TEST_CASE("sl2 matrix algebra") {
    const SL2Mat t = sl2_t(), s = sl2_s();
    CHECK(t.det() == 1);
    CHECK(s.det() == 1);
    CHECK(t * t.inverse() == sl2_identity());
    CHECK(s * s.inverse() == sl2_identity());
    // S^2 = -I, S^4 = I
    const SL2Mat s2 = s * s;
    CHECK(s2.a == -1);
    CHECK(s2.d == -1);
    CHECK(s2 * s2 == sl2_identity());
}

TEST_CASE("word parsing") {
    CHECK(parse_sl2_word("T") == sl2_t());
    CHECK(parse_sl2_word("T S T^-1") == sl2_t() * sl2_s() * sl2_t().inverse());
    CHECK(parse_sl2_word("S^{-1}") == sl2_s().inverse());
    CHECK(parse_sl2_word("T-1") == sl2_t().inverse());
    CHECK(parse_sl2_word("e") == sl2_identity());
    CHECK_THROWS_AS(parse_sl2_word("Q"), Error);
}

TEST_CASE("word ball growth and lengths") {
    const auto ball = sl2_word_ball(3);
    CHECK(ball.find(sl2_identity()) == 0);
    CHECK(ball.length[static_cast<std::size_t>(ball.find(sl2_t()))] == 1);
    CHECK(ball.length[static_cast<std::size_t>(ball.find(sl2_t() * sl2_t()))] == 2);
    // S^2 = -I has word length 2
    CHECK(ball.length[static_cast<std::size_t>(ball.find(sl2_s() * sl2_s()))] == 2);
    // every element's inverse is in the ball with the same length
    for (std::size_t i = 0; i < ball.elems.size(); ++i) {
        const int j = ball.find(ball.elems[i].inverse());
        REQUIRE(j >= 0);
        CHECK(ball.length[static_cast<std::size_t>(j)] == ball.length[i]);
    }
}

TEST_CASE("quotient orders match the standard formula") {
    CHECK(sl2_order(2) == 6);
    CHECK(sl2_order(3) == 24);
    CHECK(sl2_order(4) == 48);
    CHECK(sl2_order(5) == 120);
    CHECK(sl2_order(6) == 144);
    CHECK(sl2_order(13) == 2184);
    for (int n : {2, 3, 4, 5, 6, 7}) CHECK(SL2Quotient(n).order() == sl2_order(n));
    // CRT cross-check: |SL(2,Z/6)| = |SL(2,Z/2)| * |SL(2,Z/3)|
    CHECK(sl2_order(6) == sl2_order(2) * sl2_order(3));
}

TEST_CASE("quotient map is a homomorphism on random word pairs") {
    Rng rng(31);
    const auto ball = sl2_word_ball(4);
    SL2Quotient q(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& g = ball.elems[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(ball.elems.size()) - 1))];
        const auto& h = ball.elems[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(ball.elems.size()) - 1))];
        CHECK(q.reduce_index(g * h) == q.multiply(q.reduce_index(g), q.reduce_index(h)));
    }
}

TEST_CASE("quotient rejects moduli beyond the cap") {
    CHECK_THROWS_AS(SL2Quotient(14), Error);
    CHECK_THROWS_AS(SL2Quotient(1), Error);
}

TEST_CASE("cayley graph of SL(2,Z/2) has 6 vertices") {
    const auto g = cayley_graph_sl2(2);
    CHECK(g.vertex_count() == 6);
    CHECK(g.is_connected());
    // T = T^-1 and S = S^-1 mod 2: two involutions generating S3 give a 6-cycle
    CHECK(girth(g) == 6);
}

TEST_CASE("cayley graph of SL(2,Z/3) has 24 vertices") {
    const auto g = cayley_graph_sl2(3);
    CHECK(g.vertex_count() == 24);
    CHECK(g.is_connected());
}

TEST_CASE("cayley graph of SL(2,Z/5) has 120 vertices and is connected") {
    const auto g = cayley_graph_sl2(5);
    CHECK(g.vertex_count() == 120);
    CHECK(g.is_connected());
}

TEST_CASE("cayley graph rejects bad generator sets") {
    // determinant 2 mod 3
    CHECK_THROWS_WITH_AS(cayley_graph_sl2(3, {SL2Mat{2, 0, 0, 1}}),
                         doctest::Contains("determinant"), Error);
    // not closed under inverse: {T} alone mod 3
    CHECK_THROWS_WITH_AS(cayley_graph_sl2(3, {sl2_t()}), doctest::Contains("inverse"), Error);
    // closed mod 2 though: T = T^-1
    CHECK_NOTHROW(cayley_graph_sl2(2, {sl2_t(), sl2_s()}));
}
