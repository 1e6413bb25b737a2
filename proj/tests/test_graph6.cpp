#include <doctest.h>

#include "qsym/graph6.hpp"

#include <random>

using namespace qsym;

TEST_CASE("single byte header: K_1 and small graphs") {
    Graph k1 = parse_graph6("@"); // '@' = 63 + 1
    CHECK(k1.n() == 1);
    CHECK(k1.edge_count() == 0);
    CHECK(emit_graph6(k1) == "@");

    // P_3 as documented in the format description: n=3, edges 0-1 and 1-2
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    Graph back = parse_graph6(emit_graph6(p3));
    CHECK(back.n() == 3);
    CHECK(back.adjacent(0, 1));
    CHECK(back.adjacent(1, 2));
    CHECK_FALSE(back.adjacent(0, 2));
}

TEST_CASE("round trip is the identity on a 1000-graph random corpus") {
    std::mt19937 rng(20250808);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + int(rng() % 40);
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) g.add_edge(i, j);
        std::string enc = emit_graph6(g);
        Graph h = parse_graph6(enc);
        CHECK(h.n() == n);
        bool same = true;
        for (int i = 0; i < n && same; ++i)
            for (int j = 0; j < n && same; ++j) same = h.adjacent(i, j) == g.adjacent(i, j);
        CHECK(same);
        CHECK(emit_graph6(h) == enc);
    }
}

TEST_CASE("four byte header for n > 62") {
    Graph g(100);
    for (int i = 0; i < 99; ++i) g.add_edge(i, i + 1);
    std::string enc = emit_graph6(g);
    CHECK(static_cast<unsigned char>(enc[0]) == 126);
    Graph h = parse_graph6(enc);
    CHECK(h.n() == 100);
    CHECK(h.edge_count() == 99);
}

TEST_CASE("malformed inputs raise the documented errors") {
    CHECK_THROWS_AS(parse_graph6(""), MalformedHeader);
    CHECK_THROWS_AS(parse_graph6("\x10"), MalformedHeader);
    CHECK_THROWS_AS(parse_graph6("~A"), MalformedHeader);

    Graph g(10);
    for (int i = 0; i < 9; ++i) g.add_edge(i, i + 1);
    std::string enc = emit_graph6(g);
    CHECK_THROWS_AS(parse_graph6(enc.substr(0, enc.size() - 1)), TruncatedBitVector);
    CHECK_THROWS_AS(parse_graph6(enc + "!"), TrailingBytes);
}
