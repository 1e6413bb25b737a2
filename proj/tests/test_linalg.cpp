#include <doctest.h>

#include "qsym/linalg.hpp"

#include <random>

using namespace qsym;

namespace {
std::vector<Rational> vec(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}
} // namespace

TEST_CASE("inserting the zero vector is dependent with all-zero coordinates") {
    SpanBasis b(3);
    auto out = b.insert(vec({0, 0, 0}));
    CHECK_FALSE(out.independent);
    CHECK(out.coords.empty()); // nothing accepted yet
    b.insert(vec({1, 0, 0}));
    auto out2 = b.insert(vec({0, 0, 0}));
    CHECK_FALSE(out2.independent);
    REQUIRE(out2.coords.size() == 1);
    CHECK(out2.coords[0] == 0);
}

TEST_CASE("e1 then e2: ranks 1 and 2") {
    SpanBasis b(2);
    CHECK(b.insert(vec({1, 0})).independent);
    CHECK(b.rank() == 1);
    CHECK(b.insert(vec({0, 1})).independent);
    CHECK(b.rank() == 2);
}

TEST_CASE("inserting a vector twice: the second is dependent with coordinate 1") {
    SpanBasis b(4);
    auto v = vec({3, -2, 5, 7});
    CHECK(b.insert(v).independent);
    auto out = b.insert(v);
    CHECK_FALSE(out.independent);
    REQUIRE(out.coords.size() == 1);
    CHECK(out.coords[0] == 1);
}

TEST_CASE("dependent coordinates reproduce the vector exactly") {
    std::mt19937 rng(3);
    const long dim = 12;
    for (int trial = 0; trial < 20; ++trial) {
        SpanBasis b(dim);
        std::vector<std::vector<Rational>> accepted;
        for (int step = 0; step < 20; ++step) {
            std::vector<Rational> v(dim);
            if (!accepted.empty() && rng() % 3 == 0) {
                // deliberate combination of already-accepted vectors
                for (auto& av : accepted) {
                    Rational c = rational_of(long(rng() % 7) - 3, long(rng() % 3) + 1);
                    for (long j = 0; j < dim; ++j) v[j] += c * av[j];
                }
            } else {
                for (auto& x : v) x = rational_of(long(rng() % 11) - 5, long(rng() % 4) + 1);
            }
            auto out = b.insert(v);
            if (out.independent) {
                accepted.push_back(v);
            } else {
                REQUIRE(out.coords.size() == accepted.size());
                std::vector<Rational> recon(dim, Rational(0));
                for (size_t j = 0; j < accepted.size(); ++j)
                    for (long t = 0; t < dim; ++t) recon[t] += out.coords[j] * accepted[j][t];
                CHECK(recon == v);
            }
        }
        CHECK(b.rank() <= dim);
    }
}

TEST_CASE("solve is non-mutating and matches insert verdicts") {
    SpanBasis b(3);
    b.insert(vec({1, 1, 0}));
    b.insert(vec({0, 1, 1}));
    long rank_before = b.rank();
    CHECK(b.solve(vec({1, 2, 1})).has_value());  // sum of the two
    CHECK_FALSE(b.solve(vec({0, 0, 1})).has_value());
    CHECK(b.rank() == rank_before);
    auto coords = b.solve(vec({1, 2, 1}));
    REQUIRE(coords.has_value());
    CHECK((*coords)[0] == 1);
    CHECK((*coords)[1] == 1);
}

TEST_CASE("dimension mismatch raises") {
    SpanBasis b(3);
    CHECK_THROWS_AS(b.insert(vec({1, 0})), DimensionMismatch);
}

TEST_CASE("rank never decreases and is bounded by the dimension") {
    std::mt19937 rng(77);
    SpanBasis b(6);
    long prev = 0;
    for (int i = 0; i < 40; ++i) {
        std::vector<Rational> v(6);
        for (auto& x : v) x = Rational(long(rng() % 5) - 2);
        b.insert(v);
        CHECK(b.rank() >= prev);
        CHECK(b.rank() <= 6);
        prev = b.rank();
    }
    CHECK(prev == 6); // overwhelmingly likely with 40 random vectors
}
