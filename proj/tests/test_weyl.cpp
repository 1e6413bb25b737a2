#include <doctest.h>

#include "qsym/weyl.hpp"

#include <random>

using namespace qsym;

TEST_CASE("Cyclotomic8 ring arithmetic and conjugation") {
    Cyclotomic8 z = Cyclotomic8::zeta_pow(1);
    // zeta^4 = -1, zeta^8 = 1
    CHECK(Cyclotomic8::zeta_pow(4) == Cyclotomic8(-1));
    CHECK(Cyclotomic8::zeta_pow(8) == Cyclotomic8(1));
    Cyclotomic8 z4 = z * z * z * z;
    CHECK(z4 == Cyclotomic8(-1));
    // i^2 = -1
    CHECK(Cyclotomic8::i() * Cyclotomic8::i() == Cyclotomic8(-1));

    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
        auto rnd = [&] {
            Cyclotomic8 c;
            for (auto& x : c.c) x = rational_of(long(rng() % 7) - 3, 1 + long(rng() % 3));
            return c;
        };
        Cyclotomic8 a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        // conjugation: involutive ring automorphism
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
        // |zeta|^2 = 1
        CHECK(z * z.conj() == Cyclotomic8(1));
    }
}

TEST_CASE("k=1: four unitaries spanning M_2") {
    WeylSystem w = build_weyl_system(1);
    CHECK(w.dim == 2);
    CHECK(w.mats.size() == 4);
    // W(0) is the identity
    CHECK(w.mats[0][0] == Cyclotomic8(1));
    CHECK(w.mats[0][3] == Cyclotomic8(1));
    CHECK(w.mats[0][1].is_zero());
    for (uint32_t g = 0; g < 4; ++g) CHECK(check_weyl_unitary(w, g));
    // pairwise trace-orthogonal with norm^2 = 2: a basis of M_2
    CHECK(weyl_gram_is_orthogonal(w, {0, 1, 2, 3}));
}

TEST_CASE("Weyl relations exhaustively for k <= 2, sampled for k = 3, 4") {
    for (int k = 1; k <= 2; ++k) {
        WeylSystem w = build_weyl_system(k);
        uint32_t n = 1u << (2 * k);
        for (uint32_t a = 0; a < n; ++a) {
            CHECK(check_weyl_unitary(w, a));
            for (uint32_t b = 0; b < n; ++b) CHECK(check_weyl_relation(w, a, b));
        }
    }
    std::mt19937 rng(99);
    for (int k = 3; k <= 4; ++k) {
        WeylSystem w = build_weyl_system(k);
        uint32_t n = 1u << (2 * k);
        for (int t = 0; t < 60; ++t) {
            uint32_t a = rng() % n, b = rng() % n;
            CHECK(check_weyl_relation(w, a, b));
        }
        for (int t = 0; t < 10; ++t) CHECK(check_weyl_unitary(w, rng() % n));
    }
}

TEST_CASE("cocycle identity on random triples") {
    std::mt19937 rng(7);
    for (int k = 1; k <= 4; ++k) {
        uint32_t n = 1u << (2 * k);
        for (int t = 0; t < 300; ++t)
            CHECK(check_cocycle_identity(k, rng() % n, rng() % n, rng() % n));
    }
}

TEST_CASE("W(gamma)^2 lies in {1, -1, i, -i} times identity") {
    for (int k = 1; k <= 3; ++k) {
        WeylSystem w = build_weyl_system(k);
        uint32_t n = 1u << (2 * k);
        for (uint32_t g = 0; g < n; ++g) {
            Cyclotomic8 diag = weyl_cocycle(k, g, g); // W(g)^2 = omega(g,g) W(0)
            bool ok = diag == Cyclotomic8(1) || diag == Cyclotomic8(-1) ||
                      diag == Cyclotomic8::i() || diag == -Cyclotomic8::i();
            CHECK(ok);
            // and the matrix square agrees
            auto sq = detail::mat_mul(w.mats[g], w.mats[g], w.dim);
            CHECK(sq == detail::mat_scale(w.mats[0], diag));
        }
    }
}

TEST_CASE("quantum adjacency fixes the identity with eigenvalue |Y|") {
    for (int k = 1; k <= 3; ++k) {
        CHECK(check_fixes_identity(quantum_adjacency(k, Sign::plus), long(cayley_Yh(k).members.size())));
        CHECK(check_fixes_identity(quantum_adjacency(k, Sign::minus), long(cayley_Ye(k).members.size())));
    }
}

TEST_CASE("idempotent Schur law holds exactly for k <= 3, both signs") {
    for (int k = 1; k <= 3; ++k)
        for (Sign s : {Sign::plus, Sign::minus}) CHECK(check_idempotent_schur(quantum_adjacency(k, s)));
}

TEST_CASE("adjacency tensor recursion holds for k = 1, 2; perturbation fails") {
    CHECK(adjacency_recursion_check(1));
    CHECK(adjacency_recursion_check(2));
    QuantumAdjacency zk = quantum_adjacency_of_set(1, Sign::plus, cayley_Zh(1).members);
    auto bad = zk.m;
    bad[2] += 1;
    CHECK_FALSE(adjacency_recursion_check(1, &bad));
}

TEST_CASE("space dimensions match the Cayley set sizes for k <= 4") {
    CHECK(space_dimension(2, Sign::plus) == 9);
    CHECK(space_dimension(2, Sign::minus) == 5); // Clebsch degree
    for (int k = 1; k <= 4; ++k) {
        CHECK(space_dimension(k, Sign::plus) == long(cayley_Yh(k).members.size()));
        CHECK(space_dimension(k, Sign::minus) == long(cayley_Ye(k).members.size()));
        // closed forms 2^{k-1}(2^k + 1) - 1 and 2^{k-1}(2^k - 1) - 1
        long d = 1L << k;
        CHECK(space_dimension(k, Sign::plus) == d * (d + 1) / 2 - 1);
        CHECK(space_dimension(k, Sign::minus) == d * (d - 1) / 2 - 1);
    }
}

TEST_CASE("symmetric/antisymmetric space recursions hold for k <= 3") {
    for (int k = 1; k <= 3; ++k) CHECK(symmetric_space_recursion_check(k));
}

TEST_CASE("classical Cayley matrices satisfy the same tensor recursion") {
    for (int k = 1; k <= 3; ++k) CHECK(classical_recursion_check(k));
}
