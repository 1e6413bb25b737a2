#include <doctest.h>

#include "qsym/gf.hpp"

#include <array>

using namespace qsym;

TEST_CASE("field axioms hold exhaustively for p <= 7") {
    for (int p : {2, 3, 5, 7}) {
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                PrimeFieldElem x(a, p), y(b, p);
                CHECK((x + y).value == (a + b) % p);
                CHECK((x * y).value == (a * b) % p);
                CHECK((x + y) == (y + x));
                CHECK((x * y) == (y * x));
                for (int c = 0; c < p; ++c) {
                    PrimeFieldElem z(c, p);
                    CHECK(((x + y) + z) == (x + (y + z)));
                    CHECK(((x * y) * z) == (x * (y * z)));
                    CHECK((x * (y + z)) == (x * y + x * z));
                }
                if (b != 0) CHECK((y * y.inverse()).value == 1);
            }
    }
    CHECK_THROWS_AS(PrimeFieldElem(1, 6), NonPrimeModulus);
    CHECK_THROWS_AS(PrimeFieldElem(1, 1), NonPrimeModulus);
}

TEST_CASE("first irreducible quadratic, and anisotropy of Q_e") {
    // q=2: T^2+T+1 is the only irreducible monic quadratic
    CHECK(first_irreducible_quadratic(2) == std::array<int, 3>{1, 1, 1});
    // q=3: T^2+1 comes first in (a0, a1) lex order
    CHECK(first_irreducible_quadratic(3) == std::array<int, 3>{1, 0, 1});

    for (int p : {2, 3, 5, 7}) {
        auto [a0, a1, a2] = first_irreducible_quadratic(p);
        auto Qe = QuadraticForm::anisotropic2(p, a0, a1, a2);
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y) {
                std::array<int, 2> v{x, y};
                bool zero = Qe.eval(v) % p == 0;
                CHECK(zero == (x == 0 && y == 0));
            }
    }
}

TEST_CASE("projective normalization is idempotent and scale invariant") {
    for (int p : {2, 3, 5}) {
        std::array<int, 6> v{0, 2 % p, 1, p - 1, 0, 3 % p};
        if (p == 2) v = {0, 1, 1, 1, 0, 1};
        auto pt = ProjectivePoint::normalized(v, p);
        CHECK(ProjectivePoint::normalized(pt.coords, p) == pt);
        for (int lam = 1; lam < p; ++lam) {
            std::array<int, 6> w;
            for (int i = 0; i < 6; ++i) w[i] = fp::mul(v[i], lam, p);
            CHECK(ProjectivePoint::normalized(w, p) == pt);
        }
        int lead = -1;
        for (int i = 0; i < 6 && lead < 0; ++i)
            if (pt.coords[i] != 0) lead = i;
        CHECK(pt.coords[lead] == 1);
    }
    CHECK_THROWS(ProjectivePoint::normalized({0, 0, 0, 0, 0, 0}, 3));
}

TEST_CASE("hyperbolic and elliptic forms over F_2") {
    // Q_h on one pair is xy; Q_e on one pair is x^2+y^2+xy, nonzero off 0
    CHECK(qh_mask(0b00, 1) == 0);
    CHECK(qh_mask(0b01, 1) == 0);
    CHECK(qh_mask(0b10, 1) == 0);
    CHECK(qh_mask(0b11, 1) == 1);
    CHECK(qe_mask(0b00, 1) == 0);
    CHECK(qe_mask(0b01, 1) == 1);
    CHECK(qe_mask(0b10, 1) == 1);
    CHECK(qe_mask(0b11, 1) == 1);

    auto Qh = QuadraticForm::hyperbolic(2);
    std::array<int, 4> v{1, 1, 1, 1};
    CHECK(Qh.eval(v) == 0); // xy + xy = 0
    auto Qe = QuadraticForm::elliptic(2);
    CHECK(Qe.eval(v) == 0); // xy + (x^2+y^2+xy) = 1 + 1
}

TEST_CASE("elliptic form agrees with the mask evaluator") {
    auto Qe = QuadraticForm::elliptic(3);
    for (uint32_t m = 0; m < 64; ++m) {
        std::array<int, 6> v;
        for (int i = 0; i < 6; ++i) v[i] = int((m >> i) & 1u);
        CHECK(Qe.eval(v) == qe_mask(m, 3));
    }
    auto Qh = QuadraticForm::hyperbolic(3);
    for (uint32_t m = 0; m < 64; ++m) {
        std::array<int, 6> v;
        for (int i = 0; i < 6; ++i) v[i] = int((m >> i) & 1u);
        CHECK(Qh.eval(v) == qh_mask(m, 3));
    }
}

TEST_CASE("Cayley set sizes match the closed forms for k <= 6") {
    for (int k = 1; k <= 6; ++k) {
        long yh = (1L << (2 * k - 1)) + (1L << (k - 1)) - 1;
        long ye = (1L << (2 * k - 1)) - (1L << (k - 1)) - 1;
        CHECK(long(cayley_Yh(k).members.size()) == yh);
        CHECK(long(cayley_Ye(k).members.size()) == ye);
        // 0 is in neither Y set; Z is the complement of Y u {0}
        CHECK(cayley_Yh(k).members.count(0) == 0);
        CHECK(long(cayley_Zh(k).members.size()) == (1L << (2 * k)) - yh - 1);
    }
}

TEST_CASE("Cayley recursion identities hold for k = 1..5") {
    for (int k = 1; k <= 5; ++k) {
        auto rep = cayley_recursion_check(k);
        CHECK(rep.pass);
    }
    // |Y^h_5| = 2^9 + 2^4 - 1 = 527 by direct enumeration
    CHECK(cayley_Yh(5).members.size() == 527);
}

TEST_CASE("corrupted Z set fails the recursion with a witness") {
    auto bad = cayley_Zh(2).members;
    bad.erase(bad.begin());
    auto rep = cayley_recursion_check(2, &bad);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness.has_value());
}
