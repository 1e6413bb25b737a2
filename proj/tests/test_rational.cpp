#include <doctest.h>

#include "qsym/rational.hpp"

using namespace qsym;

TEST_CASE("rationals are canonical: lowest terms, positive denominator") {
    Rational a = rational_of(6, -4);
    CHECK(a.get_num() == -3);
    CHECK(a.get_den() == 2);
    CHECK(rational_is_canonical(a));

    Rational b = rational_of(0, 7);
    CHECK(b.get_num() == 0);
    CHECK(b.get_den() == 1);

    Rational c = a + b;
    CHECK(rational_is_canonical(c));
    CHECK(rational_is_canonical(a * rational_of(-4, 6)));
}

TEST_CASE("string round trip uses num/den form") {
    CHECK(rational_to_string(rational_of(3, 2)) == "3/2");
    CHECK(rational_to_string(rational_of(-5, 1)) == "-5");
    CHECK(rational_from_string("3/2") == rational_of(3, 2));
    CHECK(rational_from_string("-7") == rational_of(-7));
    CHECK(rational_from_string("6/-4") == rational_of(-3, 2));
    CHECK_THROWS(rational_from_string("x/y"));

    // ~30 digit magnitudes survive the round trip untouched
    std::string big = "-21025310690896414103783342291/5264138895030288000000";
    CHECK(rational_to_string(rational_from_string(big)) == big);
}

TEST_CASE("division by zero rejected") {
    CHECK_THROWS(rational_of(1, 0));
}
