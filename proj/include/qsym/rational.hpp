#pragma once

// Exact rational scalars. All linear algebra in this project is zero-tolerance,
// so the scalar type is an arbitrary-precision rational kept in lowest terms
// with a positive denominator (GMP canonical form).

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qsym {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational_of: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "num/den" with den omitted when 1; the form used in certificate files.
inline std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("rational_from_string: bad literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rational_from_string: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

/// Lowest terms and positive denominator; mpq_class maintains this after
/// canonicalize(), asserted in tests at operation boundaries.
inline bool rational_is_canonical(const Rational& q) {
    if (q.get_den() <= 0) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return g == 1;
}

} // namespace qsym
