#pragma once

// Exact arithmetic in Q(zeta), zeta = exp(pi i / 4): rational coordinates
// over the basis {1, zeta, zeta^2, zeta^3} with the reduction zeta^4 = -1.

#include "qsym/rational.hpp"

#include <array>
#include <string>

namespace qsym {

struct Cyclotomic8 {
    std::array<Rational, 4> c{}; // c[0] + c[1] z + c[2] z^2 + c[3] z^3

    Cyclotomic8() = default;
    Cyclotomic8(const Rational& r) { c[0] = r; }
    Cyclotomic8(long r) { c[0] = Rational(r); }

    static Cyclotomic8 zeta_pow(int k) {
        // zeta^k with zeta^4 = -1, period 8
        k %= 8;
        if (k < 0) k += 8;
        Cyclotomic8 z;
        z.c[k % 4] = (k < 4) ? 1 : -1;
        return z;
    }
    static Cyclotomic8 i() { return zeta_pow(2); }

    bool operator==(const Cyclotomic8&) const = default;
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    bool is_rational() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }

    Cyclotomic8 operator+(const Cyclotomic8& o) const {
        Cyclotomic8 r;
        for (int k = 0; k < 4; ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    Cyclotomic8 operator-(const Cyclotomic8& o) const {
        Cyclotomic8 r;
        for (int k = 0; k < 4; ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    Cyclotomic8 operator-() const {
        Cyclotomic8 r;
        for (int k = 0; k < 4; ++k) r.c[k] = -c[k];
        return r;
    }
    Cyclotomic8 operator*(const Cyclotomic8& o) const {
        Cyclotomic8 r;
        for (int a = 0; a < 4; ++a) {
            if (c[a] == 0) continue;
            for (int b = 0; b < 4; ++b) {
                if (o.c[b] == 0) continue;
                int e = a + b;
                if (e < 4)
                    r.c[e] += c[a] * o.c[b];
                else
                    r.c[e - 4] -= c[a] * o.c[b]; // zeta^4 = -1
            }
        }
        return r;
    }
    Cyclotomic8& operator+=(const Cyclotomic8& o) { return *this = *this + o; }
    Cyclotomic8& operator*=(const Cyclotomic8& o) { return *this = *this * o; }

    /// Complex conjugation zeta -> zeta^{-1} = -zeta^3; an involutive ring
    /// automorphism.
    Cyclotomic8 conj() const {
        Cyclotomic8 r;
        r.c[0] = c[0];
        r.c[1] = -c[3];
        r.c[2] = -c[2];
        r.c[3] = -c[1];
        return r;
    }

    std::string to_string() const {
        std::string s;
        const char* base[4] = {"", "z", "z^2", "z^3"};
        for (int k = 0; k < 4; ++k) {
            if (c[k] == 0) continue;
            if (!s.empty() && c[k] > 0) s += "+";
            s += rational_to_string(c[k]);
            if (k) s += std::string("*") + base[k];
        }
        return s.empty() ? "0" : s;
    }
};

} // namespace qsym
