#pragma once

// Prime-field arithmetic, the quadratic forms behind the orthogonal and affine
// polar graphs, and the Cayley-set recursions over F_2.

#include "qsym/errors.hpp"
#include "qsym/graph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qsym {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Element of F_p, p prime. Kept tiny; arithmetic is mod-p on ints.
struct PrimeFieldElem {
    int value = 0;
    int p = 2;

    PrimeFieldElem() = default;
    PrimeFieldElem(int v, int p_) : p(p_) {
        if (!is_prime(p_)) throw NonPrimeModulus("PrimeFieldElem: modulus " + std::to_string(p_) + " is not prime");
        value = ((v % p) + p) % p;
    }

    PrimeFieldElem operator+(PrimeFieldElem o) const { return {(value + o.value) % p, p}; }
    PrimeFieldElem operator-(PrimeFieldElem o) const { return {(value - o.value + p) % p, p}; }
    PrimeFieldElem operator*(PrimeFieldElem o) const { return {(value * o.value) % p, p}; }
    PrimeFieldElem operator-() const { return {(p - value) % p, p}; }

    PrimeFieldElem inverse() const {
        if (value == 0) throw InvalidParameters("PrimeFieldElem: zero has no inverse");
        // extended Euclid
        int a = value, b = p, x0 = 1, x1 = 0;
        while (b) {
            int q = a / b;
            int t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return {x0, p};
    }

    bool operator==(const PrimeFieldElem&) const = default;
};

namespace fp {
inline int add(int a, int b, int p) { return (a + b) % p; }
inline int sub(int a, int b, int p) { return (a - b + p) % p; }
inline int mul(int a, int b, int p) { return (a * b) % p; }
inline int neg(int a, int p) { return (p - a % p) % p; }
} // namespace fp

// ---------------------------------------------------------------------------
// Quadratic forms

/// The four shapes of quadratic form this project evaluates. `anisotropic2`
/// carries the coefficients (a0, a1, a2) of a0 x^2 + a1 xy + a2 y^2;
/// `o6` is v0 v1 + v2 v3 + Q_e((v4, v5)) with the same coefficients for Q_e;
/// `hyperbolic` is sum x_i y_i over F_2 pairs; `elliptic` replaces the last
/// pair with x^2 + y^2 + xy (only over F_2).
struct QuadraticForm {
    enum class Kind { o6, anisotropic2, hyperbolic, elliptic };

    Kind kind = Kind::hyperbolic;
    int arity = 0;
    int p = 2;
    int a0 = 0, a1 = 0, a2 = 1; // used by o6 / anisotropic2

    static QuadraticForm o6(int p, int a0, int a1, int a2) {
        return {Kind::o6, 6, p, a0, a1, a2};
    }
    static QuadraticForm anisotropic2(int p, int a0, int a1, int a2) {
        return {Kind::anisotropic2, 2, p, a0, a1, a2};
    }
    static QuadraticForm hyperbolic(int pairs) {
        if (pairs < 1) throw InvalidParameters("hyperbolic form needs at least one pair");
        return {Kind::hyperbolic, 2 * pairs, 2, 0, 0, 0};
    }
    static QuadraticForm elliptic(int pairs) {
        if (pairs < 1) throw InvalidParameters("elliptic form needs at least one pair");
        return {Kind::elliptic, 2 * pairs, 2, 0, 0, 0};
    }

    int eval(std::span<const int> v) const {
        if (int(v.size()) != arity) throw InvalidParameters("QuadraticForm::eval: arity mismatch");
        switch (kind) {
            case Kind::anisotropic2:
                return (a0 * v[0] * v[0] + a1 * v[0] * v[1] + a2 * v[1] * v[1]) % p;
            case Kind::o6: {
                int q = v[0] * v[1] + v[2] * v[3] + a0 * v[4] * v[4] + a1 * v[4] * v[5] + a2 * v[5] * v[5];
                return q % p;
            }
            case Kind::hyperbolic: {
                int s = 0;
                for (int i = 0; i + 1 < arity; i += 2) s ^= v[i] & v[i + 1];
                return s;
            }
            case Kind::elliptic: {
                int s = 0;
                for (int i = 0; i + 1 < arity - 2; i += 2) s ^= v[i] & v[i + 1];
                int x = v[arity - 2], y = v[arity - 1];
                s ^= (x * x + y * y + x * y) & 1;
                return s;
            }
        }
        return 0;
    }
};

/// True when a0 + a1 T + a2 T^2 has no root in F_p (degree-2 irreducibility).
inline bool quadratic_is_irreducible(int p, int a0, int a1, int a2) {
    if (a2 % p == 0) return false;
    for (int t = 0; t < p; ++t)
        if ((a0 + a1 * t + a2 * t * t) % p == 0) return false;
    return true;
}

/// Lexicographically smallest irreducible monic-last quadratic: enumerate
/// (a0, a1) with a2 = 1 in lex order, take the first irreducible.
inline std::array<int, 3> first_irreducible_quadratic(int p) {
    if (!is_prime(p)) throw NonPrimeModulus("first_irreducible_quadratic: q must be prime");
    for (int a0 = 0; a0 < p; ++a0)
        for (int a1 = 0; a1 < p; ++a1)
            if (quadratic_is_irreducible(p, a0, a1, 1)) return {a0, a1, 1};
    throw InvalidParameters("no irreducible quadratic found"); // unreachable for prime p
}

// ---------------------------------------------------------------------------
// Projective points

/// Point of P^5(F_p): length-6 vector scaled so its first nonzero entry is 1.
struct ProjectivePoint {
    std::array<int, 6> coords{};
    int p = 2;

    static ProjectivePoint normalized(std::array<int, 6> v, int p) {
        ProjectivePoint pt;
        pt.p = p;
        int lead = -1;
        for (int i = 0; i < 6; ++i)
            if (v[i] % p != 0) { lead = i; break; }
        if (lead < 0) throw InvalidParameters("ProjectivePoint: zero vector");
        int inv = PrimeFieldElem(v[lead], p).inverse().value;
        for (int i = 0; i < 6; ++i) pt.coords[i] = fp::mul(((v[i] % p) + p) % p, inv, p);
        return pt;
    }

    auto operator<=>(const ProjectivePoint&) const = default;
};

// ---------------------------------------------------------------------------
// O^-(6, q)

struct OrthogonalPolarGraph {
    Graph graph;
    std::vector<ProjectivePoint> points; // vertex order, lexicographic
    QuadraticForm form;                  // the o6 form used
};

/// Vertices are the projective points with Q(v) = 0; <v> ~ <w> iff they are
/// distinct and Q(v + w) = 0. Q_e comes from first_irreducible_quadratic(q).
inline OrthogonalPolarGraph build_orthogonal_polar_full(int q) {
    if (!is_prime(q)) throw NonPrimeModulus("build_orthogonal_polar: q must be prime");
    auto [a0, a1, a2] = first_irreducible_quadratic(q);
    QuadraticForm Q = QuadraticForm::o6(q, a0, a1, a2);

    // Enumerate normalized representatives in lexicographic order directly:
    // the leading 1 may sit at any position, later coordinates free.
    std::vector<ProjectivePoint> pts;
    std::array<int, 6> v{};
    auto rec = [&](auto&& self, int i, bool lead_placed) -> void {
        if (i == 6) {
            if (lead_placed && Q.eval(v) % q == 0) {
                ProjectivePoint pt;
                pt.coords = v;
                pt.p = q;
                pts.push_back(pt);
            }
            return;
        }
        if (!lead_placed) {
            v[i] = 0;
            self(self, i + 1, false);
            v[i] = 1;
            self(self, i + 1, true);
            v[i] = 0;
        } else {
            for (int c = 0; c < q; ++c) {
                v[i] = c;
                self(self, i + 1, true);
            }
            v[i] = 0;
        }
    };
    rec(rec, 0, false);
    std::sort(pts.begin(), pts.end());

    OrthogonalPolarGraph out;
    out.form = Q;
    out.points = pts;
    out.graph = Graph(int(pts.size()), "o6minus(q=" + std::to_string(q) + ")");
    std::array<int, 6> s{};
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            for (int t = 0; t < 6; ++t) s[t] = fp::add(pts[i].coords[t], pts[j].coords[t], q);
            if (Q.eval(s) % q == 0) out.graph.add_edge(int(i), int(j));
        }
    return out;
}

inline Graph build_orthogonal_polar(int q) { return build_orthogonal_polar_full(q).graph; }

/// Same construction with an explicitly chosen irreducible Q_e; used by the
/// choice-independence property test.
inline Graph build_orthogonal_polar_with_form(int q, int a0, int a1, int a2) {
    if (!is_prime(q)) throw NonPrimeModulus("build_orthogonal_polar: q must be prime");
    if (!quadratic_is_irreducible(q, a0, a1, a2))
        throw InvalidParameters("build_orthogonal_polar_with_form: reducible quadratic");
    QuadraticForm Q = QuadraticForm::o6(q, a0, a1, a2);
    std::vector<ProjectivePoint> pts;
    std::array<int, 6> v{};
    auto rec = [&](auto&& self, int i, bool lead_placed) -> void {
        if (i == 6) {
            if (lead_placed && Q.eval(v) % q == 0) {
                ProjectivePoint pt;
                pt.coords = v;
                pt.p = q;
                pts.push_back(pt);
            }
            return;
        }
        if (!lead_placed) {
            v[i] = 0;
            self(self, i + 1, false);
            v[i] = 1;
            self(self, i + 1, true);
            v[i] = 0;
        } else {
            for (int c = 0; c < q; ++c) {
                v[i] = c;
                self(self, i + 1, true);
            }
            v[i] = 0;
        }
    };
    rec(rec, 0, false);
    std::sort(pts.begin(), pts.end());
    Graph g(int(pts.size()), "o6minus(q=" + std::to_string(q) + ",Qe=" + std::to_string(a0) + "," +
                                 std::to_string(a1) + "," + std::to_string(a2) + ")");
    std::array<int, 6> s{};
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            for (int t = 0; t < 6; ++t) s[t] = fp::add(pts[i].coords[t], pts[j].coords[t], q);
            if (Q.eval(s) % q == 0) g.add_edge(int(i), int(j));
        }
    return g;
}

// ---------------------------------------------------------------------------
// Affine polar graphs VO^{+-}(2k, 2) and the Cayley sets

enum class Sign { plus, minus };

/// Connection set over F_2^{2k}, vectors packed as masks with coordinate 0 in
/// the least significant bit (pairs are (bit 2i, bit 2i+1)).
struct CayleySet {
    int k = 1;
    Sign sign = Sign::plus;
    std::set<uint32_t> members;
};

inline int qh_mask(uint32_t v, int k) {
    int s = 0;
    for (int i = 0; i < k; ++i) s ^= int((v >> (2 * i)) & 1u) & int((v >> (2 * i + 1)) & 1u);
    return s;
}

inline int qe_mask(uint32_t v, int k) {
    int s = 0;
    for (int i = 0; i + 1 < k; ++i) s ^= int((v >> (2 * i)) & 1u) & int((v >> (2 * i + 1)) & 1u);
    int x = int((v >> (2 * (k - 1))) & 1u), y = int((v >> (2 * (k - 1) + 1)) & 1u);
    s ^= (x + y + x * y) & 1;
    return s;
}

inline CayleySet cayley_Yh(int k) {
    CayleySet s{k, Sign::plus, {}};
    for (uint32_t v = 1; v < (1u << (2 * k)); ++v)
        if (qh_mask(v, k) == 0) s.members.insert(v);
    return s;
}

inline CayleySet cayley_Zh(int k) {
    CayleySet s{k, Sign::plus, {}};
    for (uint32_t v = 0; v < (1u << (2 * k)); ++v)
        if (qh_mask(v, k) == 1) s.members.insert(v);
    return s;
}

inline CayleySet cayley_Ye(int k) {
    CayleySet s{k, Sign::minus, {}};
    for (uint32_t v = 1; v < (1u << (2 * k)); ++v)
        if (qe_mask(v, k) == 0) s.members.insert(v);
    return s;
}

inline CayleySet cayley_Ze1() {
    CayleySet s{1, Sign::minus, {}};
    for (uint32_t v = 0; v < 4; ++v)
        if (qe_mask(v, 1) == 1) s.members.insert(v);
    return s;
}

/// Cayley graph of (F_2^{2k}, +) with connection set Y^h_k (+) or Y^e_k (-),
/// vertices in lexicographic order of coordinate vectors.
inline Graph build_affine_polar(Sign sign, int k) {
    if (k < 1) throw InvalidParameters("build_affine_polar: k must be at least 1");
    if (k > 12) throw InvalidParameters("build_affine_polar: k too large");
    CayleySet Y = (sign == Sign::plus) ? cayley_Yh(k) : cayley_Ye(k);
    int n = 1 << (2 * k);
    // Lexicographic order of (v_0, ..., v_{2k-1}) means v_0 is the most
    // significant digit; our masks keep v_0 in bit 0, so remap.
    auto lex_index = [&](uint32_t mask) {
        uint32_t idx = 0;
        for (int i = 0; i < 2 * k; ++i) idx = (idx << 1) | ((mask >> i) & 1u);
        return idx;
    };
    std::vector<uint32_t> vertex_of(n); // lex index -> mask
    for (uint32_t m = 0; m < uint32_t(n); ++m) vertex_of[lex_index(m)] = m;
    Graph g(n, std::string("vo") + (sign == Sign::plus ? "plus" : "minus") + "(2k=" + std::to_string(2 * k) + ")");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (Y.members.count(vertex_of[a] ^ vertex_of[b])) g.add_edge(a, b);
    return g;
}

// ---------------------------------------------------------------------------
// Cayley-set recursion checks

struct CayleyRecursionReport {
    bool pass = true;
    std::string detail;
    std::optional<uint32_t> witness; // offending vector on failure
};

/// Asserts, as exact set equalities under F_2^{2(k+1)} = F_2^{2k} x F_2^2,
///   Y^h_{k+1} = (Y_k x Y_1) u (Y_k x {0}) u ({0} x Y_1) u (Z_k x Z_1)
///   Y^e_{k+1} = (Y^h_k x {0}) u (Z^h_k x Z^e_1).
/// The low block (first 2k coordinates) sits in the low bits of the mask.
inline CayleyRecursionReport cayley_recursion_check(int k, const std::set<uint32_t>* corrupt_Zh = nullptr) {
    CayleyRecursionReport rep;
    auto Yk = cayley_Yh(k).members;
    auto Y1 = cayley_Yh(1).members;
    auto Zk = corrupt_Zh ? *corrupt_Zh : cayley_Zh(k).members;
    auto Z1 = cayley_Zh(1).members;
    auto Ze1 = cayley_Ze1().members;

    auto glue = [&](const std::set<uint32_t>& lo, const std::set<uint32_t>& hi) {
        std::set<uint32_t> out;
        for (uint32_t a : lo)
            for (uint32_t b : hi) out.insert(a | (b << (2 * k)));
        return out;
    };

    std::set<uint32_t> rhs_h;
    for (auto& part : {glue(Yk, Y1), glue(Yk, {0u}), glue({0u}, Y1), glue(Zk, Z1)})
        rhs_h.insert(part.begin(), part.end());
    auto lhs_h = cayley_Yh(k + 1).members;
    if (lhs_h != rhs_h) {
        rep.pass = false;
        rep.detail = "Y^h recursion failed at k=" + std::to_string(k);
        for (uint32_t v : lhs_h)
            if (!rhs_h.count(v)) { rep.witness = v; return rep; }
        for (uint32_t v : rhs_h)
            if (!lhs_h.count(v)) { rep.witness = v; return rep; }
        return rep;
    }

    std::set<uint32_t> rhs_e;
    for (auto& part : {glue(Yk, {0u}), glue(Zk, Ze1)})
        rhs_e.insert(part.begin(), part.end());
    auto lhs_e = cayley_Ye(k + 1).members;
    if (lhs_e != rhs_e) {
        rep.pass = false;
        rep.detail = "Y^e recursion failed at k=" + std::to_string(k);
        for (uint32_t v : lhs_e)
            if (!rhs_e.count(v)) { rep.witness = v; return rep; }
        for (uint32_t v : rhs_e)
            if (!lhs_e.count(v)) { rep.witness = v; return rep; }
        return rep;
    }
    rep.detail = "pass, |Y^h_" + std::to_string(k + 1) + "| = " + std::to_string(lhs_h.size()) +
                 ", |Y^e_" + std::to_string(k + 1) + "| = " + std::to_string(lhs_e.size());
    return rep;
}

} // namespace qsym
