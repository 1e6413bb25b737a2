#pragma once

// The combinatorial-operator layer behind the affine polar graphs: Weyl
// systems over F_2^{2k}, the quantum adjacency operators built from them, the
// idempotent Schur-product law, the tensor recursion, and the symmetric /
// antisymmetric space decompositions mirroring the Cayley-set recursions.
//
// Conventions (declared once, checked everywhere): per coordinate pair the
// Weyl element is the Hermitian Pauli w(x, z) = i^{xz} X^x Z^z acting on C^2,
// and W(gamma) is their tensor product over the k pairs, a unitary in
// M_{2^k}(Q(zeta_8)). The multiplication phases of these matrices define the
// cocycle omega_k; its antisymmetrisation is (-1)^{symplectic form}, which is
// what makes the twisted group algebra over F_2^{2k} a full matrix algebra.
// The Frobenius functional on M_d is psi = d*Tr (so m m* = id), the quantum
// adjacency of a Cayley set S is A = sum_{gamma in S} Ad W(gamma), and the
// classical side uses the counting measure with the 0/1 adjacency matrix.

#include "qsym/cyclotomic.hpp"
#include "qsym/errors.hpp"
#include "qsym/gf.hpp"
#include "qsym/graph.hpp"
#include "qsym/rational.hpp"

#include <cstdint>
#include <vector>

namespace qsym {

// ---------------------------------------------------------------------------
// Weyl systems

struct WeylSystem {
    int k = 1;
    int dim = 2; // 2^k
    // W[gamma], gamma a mask over F_2^{2k} with pair i in bits (2i, 2i+1):
    // bit 2i is the X exponent, bit 2i+1 the Z exponent.
    std::vector<std::vector<Cyclotomic8>> mats; // dense dim x dim, row major
};

/// omega_k(a, b): the scalar with W(a) W(b) = omega_k(a, b) W(a + b).
/// Per pair: i^{x_a z_a + x_b z_b - x_{a+b} z_{a+b}} * (-1)^{z_a x_b}.
inline Cyclotomic8 weyl_cocycle(int k, uint32_t a, uint32_t b) {
    int quarter = 0; // exponent of i
    for (int p = 0; p < k; ++p) {
        int xa = (a >> (2 * p)) & 1, za = (a >> (2 * p + 1)) & 1;
        int xb = (b >> (2 * p)) & 1, zb = (b >> (2 * p + 1)) & 1;
        int xc = xa ^ xb, zc = za ^ zb;
        quarter += xa * za + xb * zb - xc * zc + 2 * (za * xb);
    }
    return Cyclotomic8::zeta_pow(2 * quarter);
}

inline WeylSystem build_weyl_system(int k) {
    if (k < 1 || k > 4) throw InvalidParameters("build_weyl_system: k must be in 1..4");
    WeylSystem w;
    w.k = k;
    w.dim = 1 << k;
    uint32_t count = 1u << (2 * k);
    w.mats.assign(count, std::vector<Cyclotomic8>(size_t(w.dim) * w.dim));
    for (uint32_t gamma = 0; gamma < count; ++gamma) {
        auto& m = w.mats[gamma];
        // W e_a = i^{sum x_p z_p} (-1)^{z . a} e_{a xor x}
        int xmask = 0, zmask = 0, q = 0;
        for (int p = 0; p < k; ++p) {
            int x = (gamma >> (2 * p)) & 1, z = (gamma >> (2 * p + 1)) & 1;
            xmask |= x << p;
            zmask |= z << p;
            q += x * z;
        }
        for (int a = 0; a < w.dim; ++a) {
            int row = a ^ xmask;
            int sign = std::popcount(unsigned(zmask & a)) & 1;
            Cyclotomic8 phase = Cyclotomic8::zeta_pow(2 * q);
            if (sign) phase = -phase;
            m[size_t(row) * w.dim + a] = phase;
        }
    }
    return w;
}

namespace detail {

inline std::vector<Cyclotomic8> mat_mul(const std::vector<Cyclotomic8>& a,
                                        const std::vector<Cyclotomic8>& b, int d) {
    std::vector<Cyclotomic8> c(size_t(d) * d);
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) {
            const Cyclotomic8& x = a[size_t(i) * d + l];
            if (x.is_zero()) continue;
            for (int j = 0; j < d; ++j) {
                const Cyclotomic8& y = b[size_t(l) * d + j];
                if (y.is_zero()) continue;
                c[size_t(i) * d + j] += x * y;
            }
        }
    return c;
}

inline std::vector<Cyclotomic8> mat_scale(const std::vector<Cyclotomic8>& a, const Cyclotomic8& s) {
    std::vector<Cyclotomic8> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
    return c;
}

inline std::vector<Cyclotomic8> mat_adjoint(const std::vector<Cyclotomic8>& a, int d) {
    std::vector<Cyclotomic8> c(size_t(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) c[size_t(j) * d + i] = a[size_t(i) * d + j].conj();
    return c;
}

} // namespace detail

/// W(a) W(b) = omega_k(a,b) W(a+b), W unitary, W(0) = 1.
inline bool check_weyl_relation(const WeylSystem& w, uint32_t a, uint32_t b) {
    auto lhs = detail::mat_mul(w.mats[a], w.mats[b], w.dim);
    auto rhs = detail::mat_scale(w.mats[a ^ b], weyl_cocycle(w.k, a, b));
    return lhs == rhs;
}

inline bool check_weyl_unitary(const WeylSystem& w, uint32_t gamma) {
    auto prod = detail::mat_mul(w.mats[gamma], detail::mat_adjoint(w.mats[gamma], w.dim), w.dim);
    for (int i = 0; i < w.dim; ++i)
        for (int j = 0; j < w.dim; ++j) {
            const Cyclotomic8& v = prod[size_t(i) * w.dim + j];
            if (i == j ? !(v == Cyclotomic8(1)) : !v.is_zero()) return false;
        }
    return true;
}

/// The standard 2-cocycle identity omega(a,b) omega(a+b,c) = omega(b,c) omega(a,b+c).
inline bool check_cocycle_identity(int k, uint32_t a, uint32_t b, uint32_t c) {
    Cyclotomic8 lhs = weyl_cocycle(k, a, b) * weyl_cocycle(k, a ^ b, c);
    Cyclotomic8 rhs = weyl_cocycle(k, b, c) * weyl_cocycle(k, a, b ^ c);
    return lhs == rhs;
}

/// Gram matrix under <A,B> = Tr(A* B): the Weyl matrices of a subset are
/// pairwise orthogonal with norm^2 = dim, hence linearly independent.
inline bool weyl_gram_is_orthogonal(const WeylSystem& w, const std::vector<uint32_t>& massk) {
    for (uint32_t a : massk)
        for (uint32_t b : massk) {
            Cyclotomic8 tr;
            for (int i = 0; i < w.dim; ++i)
                for (int l = 0; l < w.dim; ++l)
                    tr += w.mats[a][size_t(l) * w.dim + i].conj() * w.mats[b][size_t(l) * w.dim + i];
            if (a == b ? !(tr == Cyclotomic8(w.dim)) : !tr.is_zero()) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Quantum adjacency operators as superoperators on M_{2^k}, stored as integer
// matrices of size 4^k x 4^k in the matrix-unit basis e_{ab} -> a*2^k + b
// (row major). Ad W(gamma) has entries in {-1, 0, 1}: the Hermitian-Pauli
// phases cancel in conjugation.

struct QuantumAdjacency {
    int k = 1;
    int dim = 2;           // 2^k
    Sign sign = Sign::plus;
    std::vector<int64_t> m; // (dim^2) x (dim^2), row major
};

namespace detail {

/// Ad W(gamma) acting on e_{cd}: W e_{cd} W* = (-1)^{z.(c xor d)} e_{c xor x, d xor x}.
inline void add_conjugation(std::vector<int64_t>& m, int k, uint32_t gamma) {
    int dim = 1 << k;
    long D2 = long(dim) * dim;
    int xmask = 0, zmask = 0;
    for (int p = 0; p < k; ++p) {
        xmask |= ((gamma >> (2 * p)) & 1) << p;
        zmask |= ((gamma >> (2 * p + 1)) & 1) << p;
    }
    for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d) {
            int sign = std::popcount(unsigned(zmask & (c ^ d))) & 1;
            long col = long(c) * dim + d;
            long row = long(c ^ xmask) * dim + (d ^ xmask);
            m[size_t(row) * D2 + col] += sign ? -1 : 1;
        }
}

} // namespace detail

/// A = sum over the Cayley set (Y^h_k, Y^e_k, or Z^h_k) of Ad W(gamma).
inline QuantumAdjacency quantum_adjacency_of_set(int k, Sign sign, const std::set<uint32_t>& set) {
    if (k < 1 || k > 3) throw InvalidParameters("quantum_adjacency: k must be in 1..3");
    QuantumAdjacency a;
    a.k = k;
    a.dim = 1 << k;
    a.sign = sign;
    long D2 = long(a.dim) * a.dim;
    a.m.assign(size_t(D2) * D2, 0);
    for (uint32_t gamma : set) detail::add_conjugation(a.m, k, gamma);
    return a;
}

inline QuantumAdjacency quantum_adjacency(int k, Sign sign) {
    return quantum_adjacency_of_set(k, sign,
                                    sign == Sign::plus ? cayley_Yh(k).members : cayley_Ye(k).members);
}

/// m_B (A (x) A) m_B^* = A with psi = d Tr, i.e. sum_c A(e_{ac}) A(e_{cb}) =
/// d * A(e_{ab}) as d x d integer matrices.
inline bool check_idempotent_schur(const QuantumAdjacency& a) {
    int d = a.dim;
    long D2 = long(d) * d;
    auto column = [&](int c0, int c1, std::vector<int64_t>& out) {
        long col = long(c0) * d + c1;
        for (long r = 0; r < D2; ++r) out[r] = a.m[size_t(r) * D2 + col];
    };
    std::vector<int64_t> ac(D2), cb(D2);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            // lhs(u, v) = sum_c sum_w A(e_{xc})[u, w] * A(e_{cy})[w, v]
            std::vector<int64_t> lhs(size_t(d) * d, 0);
            for (int c = 0; c < d; ++c) {
                column(x, c, ac);
                column(c, y, cb);
                for (int u = 0; u < d; ++u)
                    for (int w = 0; w < d; ++w) {
                        int64_t f = ac[size_t(u) * d + w];
                        if (!f) continue;
                        for (int v = 0; v < d; ++v) lhs[size_t(u) * d + v] += f * cb[size_t(w) * d + v];
                    }
            }
            column(x, y, ac);
            for (long r = 0; r < D2; ++r)
                if (lhs[r] != int64_t(d) * ac[r]) return false;
        }
    return true;
}

/// A'(1) = |Y| * 1: each conjugation fixes the identity.
inline bool check_fixes_identity(const QuantumAdjacency& a, long set_size) {
    int d = a.dim;
    long D2 = long(d) * d;
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            int64_t s = 0;
            for (int c = 0; c < d; ++c) s += a.m[size_t(long(u) * d + v) * D2 + long(c) * d + c];
            int64_t expect = (u == v) ? set_size : 0;
            if (s != expect) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Tensor recursion A'_{k+1} = A'_k (x) A'_1 + A'_k (x) id + id (x) A'_1 +
// A''_k (x) A''_1, under M_{2^{k+1}} = M_{2^k} (x) M_2.

namespace detail {

/// Superoperator Kronecker product with the index convention
/// e_{(a1 a2)(b1 b2)} at (a1*2 + a2) * D + (b1*2 + b2), D = d1*2.
inline std::vector<int64_t> superop_tensor(const std::vector<int64_t>& s1, int d1,
                                           const std::vector<int64_t>& s2, int d2) {
    int D = d1 * d2;
    long D2 = long(D) * D;
    long d1sq = long(d1) * d1, d2sq = long(d2) * d2;
    std::vector<int64_t> out(size_t(D2) * D2, 0);
    for (long r1 = 0; r1 < d1sq; ++r1)
        for (long c1 = 0; c1 < d1sq; ++c1) {
            int64_t v1 = s1[size_t(r1) * d1sq + c1];
            if (!v1) continue;
            int a1 = int(r1) / d1, b1 = int(r1) % d1;
            int x1 = int(c1) / d1, y1 = int(c1) % d1;
            for (long r2 = 0; r2 < d2sq; ++r2)
                for (long c2 = 0; c2 < d2sq; ++c2) {
                    int64_t v2 = s2[size_t(r2) * d2sq + c2];
                    if (!v2) continue;
                    int a2 = int(r2) / d2, b2 = int(r2) % d2;
                    int x2 = int(c2) / d2, y2 = int(c2) % d2;
                    long row = long(a1 * d2 + a2) * D + (b1 * d2 + b2);
                    long col = long(x1 * d2 + x2) * D + (y1 * d2 + y2);
                    out[size_t(row) * D2 + col] += v1 * v2;
                }
        }
    return out;
}

inline std::vector<int64_t> superop_identity(int d) {
    long D2 = long(d) * d;
    std::vector<int64_t> out(size_t(D2) * D2, 0);
    for (long i = 0; i < D2; ++i) out[size_t(i) * D2 + i] = 1;
    return out;
}

} // namespace detail

/// Exact matrix identity for the recursion at the given k (so k+1 <= 3).
/// A'' is the adjacency of the Z set; id + A' + A'' is the everything-allowed
/// quantum graph. Pass a perturbation to watch it fail.
inline bool adjacency_recursion_check(int k, const std::vector<int64_t>* perturb_zz = nullptr) {
    if (k < 1 || k > 2) throw InvalidParameters("adjacency_recursion_check: k must be 1 or 2");
    QuantumAdjacency ak = quantum_adjacency_of_set(k, Sign::plus, cayley_Yh(k).members);
    QuantumAdjacency a1 = quantum_adjacency_of_set(1, Sign::plus, cayley_Yh(1).members);
    QuantumAdjacency zk = quantum_adjacency_of_set(k, Sign::plus, cayley_Zh(k).members);
    QuantumAdjacency z1 = quantum_adjacency_of_set(1, Sign::plus, cayley_Zh(1).members);
    QuantumAdjacency lhs = quantum_adjacency_of_set(k + 1, Sign::plus, cayley_Yh(k + 1).members);

    // mask bit p is matrix index bit p, so the F_2^2 block added by the
    // recursion (pair k) is the high matrix bit: the M_2 factor goes first in
    // superop_tensor, whose first argument occupies the high index bits
    std::vector<int64_t> zz = perturb_zz ? *perturb_zz : zk.m;
    auto rhs = detail::superop_tensor(a1.m, 2, ak.m, ak.dim);
    auto t2 = detail::superop_tensor(detail::superop_identity(2), 2, ak.m, ak.dim);
    auto t3 = detail::superop_tensor(a1.m, 2, detail::superop_identity(ak.dim), ak.dim);
    auto t4 = detail::superop_tensor(z1.m, 2, zz, zk.dim);
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += t2[i] + t3[i] + t4[i];
    return rhs == lhs.m;
}

// ---------------------------------------------------------------------------
// Symmetric / antisymmetric spaces in V (x) V, V = C^{2^k}: exact rational
// projections. S^s_k is Sym^2(V) minus the line of v^s = sum e_i (x) e_i;
// S^a_k is Alt^2(V) minus the line of v^a = sum e_{2i} (x) e_{2i+1} -
// e_{2i+1} (x) e_{2i}.

struct RationalMatrix {
    long n = 0;
    std::vector<Rational> m;
    Rational& at(long i, long j) { return m[size_t(i) * n + j]; }
    const Rational& at(long i, long j) const { return m[size_t(i) * n + j]; }
    bool operator==(const RationalMatrix&) const = default;
};

namespace detail {

inline RationalMatrix projection_sym(int d, int sign) { // sign +1 sym, -1 alt
    RationalMatrix p;
    p.n = long(d) * d;
    p.m.assign(size_t(p.n) * p.n, Rational(0));
    Rational half(1, 2);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            long row = long(i) * d + j;
            p.at(row, row) += half;
            long sw = long(j) * d + i;
            p.at(row, sw) += (sign > 0 ? half : -half);
        }
    return p;
}

inline RationalMatrix projection_onto_vector(const std::vector<Rational>& v) {
    RationalMatrix p;
    p.n = long(v.size());
    p.m.assign(size_t(p.n) * p.n, Rational(0));
    Rational norm2(0);
    for (const auto& x : v) norm2 += x * x;
    if (norm2 == 0) throw InvalidParameters("projection_onto_vector: zero vector");
    for (long i = 0; i < p.n; ++i) {
        if (v[i] == 0) continue;
        for (long j = 0; j < p.n; ++j) p.at(i, j) = v[i] * v[j] / norm2;
    }
    return p;
}

inline RationalMatrix mat_sub(RationalMatrix a, const RationalMatrix& b) {
    for (size_t i = 0; i < a.m.size(); ++i) a.m[i] -= b.m[i];
    return a;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix c;
    c.n = a.n;
    c.m.assign(size_t(a.n) * a.n, Rational(0));
    for (long i = 0; i < a.n; ++i)
        for (long l = 0; l < a.n; ++l) {
            const Rational& x = a.at(i, l);
            if (x == 0) continue;
            for (long j = 0; j < a.n; ++j) {
                const Rational& y = b.at(l, j);
                if (y == 0) continue;
                c.at(i, j) += x * y;
            }
        }
    return c;
}

inline Rational mat_trace(const RationalMatrix& a) {
    Rational t(0);
    for (long i = 0; i < a.n; ++i) t += a.at(i, i);
    return t;
}

} // namespace detail

inline std::vector<Rational> vector_vs(int k) {
    int d = 1 << k;
    std::vector<Rational> v(size_t(d) * d, Rational(0));
    for (int i = 0; i < d; ++i) v[size_t(i) * d + i] = 1;
    return v;
}

inline std::vector<Rational> vector_va(int k) {
    int d = 1 << k;
    std::vector<Rational> v(size_t(d) * d, Rational(0));
    for (int i = 0; 2 * i + 1 < d; ++i) {
        v[size_t(2 * i) * d + (2 * i + 1)] = 1;
        v[size_t(2 * i + 1) * d + (2 * i)] = -1;
    }
    return v;
}

/// Orthogonal projection onto S^s_k (sign +) or S^a_k (sign -); a projection
/// matrix, so its trace is its rank.
inline RationalMatrix space_projection(int k, Sign sign) {
    if (k < 1 || k > 4) throw InvalidParameters("space_projection: k must be in 1..4");
    RationalMatrix psym = detail::projection_sym(1 << k, sign == Sign::plus ? +1 : -1);
    auto v = sign == Sign::plus ? vector_vs(k) : vector_va(k);
    return detail::mat_sub(psym, detail::projection_onto_vector(v));
}

inline long space_dimension(int k, Sign sign) {
    RationalMatrix p = space_projection(k, sign);
    // verify idempotence, then read the rank off the trace
    if (!(detail::mat_mul(p, p) == p)) throw Error("space_projection: not idempotent");
    Rational t = detail::mat_trace(p);
    if (t.get_den() != 1) throw Error("space_projection: non-integer trace");
    return long(t.get_num().get_si());
}

// ---------------------------------------------------------------------------
// S^{s/a}_{k+1} decomposition: under the middle-factor swap
// (V_k (x) V_1) (x) (V_k (x) V_1) ~ (V_k (x) V_k) (x) (V_1 (x) V_1),
//   P^s_{k+1} = P^s_k (x) P^s_1 + P^s_k (x) Pv^s_1 + Pv^s_k (x) P^s_1
//             + P^alt_k (x) P^alt_1
//   P^a_{k+1} = P^s_k (x) Pv^a_1 + P^alt_k (x) P^{sym}_1
// where P^alt is the full antisymmetric projection and Pv the projection onto
// the stated invariant line.

namespace detail {

inline RationalMatrix rational_tensor(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix c;
    c.n = a.n * b.n;
    c.m.assign(size_t(c.n) * c.n, Rational(0));
    for (long i = 0; i < a.n; ++i)
        for (long j = 0; j < a.n; ++j) {
            const Rational& x = a.at(i, j);
            if (x == 0) continue;
            for (long p = 0; p < b.n; ++p)
                for (long q = 0; q < b.n; ++q) {
                    const Rational& y = b.at(p, q);
                    if (y == 0) continue;
                    c.at(i * b.n + p, j * b.n + q) = x * y;
                }
        }
    return c;
}

/// Permutation matrix for the coordinate identification
/// (V_k (x) V_1) (x) (V_k (x) V_1) -> (V_k (x) V_k) (x) (V_1 (x) V_1).
inline RationalMatrix middle_swap(int k) {
    int dk = 1 << k;
    long n = long(dk) * 2 * dk * 2;
    RationalMatrix p;
    p.n = n;
    p.m.assign(size_t(n) * n, Rational(0));
    for (int a = 0; a < dk; ++a)
        for (int s = 0; s < 2; ++s)
            for (int b = 0; b < dk; ++b)
                for (int t = 0; t < 2; ++t) {
                    long src = ((long(a) * 2 + s) * dk + b) * 2 + t; // (a,s),(b,t)
                    long dst = ((long(a) * dk + b) * 2 + s) * 2 + t; // (a,b),(s,t)
                    p.at(dst, src) = 1;
                }
    return p;
}

} // namespace qsym::detail

inline bool symmetric_space_recursion_check(int k) {
    if (k < 1 || k > 3) throw InvalidParameters("symmetric_space_recursion_check: k must be in 1..3");
    using namespace detail;
    RationalMatrix ps_k = space_projection(k, Sign::plus);
    RationalMatrix ps_1 = space_projection(1, Sign::plus);
    RationalMatrix alt_k = projection_sym(1 << k, -1);
    RationalMatrix alt_1 = projection_sym(2, -1);
    RationalMatrix sym_1 = projection_sym(2, +1);
    RationalMatrix pvs_k = projection_onto_vector(vector_vs(k));
    RationalMatrix pvs_1 = projection_onto_vector(vector_vs(1));
    RationalMatrix pva_1 = projection_onto_vector(vector_va(1));

    RationalMatrix swap = middle_swap(k);
    RationalMatrix swap_t = swap; // transpose of a permutation = inverse
    for (long i = 0; i < swap.n; ++i)
        for (long j = 0; j < i; ++j) std::swap(swap_t.m[size_t(i) * swap.n + j], swap_t.m[size_t(j) * swap.n + i]);

    auto conjugated = [&](const RationalMatrix& blocks) {
        return mat_mul(swap_t, mat_mul(blocks, swap));
    };

    // P^s_{k+1}
    RationalMatrix rhs_s = rational_tensor(ps_k, ps_1);
    {
        auto add = [&](const RationalMatrix& t) {
            for (size_t i = 0; i < rhs_s.m.size(); ++i) rhs_s.m[i] += t.m[i];
        };
        add(rational_tensor(ps_k, pvs_1));
        add(rational_tensor(pvs_k, ps_1));
        add(rational_tensor(alt_k, alt_1));
    }
    if (!(space_projection(k + 1, Sign::plus) == conjugated(rhs_s))) return false;

    // v^a_{k+1} = v^s_k (x) v^a_1 up to the same rearrangement
    {
        auto vs = vector_vs(k);
        auto va1 = vector_va(1);
        std::vector<Rational> tensor(vs.size() * va1.size(), Rational(0));
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = 0; j < va1.size(); ++j) tensor[i * va1.size() + j] = vs[i] * va1[j];
        // apply swap^{-1} to land in (V_k (x) V_1)^{(x)2} coordinates
        std::vector<Rational> moved(tensor.size(), Rational(0));
        for (long dst = 0; dst < swap.n; ++dst)
            for (long src = 0; src < swap.n; ++src)
                if (swap.at(dst, src) == 1) moved[src] = tensor[dst];
        if (moved != vector_va(k + 1)) return false;
    }

    // P^a_{k+1}
    RationalMatrix rhs_a = rational_tensor(ps_k, pva_1);
    {
        RationalMatrix t = rational_tensor(alt_k, sym_1);
        for (size_t i = 0; i < rhs_a.m.size(); ++i) rhs_a.m[i] += t.m[i];
    }
    if (!(space_projection(k + 1, Sign::minus) == conjugated(rhs_a))) return false;
    return true;
}

/// The classical Cayley adjacency matrices of VO^+(2k,2) satisfy the same
/// tensor recursion in the diagonal (function-algebra) model.
inline bool classical_recursion_check(int k) {
    if (k < 1 || k > 3) throw InvalidParameters("classical_recursion_check: k must be in 1..3");
    auto cayley_matrix = [&](int kk, const std::set<uint32_t>& s) {
        int n = 1 << (2 * kk);
        std::vector<int64_t> m(size_t(n) * n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (s.count(uint32_t(a) ^ uint32_t(b))) m[size_t(a) * n + b] = 1;
        return m;
    };
    int nk = 1 << (2 * k);
    auto Ak = cayley_matrix(k, cayley_Yh(k).members);
    auto A1 = cayley_matrix(1, cayley_Yh(1).members);
    auto Zk = cayley_matrix(k, cayley_Zh(k).members);
    auto Z1 = cayley_matrix(1, cayley_Zh(1).members);
    auto Akk = cayley_matrix(k + 1, cayley_Yh(k + 1).members);

    // vertex split F_2^{2(k+1)} = F_2^{2k} x F_2^2: low block in low bits
    int nk1 = nk * 4;
    auto idx = [&](int lo, int hi) { return lo | (hi << (2 * k)); };
    for (int a = 0; a < nk1; ++a)
        for (int b = 0; b < nk1; ++b) {
            int alo = a & (nk - 1), ahi = a >> (2 * k);
            int blo = b & (nk - 1), bhi = b >> (2 * k);
            (void)idx;
            int64_t rhs = Ak[size_t(alo) * nk + blo] * A1[size_t(ahi) * 4 + bhi] +
                          Ak[size_t(alo) * nk + blo] * (ahi == bhi ? 1 : 0) +
                          (alo == blo ? 1 : 0) * A1[size_t(ahi) * 4 + bhi] +
                          Zk[size_t(alo) * nk + blo] * Z1[size_t(ahi) * 4 + bhi];
            if (Akk[size_t(a) * nk1 + b] != rhs) return false;
        }
    return true;
}

} // namespace qsym
