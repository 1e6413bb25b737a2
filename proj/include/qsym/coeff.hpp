#pragma once

// Evaluation of diagram elements as orbit-compressed coefficient vectors.
// For a diagram Gamma and externals pinned to (x_0..x_{k-1}), the raw value
// is d * c: d tests that the x_i are constant on the double-strike classes,
// c counts adjacency-preserving assignments of graph vertices to the internal
// vertices (maps, not necessarily injective; an injective mode exists behind
// a flag for comparison and is never used in certificates).
//
// The backtracking order over internal vertices is static per diagram:
// greedily pick the internal with the most already-placed neighbors
// (externals count as placed), ties by index. Candidate sets are intersected
// from neighbor bitset rows and pruned immediately.

#include "qsym/bits.hpp"
#include "qsym/diagram.hpp"
#include "qsym/errors.hpp"
#include "qsym/graph.hpp"
#include "qsym/linalg.hpp"
#include "qsym/orbits.hpp"
#include "qsym/rational.hpp"
#include "qsym/threading.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace qsym {

struct Derivation {
    enum class Type { base, product, rot, invrot, flip, literal };
    Type type = Type::literal;
    std::string diagram; // base: canonical text encoding
    long left = -1;      // product: left element id; rot/invrot: operand id
    long right = -1;     // product: right element id
    std::string note;    // literal tag

    static Derivation base(const std::string& enc) { return {Type::base, enc, -1, -1, {}}; }
    static Derivation product(long a, long b) { return {Type::product, {}, a, b, {}}; }
    static Derivation rot(long a) { return {Type::rot, {}, a, -1, {}}; }
    static Derivation invrot(long a) { return {Type::invrot, {}, a, -1, {}}; }
    static Derivation flip() { return {Type::flip, {}, -1, -1, {}}; }
    static Derivation literal(const std::string& what) { return {Type::literal, {}, -1, -1, what}; }
};

struct CoefficientVector {
    std::string graph_hash;
    int k = 4;
    std::vector<Rational> values; // orbit id -> value, lowest terms
    Derivation derivation;
};

enum class CountMode { homomorphism, injective };

namespace detail {

struct CompiledDiagram {
    int k = 0;
    int n_int = 0;
    std::vector<std::pair<int, int>> eq_pairs;         // representative equality checks
    std::vector<std::pair<int, int>> ext_edges;        // required ext-ext adjacencies
    std::vector<int> order;                            // internal visit order
    std::vector<std::vector<int>> ext_nbrs;        // per visit step: external neighbors
    std::vector<std::vector<int>> placed_int_nbrs; // per visit step: earlier steps adjacent
};

inline CompiledDiagram compile_diagram(const Diagram& d) {
    validate_diagram(d);
    CompiledDiagram c;
    c.k = d.k;
    c.n_int = d.n_int;
    for (int i = 1; i < d.k; ++i)
        for (int j = 0; j < i; ++j)
            if (d.eq_class[i] == d.eq_class[j]) {
                c.eq_pairs.emplace_back(j, i);
                break; // one check per vertex against its class anchor
            }
    c.ext_edges = d.ext_ext;

    std::vector<std::vector<int>> int_ext(d.n_int), int_int(d.n_int);
    for (auto [e, i] : d.ext_int) int_ext[i].push_back(e);
    for (auto [a, b] : d.int_int) {
        int_int[a].push_back(b);
        int_int[b].push_back(a);
    }
    std::vector<char> placed(d.n_int, 0);
    for (int step = 0; step < d.n_int; ++step) {
        int best = -1, best_score = -1;
        for (int i = 0; i < d.n_int; ++i) {
            if (placed[i]) continue;
            int score = int(int_ext[i].size());
            for (int j : int_int[i])
                if (placed[j]) ++score;
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        placed[best] = 1;
        c.order.push_back(best);
    }
    std::vector<int> step_of(d.n_int);
    for (int s = 0; s < d.n_int; ++s) step_of[c.order[s]] = s;
    c.ext_nbrs.resize(d.n_int);
    c.placed_int_nbrs.resize(d.n_int);
    for (int s = 0; s < d.n_int; ++s) {
        int v = c.order[s];
        c.ext_nbrs[s] = int_ext[v];
        for (int w : int_int[v])
            if (step_of[w] < s) c.placed_int_nbrs[s].push_back(step_of[w]);
    }
    return c;
}

class DiagramCounter {
public:
    DiagramCounter(const Graph& g, const CompiledDiagram& c, CountMode mode)
        : g_(g), c_(c), mode_(mode), words_(g.words()),
          cand_(size_t(std::max(1, c.n_int)) * words_), assigned_(c.n_int) {}

    /// d * c at pinned externals.
    long value_at(std::span<const int> x) {
        for (auto [a, b] : c_.eq_pairs)
            if (x[a] != x[b]) return 0;
        for (auto [a, b] : c_.ext_edges)
            if (!g_.adjacent(x[a], x[b])) return 0;
        if (c_.n_int == 0) return 1;
        x_ = x;
        if (mode_ == CountMode::injective) {
            used_.assign(words_, 0);
            for (int i = 0; i < c_.k; ++i) bits::set(used_.data(), x[i]);
        }
        return count_from(0);
    }

private:
    long count_from(int step) {
        uint64_t* cand = cand_.data() + size_t(step) * words_;
        bool constrained = false;
        for (int e : c_.ext_nbrs[step]) {
            const uint64_t* row = g_.row(x_[e]);
            if (!constrained) {
                std::copy(row, row + words_, cand);
                constrained = true;
            } else {
                bits::and_into(cand, row, words_);
            }
        }
        for (int s : c_.placed_int_nbrs[step]) {
            const uint64_t* row = g_.row(assigned_[s]);
            if (!constrained) {
                std::copy(row, row + words_, cand);
                constrained = true;
            } else {
                bits::and_into(cand, row, words_);
            }
        }
        if (!constrained) {
            // internal with no placed neighbors: every vertex is a candidate
            for (int w = 0; w < words_; ++w) cand[w] = ~uint64_t(0);
            int spare = words_ * 64 - g_.n();
            if (spare) cand[words_ - 1] >>= spare;
        }
        if (mode_ == CountMode::injective)
            for (int w = 0; w < words_; ++w) cand[w] &= ~used_[w];

        if (step == c_.n_int - 1 && mode_ == CountMode::homomorphism)
            return bits::popcount(cand, words_);

        long total = 0;
        std::vector<uint64_t> snapshot(cand, cand + words_);
        bits::for_each(snapshot.data(), words_, [&](int v) {
            assigned_[step] = v;
            if (mode_ == CountMode::injective) bits::set(used_.data(), v);
            if (step == c_.n_int - 1)
                total += 1;
            else
                total += count_from(step + 1);
            if (mode_ == CountMode::injective) bits::clear(used_.data(), v);
        });
        return total;
    }

    const Graph& g_;
    const CompiledDiagram& c_;
    CountMode mode_;
    int words_;
    std::vector<uint64_t> cand_;
    std::vector<int> assigned_;
    std::vector<uint64_t> used_;
    std::span<const int> x_;
};

} // namespace detail

/// Raw value d*c at one tuple, no orbit machinery; the sampling oracle for
/// orbit-constancy tests and the verifier's recomputation path.
inline long diagram_raw_value(const Graph& g, const Diagram& d, std::span<const int> x,
                              CountMode mode = CountMode::homomorphism) {
    auto c = detail::compile_diagram(d);
    if (int(x.size()) != d.k) throw ArityMismatch("diagram_raw_value: tuple arity");
    detail::DiagramCounter counter(g, c, mode);
    return counter.value_at(x);
}

/// a_Gamma in orbit coordinates: one exact value per orbit representative.
inline CoefficientVector coeff_vector(const Graph& g, const OrbitIndex& oi, const Diagram& d,
                                      CountMode mode = CountMode::homomorphism, int threads = 1) {
    if (oi.k() != d.k) throw ArityMismatch("coeff_vector: diagram arity != orbit index arity");
    if (oi.graph_hash() != g.sha256()) throw HashMismatch("coeff_vector: orbit index from other graph");
    auto compiled = detail::compile_diagram(d);
    CoefficientVector out;
    out.graph_hash = oi.graph_hash();
    out.k = d.k;
    out.values.assign(oi.orbit_count(), Rational(0));
    out.derivation = Derivation::base(encode_diagram(d));
    parallel_for(oi.orbit_count(), threads, [&](long id) {
        detail::DiagramCounter local(g, compiled, mode);
        long v = local.value_at(oi.representative(id));
        out.values[id] = Rational(long(v));
    });
    return out;
}

/// The flip target: raw value 1 iff x0 = x2 and x1 = x3.
inline CoefficientVector flip_vector(const Graph& g, const OrbitIndex& oi) {
    if (oi.k() != 4) throw ArityMismatch("flip_vector: needs the 4-box orbit index");
    CoefficientVector out;
    out.graph_hash = oi.graph_hash();
    (void)g;
    out.k = 4;
    out.values.assign(oi.orbit_count(), Rational(0));
    out.derivation = Derivation::flip();
    for (long id = 0; id < oi.orbit_count(); ++id) {
        auto r = oi.representative(id);
        out.values[id] = (r[0] == r[2] && r[1] == r[3]) ? 1 : 0;
    }
    return out;
}

/// Multiplicative unit of the 4-box product: raw delta(x0,x3) delta(x1,x2).
inline CoefficientVector unit_vector(const Graph& g, const OrbitIndex& oi) {
    if (oi.k() != 4) throw ArityMismatch("unit_vector: needs the 4-box orbit index");
    CoefficientVector out;
    out.graph_hash = oi.graph_hash();
    (void)g;
    out.k = 4;
    out.values.assign(oi.orbit_count(), Rational(0));
    out.derivation = Derivation::literal("unit");
    for (long id = 0; id < oi.orbit_count(); ++id) {
        auto r = oi.representative(id);
        out.values[id] = (r[0] == r[3] && r[1] == r[2]) ? 1 : 0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gamma_0 reduction: is the 3-external star with one internal vertex inside
// the span of the internal-free 3-diagrams other than the triangle?

enum class Gamma0Outcome { Reduces, DoesNotReduce };

inline Diagram gamma0_diagram() {
    Diagram d;
    d.k = 3;
    d.eq_class = {0, 1, 2};
    d.n_int = 1;
    d.ext_int = {{0, 0}, {1, 0}, {2, 0}};
    return d;
}

inline Gamma0Outcome gamma0_reduction_check(const Graph& g, const OrbitIndex& oi3) {
    if (oi3.k() != 3) throw ArityMismatch("gamma0_reduction_check: needs the 3-box orbit index");
    Diagram triangle;
    triangle.k = 3;
    triangle.eq_class = {0, 1, 2};
    triangle.ext_ext = {{0, 1}, {0, 2}, {1, 2}};

    SpanBasis span(oi3.orbit_count());
    DiagramEnumerator en(3, 0, 3);
    while (auto d = en.next()) {
        if (*d == triangle) continue;
        span.insert(coeff_vector(g, oi3, *d).values);
    }
    CoefficientVector g0 = coeff_vector(g, oi3, gamma0_diagram());
    return span.contains(g0.values) ? Gamma0Outcome::Reduces : Gamma0Outcome::DoesNotReduce;
}

} // namespace qsym
