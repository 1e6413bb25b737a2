#pragma once

// Simple undirected graphs with bitset adjacency rows, the standard families
// from the classification list, and the strongly-regular / 3-point-regular
// verifications.

#include "qsym/bits.hpp"
#include "qsym/errors.hpp"
#include "qsym/sha256.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

class Graph {
public:
    Graph() = default;
    explicit Graph(int n, std::string provenance = "adhoc")
        : n_(n), words_(bits::words_for(n)), adj_(size_t(n) * words_, 0), provenance_(std::move(provenance)) {}

    int n() const { return n_; }
    int words() const { return words_; }
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    const uint64_t* row(int v) const { return adj_.data() + size_t(v) * words_; }
    bool adjacent(int u, int v) const { return bits::get(row(u), v); }

    void add_edge(int u, int v) {
        if (u == v) throw InvalidParameters("add_edge: loops are not allowed");
        bits::set(mut_row(u), v);
        bits::set(mut_row(v), u);
    }

    int degree(int v) const { return bits::popcount(row(v), words_); }

    long edge_count() const {
        long total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return total / 2;
    }

    bool is_regular(int* deg_out = nullptr) const {
        if (n_ == 0) return true;
        int d = degree(0);
        for (int v = 1; v < n_; ++v)
            if (degree(v) != d) return false;
        if (deg_out) *deg_out = d;
        return true;
    }

    bool is_connected() const {
        if (n_ == 0) return true;
        std::vector<int> stack{0};
        std::vector<char> seen(n_, 0);
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            bits::for_each(row(v), words_, [&](int w) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            });
        }
        return count == n_;
    }

    /// Symmetric, loop-free; asserted on every constructor output.
    bool is_valid_simple() const {
        for (int v = 0; v < n_; ++v) {
            if (adjacent(v, v)) return false;
            for (int u = v + 1; u < n_; ++u)
                if (adjacent(u, v) != adjacent(v, u)) return false;
        }
        return true;
    }

    int common_neighbors(int u, int v) const {
        return bits::popcount_and(row(u), row(v), words_);
    }

    /// Content hash over (n, upper-triangle bits); keys caches and certificates.
    std::string sha256() const {
        Sha256 h;
        uint32_t n32 = uint32_t(n_);
        uint8_t hdr[4] = {uint8_t(n32 >> 24), uint8_t(n32 >> 16), uint8_t(n32 >> 8), uint8_t(n32)};
        h.update(hdr, 4);
        std::vector<uint8_t> tri;
        tri.reserve(size_t(n_) * n_ / 16 + 1);
        uint8_t acc = 0;
        int nb = 0;
        for (int j = 1; j < n_; ++j)
            for (int i = 0; i < j; ++i) {
                acc = uint8_t((acc << 1) | (adjacent(i, j) ? 1 : 0));
                if (++nb == 8) {
                    tri.push_back(acc);
                    acc = 0;
                    nb = 0;
                }
            }
        if (nb) tri.push_back(uint8_t(acc << (8 - nb)));
        h.update(tri.data(), tri.size());
        auto d = h.digest();
        static const char* hexd = "0123456789abcdef";
        std::string out;
        out.reserve(64);
        for (uint8_t b : d) {
            out.push_back(hexd[b >> 4]);
            out.push_back(hexd[b & 15]);
        }
        return out;
    }

    nlohmann::ordered_json to_adjacency_json() const {
        nlohmann::ordered_json j;
        j["n"] = n_;
        j["provenance"] = provenance_;
        auto rows = nlohmann::ordered_json::array();
        for (int v = 0; v < n_; ++v) {
            auto nb = nlohmann::ordered_json::array();
            bits::for_each(row(v), words_, [&](int w) { nb.push_back(w); });
            rows.push_back(nb);
        }
        j["adjacency"] = rows;
        return j;
    }

private:
    uint64_t* mut_row(int v) { return adj_.data() + size_t(v) * words_; }

    int n_ = 0;
    int words_ = 0;
    std::vector<uint64_t> adj_;
    std::string provenance_ = "adhoc";
};

// ---------------------------------------------------------------------------
// Families

inline Graph complete_graph(int n) {
    if (n <= 0) throw InvalidParameters("complete_graph: n must be positive");
    Graph g(n, "complete(" + std::to_string(n) + ")");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

/// m disjoint copies of K_n.
inline Graph disjoint_union_complete(int m, int n) {
    if (m <= 0 || n <= 0) throw InvalidParameters("disjoint_union_complete: parameters must be positive");
    Graph g(m * n, "union(" + std::to_string(m) + "xK" + std::to_string(n) + ")");
    for (int b = 0; b < m; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.add_edge(b * n + i, b * n + j);
    return g;
}

inline Graph pentagon_graph() {
    Graph g(5, "pentagon");
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw InvalidParameters("cycle_graph: n must be at least 3");
    Graph g(n, "cycle(" + std::to_string(n) + ")");
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

/// Hamming graph H(2, m): m x m rook's graph, vertex (i, j) = i*m + j.
inline Graph hamming_graph(int m) {
    if (m <= 0) throw InvalidParameters("hamming_graph: m must be positive");
    Graph g(m * m, "hamming(2," + std::to_string(m) + ")");
    for (int a = 0; a < m * m; ++a)
        for (int b = a + 1; b < m * m; ++b) {
            int ai = a / m, aj = a % m, bi = b / m, bj = b % m;
            if (ai == bi || aj == bj) g.add_edge(a, b);
        }
    return g;
}

inline Graph complement(const Graph& g) {
    Graph c(g.n(), "complement(" + g.provenance() + ")");
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j)
            if (!g.adjacent(i, j)) c.add_edge(i, j);
    return c;
}

// ---------------------------------------------------------------------------
// Strongly regular verification

struct SrgParams {
    int v = 0, k = 0, lambda = 0, mu = 0;
    /// k(k - lambda - 1) = (v - k - 1) mu
    bool feasible() const {
        return long(k) * (k - lambda - 1) == long(v - k - 1) * mu;
    }
    bool operator==(const SrgParams&) const = default;
};

/// Exact (v,k,lambda,mu) or NotStronglyRegular with a witness pair.
/// Requires a connected, regular, non-complete, non-empty graph.
inline SrgParams verify_srg(const Graph& g) {
    if (g.n() < 2) throw NotStronglyRegular("verify_srg: graph too small", 0, 0);
    int k = 0;
    if (!g.is_regular(&k)) {
        int d0 = g.degree(0);
        for (int v = 1; v < g.n(); ++v)
            if (g.degree(v) != d0) throw NotStronglyRegular("verify_srg: not regular", 0, v);
    }
    if (k == 0) throw NotStronglyRegular("verify_srg: empty graph", 0, 1);
    if (k == g.n() - 1) throw NotStronglyRegular("verify_srg: complete graph", 0, 1);
    if (!g.is_connected()) throw NotStronglyRegular("verify_srg: not connected", 0, 1);

    int lambda = -1, mu = -1;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            int c = g.common_neighbors(u, v);
            if (g.adjacent(u, v)) {
                if (lambda == -1)
                    lambda = c;
                else if (c != lambda)
                    throw NotStronglyRegular("verify_srg: lambda not constant", u, v);
            } else {
                if (mu == -1)
                    mu = c;
                else if (c != mu)
                    throw NotStronglyRegular("verify_srg: mu not constant", u, v);
            }
        }
    return SrgParams{g.n(), k, lambda, mu};
}

// ---------------------------------------------------------------------------
// 3-point regularity

/// q_i per edge count i among a triple of distinct vertices; a configuration
/// that does not occur is Unrealizable, which is distinct from a count of 0
/// (the pentagon has no independent triples at all).
struct ThreePointParams {
    std::array<std::optional<int>, 4> q; // q[i] = common neighbor count, nullopt = Unrealizable
    bool operator==(const ThreePointParams&) const = default;
};

inline ThreePointParams three_point_parameters(const Graph& g) {
    ThreePointParams out;
    std::array<std::array<int, 3>, 4> first_triple{};
    const int words = g.words();
    std::vector<uint64_t> tmp(words);
    for (int a = 0; a < g.n(); ++a)
        for (int b = a + 1; b < g.n(); ++b)
            for (int c = b + 1; c < g.n(); ++c) {
                int i = int(g.adjacent(a, b)) + int(g.adjacent(a, c)) + int(g.adjacent(b, c));
                for (int w = 0; w < words; ++w) tmp[w] = g.row(a)[w] & g.row(b)[w] & g.row(c)[w];
                int cnt = bits::popcount(tmp.data(), words);
                // common neighbors are automatically distinct from a,b,c (no loops)
                if (!out.q[i].has_value()) {
                    out.q[i] = cnt;
                    first_triple[i] = {a, b, c};
                } else if (*out.q[i] != cnt) {
                    throw NotThreePointRegular("three_point_parameters: q_" + std::to_string(i) + " not constant",
                                               first_triple[i], {a, b, c});
                }
            }
    return out;
}

} // namespace qsym
