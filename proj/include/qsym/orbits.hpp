#pragma once

// Orbits of Aut(X) on ordered vertex k-tuples (repeated entries are
// first-class). Two strategies behind one interface:
//   - direct union-find closure over all n^k tuples when that fits the
//     threshold, with a materialized tuple -> orbit id table;
//   - a stabilizer-chain recursion otherwise (orbits of k-tuples = orbits of
//     (k-1)-point stabilizers on vertices), with lookups by minimal-image
//     descent through stored transversals.
// Representatives are the lexicographically smallest tuples of their orbits
// under both strategies, and orbit ids are assigned in representative order,
// so ids are stable across runs and strategies.

#include "qsym/errors.hpp"
#include "qsym/graph.hpp"
#include "qsym/perm.hpp"
#include "qsym/sha256.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace qsym {

constexpr long kDirectOrbitThreshold = 2'000'000;

struct OrbitBudget {
    long max_millis = -1; // unlimited when negative
};

class OrbitIndex {
public:
    OrbitIndex() = default;

    enum class Strategy { automatic, direct, chain };

    static OrbitIndex build(const Graph& g, const PermGroup& group, int k,
                            OrbitBudget budget = {}, Strategy strategy = Strategy::automatic) {
        if (k < 1 || k > 4) throw InvalidParameters("OrbitIndex: k must be in 1..4");
        if (group.degree() != g.n()) throw InvalidParameters("OrbitIndex: group degree mismatch");
        OrbitIndex oi;
        oi.k_ = k;
        oi.n_ = g.n();
        oi.graph_hash_ = g.sha256();
        oi.generators_ = group.generators();
        double npow = 1;
        for (int i = 0; i < k; ++i) npow *= g.n();
        bool direct = strategy == Strategy::direct ||
                      (strategy == Strategy::automatic && npow <= double(kDirectOrbitThreshold));
        if (direct && npow > 4e9) throw InvalidParameters("OrbitIndex: direct strategy infeasible");
        if (direct)
            oi.build_direct(budget);
        else
            oi.build_chain(budget);
        return oi;
    }

    int k() const { return k_; }
    int n() const { return n_; }
    const std::string& graph_hash() const { return graph_hash_; }
    long orbit_count() const { return orbit_count_; }

    std::span<const int> representative(long id) const {
        return {reps_.data() + size_t(id) * k_, size_t(k_)};
    }

    long lookup(std::span<const int> tuple) const {
        if (int(tuple.size()) != k_) throw ArityMismatch("OrbitIndex::lookup: tuple arity mismatch");
        if (!lookup_.empty()) {
            long idx = 0;
            for (int i = 0; i < k_; ++i) idx = idx * n_ + tuple[i];
            return lookup_[idx];
        }
        std::array<int, 4> cur{};
        for (int i = 0; i < k_; ++i) cur[i] = tuple[i];
        long node = 0;
        for (int level = 0;; ++level) {
            const ChainNode& nd = nodes_[node];
            const int* u = nd.maps.data() + size_t(cur[level]) * n_;
            for (int j = level; j < k_; ++j) cur[j] = u[cur[j]];
            int local = nd.orbit_local[cur[level]];
            if (level == k_ - 1) return nd.child[local];
            node = nd.child[local];
        }
    }

    long lookup4(int a, int b, int c, int d) const {
        std::array<int, 4> t{a, b, c, d};
        return lookup(std::span<const int>(t.data(), 4));
    }

    // ---- cache -----------------------------------------------------------

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("OrbitIndex::save: cannot open " + path);
        nlohmann::ordered_json j;
        j["magic"] = "qsym-orbit-index";
        j["version"] = 1;
        j["graph_sha256"] = graph_hash_;
        j["k"] = k_;
        j["n"] = n_;
        j["orbit_count"] = orbit_count_;
        j["generators"] = generators_;
        j["representatives"] = reps_;
        out << j.dump() << "\n";
    }

    /// Cache hit requires hash and version equality; the lookup structures are
    /// rebuilt deterministically from the stored generators and then checked
    /// against the stored representative list.
    static OrbitIndex load(const std::string& path, const Graph& g) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("OrbitIndex::load: cannot open " + path);
        nlohmann::ordered_json j;
        in >> j;
        if (j.value("magic", "") != std::string("qsym-orbit-index") || j.value("version", 0) != 1)
            throw HashMismatch("OrbitIndex::load: wrong magic or version");
        if (j.value("graph_sha256", "") != g.sha256())
            throw HashMismatch("OrbitIndex::load: graph hash mismatch");
        std::vector<Perm> gens = j.at("generators").get<std::vector<Perm>>();
        PermGroup group(g.n(), gens);
        OrbitIndex oi = build(g, group, j.at("k").get<int>());
        if (oi.orbit_count_ != j.at("orbit_count").get<long>() ||
            oi.reps_ != j.at("representatives").get<std::vector<int>>())
            throw Error("OrbitIndex::load: cache content does not reproduce");
        return oi;
    }

private:
    struct ChainNode {
        std::vector<int> orbit_local; // vertex -> local orbit index
        std::vector<int> maps;        // flattened n perms; row v maps v to its orbit rep
        std::vector<int> rep_of;      // local orbit index -> rep vertex
        std::vector<long> child;      // local orbit -> child node (inner) or orbit id (last level)
    };

    static long now_ms() {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now().time_since_epoch())
            .count();
    }

    void build_direct(OrbitBudget budget) {
        long start = now_ms();
        long total = 1;
        for (int i = 0; i < k_; ++i) total *= n_;
        std::vector<int32_t> parent(total);
        for (long i = 0; i < total; ++i) parent[i] = int32_t(i);
        auto find = [&](long x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        auto unite = [&](long a, long b) {
            a = find(a);
            b = find(b);
            if (a != b) parent[std::max(a, b)] = int32_t(std::min(a, b));
        };
        std::array<int, 4> digits{};
        for (const Perm& gperm : generators_) {
            for (long idx = 0; idx < total; ++idx) {
                long x = idx;
                for (int i = k_ - 1; i >= 0; --i) {
                    digits[i] = int(x % n_);
                    x /= n_;
                }
                long img = 0;
                for (int i = 0; i < k_; ++i) img = img * n_ + gperm[digits[i]];
                unite(idx, img);
            }
            if (budget.max_millis >= 0 && now_ms() - start > budget.max_millis)
                throw ResourceBudgetExceeded("OrbitIndex: time budget exceeded in direct closure");
        }
        lookup_.assign(total, -1);
        reps_.clear();
        long next = 0;
        for (long idx = 0; idx < total; ++idx) {
            long r = find(idx);
            if (lookup_[r] < 0) {
                lookup_[r] = int32_t(next++);
                long x = idx;
                std::array<int, 4> digs{};
                for (int i = k_ - 1; i >= 0; --i) {
                    digs[i] = int(x % n_);
                    x /= n_;
                }
                for (int i = 0; i < k_; ++i) reps_.push_back(digs[i]);
            }
            lookup_[idx] = lookup_[r];
        }
        orbit_count_ = next;
    }

    void build_chain(OrbitBudget budget) {
        long start = now_ms();
        nodes_.clear();
        reps_.clear();
        orbit_count_ = 0;
        std::vector<int> prefix;
        build_node(generators_, 0, prefix, budget, start);
    }

    long build_node(const std::vector<Perm>& gens, int level, std::vector<int>& prefix,
                    const OrbitBudget& budget, long start) {
        if (budget.max_millis >= 0 && now_ms() - start > budget.max_millis)
            throw ResourceBudgetExceeded("OrbitIndex: time budget exceeded in chain build");
        long me = long(nodes_.size());
        nodes_.push_back(ChainNode{});
        {
            ChainNode nd;
            nd.orbit_local.assign(n_, -1);
            nd.maps.assign(size_t(n_) * n_, 0);
            std::vector<Perm> inv_gens;
            inv_gens.reserve(gens.size());
            for (const auto& s : gens) inv_gens.push_back(perm_inverse(s));
            // BFS from ascending roots: each root is the minimum of its orbit
            std::vector<int> queue;
            for (int v = 0; v < n_; ++v) {
                if (nd.orbit_local[v] >= 0) continue;
                int local = int(nd.rep_of.size());
                nd.rep_of.push_back(v);
                nd.orbit_local[v] = local;
                Perm id = perm_identity(n_);
                std::copy(id.begin(), id.end(), nd.maps.begin() + size_t(v) * n_);
                queue.assign(1, v);
                for (size_t qi = 0; qi < queue.size(); ++qi) {
                    int p = queue[qi];
                    for (size_t si = 0; si < gens.size(); ++si) {
                        int w = gens[si][p];
                        if (nd.orbit_local[w] >= 0) continue;
                        nd.orbit_local[w] = local;
                        // u_w = u_p o s^{-1} maps w back to the rep
                        const int* up = nd.maps.data() + size_t(p) * n_;
                        int* uw = nd.maps.data() + size_t(w) * n_;
                        const Perm& sinv = inv_gens[si];
                        for (int x = 0; x < n_; ++x) uw[x] = up[sinv[x]];
                        queue.push_back(w);
                    }
                }
            }
            nd.child.assign(nd.rep_of.size(), -1);
            nodes_[me] = std::move(nd);
        }
        size_t orbits_here = nodes_[me].rep_of.size();
        for (size_t local = 0; local < orbits_here; ++local) {
            int rep = nodes_[me].rep_of[local];
            prefix.push_back(rep);
            if (level == k_ - 1) {
                nodes_[me].child[local] = orbit_count_++;
                for (int v : prefix) reps_.push_back(v);
            } else {
                PermGroup sub(n_, gens, {rep});
                std::vector<Perm> stab = sub.level_generators(1);
                long child = build_node(stab, level + 1, prefix, budget, start);
                nodes_[me].child[local] = child;
            }
            prefix.pop_back();
        }
        return me;
    }

    int k_ = 0;
    int n_ = 0;
    long orbit_count_ = 0;
    std::string graph_hash_;
    std::vector<Perm> generators_;
    std::vector<int> reps_;          // flattened, k_ entries per orbit
    std::vector<int32_t> lookup_;    // direct strategy only
    std::vector<ChainNode> nodes_;   // chain strategy only
};

struct DimensionBoundReport {
    long omega2 = 0;
    long omega3 = 0;
    bool within_bounds = false; // omega2 <= 3 and omega3 <= 15
};

/// The 3-transitivity signature: omega_2 <= 3 and omega_3 <= 15 (and
/// omega_2 = 2 exactly for complete graphs).
inline DimensionBoundReport dimension_bound_check(const Graph& g, const PermGroup& group) {
    DimensionBoundReport rep;
    rep.omega2 = OrbitIndex::build(g, group, 2).orbit_count();
    rep.omega3 = OrbitIndex::build(g, group, 3).orbit_count();
    rep.within_bounds = rep.omega2 <= 3 && rep.omega3 <= 15;
    return rep;
}

} // namespace qsym
