#pragma once

// Permutations and base/strong-generating-set (BSGS) machinery: deterministic
// Schreier-Sims with an optional prescribed base prefix, which is how pointwise
// stabilizers for the tuple-orbit chain are extracted.

#include "qsym/errors.hpp"
#include "qsym/rational.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace qsym {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool perm_is_identity(const Perm& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != int(i)) return false;
    return true;
}

/// (a o b)(x) = a[b[x]]
inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

inline Perm perm_inverse(const Perm& a) {
    Perm inv(a.size());
    for (size_t i = 0; i < a.size(); ++i) inv[a[i]] = int(i);
    return inv;
}

inline int perm_first_moved(const Perm& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != int(i)) return int(i);
    return -1;
}

class PermGroup {
public:
    PermGroup() = default;

    /// Builds a BSGS from `gens`. `base_prefix` points are installed as the
    /// leading base points even when redundant, so chain level
    /// `base_prefix.size()` generates exactly the pointwise stabilizer of the
    /// prefix.
    explicit PermGroup(int degree, std::vector<Perm> gens, std::vector<int> base_prefix = {})
        : degree_(degree) {
        for (auto& g : gens) {
            if (int(g.size()) != degree) throw InvalidParameters("PermGroup: generator degree mismatch");
        }
        base_ = std::move(base_prefix);
        gens_ = std::move(gens);
        // drop identity generators
        std::erase_if(gens_, [](const Perm& g) { return perm_is_identity(g); });
        for (const auto& g : gens_) ensure_base_moved(g);
        if (base_.empty() && !gens_.empty()) base_.push_back(perm_first_moved(gens_[0]));
        if (base_.empty()) base_.push_back(0); // trivial group, dummy base point
        levels_.assign(base_.size(), Level{});
        for (size_t l = 0; l < base_.size(); ++l) rebuild_level(l);
        for (int l = int(base_.size()) - 1; l >= 0; --l) schreier_sims(size_t(l));
    }

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<int>& base() const { return base_; }
    size_t chain_length() const { return base_.size(); }

    Integer order() const {
        Integer o = 1;
        for (const auto& lv : levels_) o *= Integer(long(lv.orbit.size()));
        return o;
    }

    /// Generators of the pointwise stabilizer of base()[0..l-1].
    std::vector<Perm> level_generators(size_t l) const {
        std::vector<Perm> out;
        for (const auto& g : gens_)
            if (fixes_prefix(g, l)) out.push_back(g);
        return out;
    }

    bool contains(const Perm& g) const {
        Perm h = g;
        size_t stuck = strip(h, 0);
        (void)stuck;
        return perm_is_identity(h);
    }

    /// Orbit of a point at chain level 0.
    std::vector<int> orbit_of(int v) const {
        std::vector<int> orb{v};
        std::vector<char> seen(degree_, 0);
        seen[v] = 1;
        for (size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens_) {
                int w = g[orb[i]];
                if (!seen[w]) {
                    seen[w] = 1;
                    orb.push_back(w);
                }
            }
        std::sort(orb.begin(), orb.end());
        return orb;
    }

    /// Chain transversal reconstruction: every generator is a product of
    /// transversal elements (checked in tests via contains()).
    bool reconstructs_generators() const {
        for (const auto& g : gens_)
            if (!contains(g)) return false;
        return true;
    }

private:
    struct Level {
        std::vector<int> orbit;        // BFS order from base point
        std::vector<int> where;        // vertex -> position in orbit, -1 outside
        std::vector<Perm> trans;       // trans[pos](base) = orbit[pos]
        std::vector<Perm> inv_trans;   // inverse of trans[pos]
        std::vector<const Perm*> gens; // generators fixing all earlier base points
    };

    bool fixes_prefix(const Perm& g, size_t l) const {
        for (size_t i = 0; i < l && i < base_.size(); ++i)
            if (g[base_[i]] != base_[i]) return false;
        return true;
    }

    void ensure_base_moved(const Perm& g) {
        if (perm_is_identity(g)) return;
        for (int b : base_)
            if (g[b] != b) return;
        base_.push_back(perm_first_moved(g));
    }

    void rebuild_level(size_t l) {
        Level& lv = levels_[l];
        lv.gens.clear();
        for (const auto& g : gens_)
            if (fixes_prefix(g, l)) lv.gens.push_back(&g);
        lv.orbit.assign(1, base_[l]);
        lv.where.assign(degree_, -1);
        lv.where[base_[l]] = 0;
        lv.trans.assign(1, perm_identity(degree_));
        lv.inv_trans.assign(1, perm_identity(degree_));
        for (size_t i = 0; i < lv.orbit.size(); ++i)
            for (const Perm* g : lv.gens) {
                int w = (*g)[lv.orbit[i]];
                if (lv.where[w] < 0) {
                    lv.where[w] = int(lv.orbit.size());
                    lv.orbit.push_back(w);
                    lv.trans.push_back(perm_compose(*g, lv.trans[i]));
                    lv.inv_trans.push_back(perm_inverse(lv.trans.back()));
                }
            }
    }

    /// Sift h through levels starting at `from`; h becomes the residue.
    /// Returns the level index where sifting stopped.
    size_t strip(Perm& h, size_t from) const {
        for (size_t l = from; l < levels_.size(); ++l) {
            int img = h[base_[l]];
            int pos = levels_[l].where[img];
            if (pos < 0) return l;
            h = perm_compose(levels_[l].inv_trans[pos], h);
        }
        return levels_.size();
    }

    void schreier_sims(size_t l) {
        rebuild_level(l);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = 0; i < levels_[l].orbit.size() && !dirty; ++i) {
                for (size_t gi = 0; gi < levels_[l].gens.size() && !dirty; ++gi) {
                    const Perm s = *levels_[l].gens[gi]; // copy; gens_ may reallocate below
                    int p = levels_[l].orbit[i];
                    int q = s[p];
                    Perm sch = perm_compose(levels_[l].inv_trans[levels_[l].where[q]],
                                            perm_compose(s, levels_[l].trans[i]));
                    if (perm_is_identity(sch)) continue;
                    size_t j = strip(sch, l + 1);
                    if (perm_is_identity(sch)) continue;
                    // new strong generator; it fixes base[0..j-1]
                    if (j == levels_.size()) {
                        base_.push_back(perm_first_moved(sch));
                        levels_.push_back(Level{});
                    }
                    gens_.push_back(std::move(sch));
                    for (size_t m = levels_.size(); m-- > l + 1;) schreier_sims(m);
                    rebuild_level(l); // refresh generator pointers into gens_
                    dirty = true;
                }
            }
        }
    }

    int degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<int> base_;
    std::vector<Level> levels_;
};

} // namespace qsym
