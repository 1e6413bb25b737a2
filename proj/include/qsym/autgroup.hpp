#pragma once

// Graph automorphism groups and canonical labeling by individualization and
// equitable-partition refinement (degree refinement), with first-path /
// best-path trace pruning and orbit pruning by discovered automorphisms.

#include "qsym/bits.hpp"
#include "qsym/graph.hpp"
#include "qsym/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace qsym {

namespace detail {

struct Dsu {
    std::vector<int> parent, size;
    explicit Dsu(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

/// Ordered partition of {0..n-1}; cells are contiguous runs of `order`.
struct OrderedPartition {
    std::vector<int> order;      // vertices, cell by cell
    std::vector<int> pos;        // vertex -> index in order
    std::vector<int> cell_start; // position -> start of its cell
    std::vector<int> cell_len;   // defined at start positions only

    explicit OrderedPartition(int n) : order(n), pos(n), cell_start(n, 0), cell_len(n, 0) {
        for (int i = 0; i < n; ++i) order[i] = pos[i] = i;
        cell_len[0] = n;
    }

    int n() const { return int(order.size()); }
    bool is_discrete() const {
        for (int s = 0; s < n(); s += cell_len[s])
            if (cell_len[s] > 1) return false;
        return true;
    }
    int first_smallest_nonsingleton() const {
        int best = -1, best_len = n() + 1;
        for (int s = 0; s < n(); s += cell_len[s])
            if (cell_len[s] > 1 && cell_len[s] < best_len) {
                best = s;
                best_len = cell_len[s];
            }
        return best;
    }
};

/// Equitable refinement with a splitter worklist. Appends split events to
/// `trace`; events are isomorphism-invariant (positions and counts only).
class Refiner {
public:
    explicit Refiner(const Graph& g) : g_(g), n_(g.n()), words_(g.words()), mask_(words_), cnt_(n_) {}

    void refine(OrderedPartition& p, std::vector<int> worklist, std::vector<uint32_t>& trace) {
        std::vector<char> queued(n_, 0);
        for (int s : worklist) queued[s] = 1;
        size_t head = 0;
        while (head < worklist.size()) {
            int spos = worklist[head++];
            if (queued[spos] == 0) continue; // stale entry
            queued[spos] = 0;
            if (p.cell_start[spos] != spos) continue; // boundary moved; fragments were queued
            int slen = p.cell_len[spos];
            std::fill(mask_.begin(), mask_.end(), 0);
            for (int i = spos; i < spos + slen; ++i) bits::set(mask_.data(), p.order[i]);

            for (int cs = 0; cs < n_;) {
                int cl = p.cell_len[cs];
                if (cl > 1) split_cell(p, cs, cl, spos, queued, worklist, trace);
                cs += p.cell_len[cs]; // first fragment keeps the start position
            }
        }
    }

private:
    void split_cell(OrderedPartition& p, int cs, int cl, int spos, std::vector<char>& queued,
                    std::vector<int>& worklist, std::vector<uint32_t>& trace) {
        int lo = n_ + 1, hi = -1;
        for (int i = cs; i < cs + cl; ++i) {
            int c = bits::popcount_and(g_.row(p.order[i]), mask_.data(), words_);
            cnt_[p.order[i]] = c;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (lo == hi) return;

        // counting sort by count ascending, stable on the existing order
        int range = hi - lo + 1;
        if (int(hist_.size()) < range) hist_.assign(range, 0);
        std::fill(hist_.begin(), hist_.begin() + range, 0);
        for (int i = cs; i < cs + cl; ++i) ++hist_[cnt_[p.order[i]] - lo];
        int acc = 0;
        for (int r = 0; r < range; ++r) {
            int h = hist_[r];
            hist_[r] = acc;
            acc += h;
        }
        if (int(scratch_.size()) < cl) scratch_.resize(cl);
        for (int i = cs; i < cs + cl; ++i) {
            int v = p.order[i];
            scratch_[hist_[cnt_[v] - lo]++] = v;
        }

        bool cell_was_queued = queued[cs] != 0;
        queued[cs] = 0;

        trace.push_back(uint32_t(spos));
        trace.push_back(uint32_t(cs));
        int i = 0, largest_start = -1, largest_len = -1;
        while (i < cl) {
            int j = i;
            int c = cnt_[scratch_[i]];
            while (j < cl && cnt_[scratch_[j]] == c) ++j;
            int fs = cs + i, fl = j - i;
            for (int t = 0; t < fl; ++t) {
                int v = scratch_[i + t];
                p.order[fs + t] = v;
                p.pos[v] = fs + t;
                p.cell_start[fs + t] = fs;
            }
            p.cell_len[fs] = fl;
            trace.push_back(uint32_t(c));
            trace.push_back(uint32_t(fl));
            if (fl > largest_len) {
                largest_len = fl;
                largest_start = fs;
            }
            i = j;
        }
        trace.push_back(0xffffffffu);

        for (int fs = cs; fs < cs + cl; fs += p.cell_len[fs]) {
            bool enqueue = cell_was_queued || fs != largest_start;
            if (enqueue && !queued[fs]) {
                queued[fs] = 1;
                worklist.push_back(fs);
            }
        }
    }

    const Graph& g_;
    int n_, words_;
    std::vector<uint64_t> mask_;
    std::vector<int> cnt_, hist_, scratch_;
};

} // namespace detail

struct AutResult {
    std::vector<Perm> generators;
    Perm canonical_labeling; // position -> vertex of the best leaf
    long nodes_explored = 0;
};

namespace detail {

class AutSearch {
public:
    explicit AutSearch(const Graph& g) : g_(g), n_(g.n()), refiner_(g), orbits_(g.n()) {}

    AutResult run() {
        OrderedPartition p(n_);
        std::vector<uint32_t> trace;
        refiner_.refine(p, {0}, trace);
        store_segment(first_segments_, 0, trace);
        store_segment(best_segments_, 0, trace);
        descend(p, 0, /*on_first=*/true, /*tied=*/true, /*matches_first=*/true);
        AutResult out;
        out.generators = gens_;
        out.canonical_labeling = best_leaf_;
        out.nodes_explored = nodes_;
        return out;
    }

private:
    /// Returns true when an automorphism surfaced in this subtree and the
    /// enclosing sibling branch can be abandoned.
    bool descend(OrderedPartition& p, int depth, bool on_first, bool tied, bool matches_first) {
        ++nodes_;
        if (p.is_discrete()) return handle_leaf(p, on_first, tied, matches_first);

        int cell = p.first_smallest_nonsingleton();
        int clen = p.cell_len[cell];
        std::vector<int> candidates(p.order.begin() + cell, p.order.begin() + cell + clen);
        std::sort(candidates.begin(), candidates.end());

        std::vector<int> seen_siblings;
        bool first_child = true;
        for (int v : candidates) {
            if (on_first && !seen_siblings.empty()) {
                int rv = orbits_.find(v);
                bool skip = false;
                for (int w : seen_siblings)
                    if (orbits_.find(w) == rv) {
                        skip = true;
                        break;
                    }
                if (skip) continue;
            }
            OrderedPartition q = individualize(p, cell, v);
            std::vector<uint32_t> seg;
            refiner_.refine(q, {cell, cell + 1}, seg);

            bool child_on_first = on_first && first_child;
            bool child_matches_first = matches_first;
            bool child_tied = tied;
            if (child_on_first) {
                store_segment(first_segments_, depth + 1, seg);
                store_segment(best_segments_, depth + 1, seg);
            } else {
                if (child_matches_first)
                    child_matches_first = segment_equals(first_segments_, depth + 1, seg);
                if (tied) {
                    int c = compare_segment(best_segments_, depth + 1, seg);
                    if (c > 0) {
                        // strictly better trace prefix: this path now defines best
                        store_segment(best_segments_, depth + 1, seg);
                        invalidate_best_below(depth + 1);
                        child_tied = true;
                    } else {
                        child_tied = (c == 0);
                    }
                } else {
                    child_tied = false;
                }
                if (!child_tied && !child_matches_first) {
                    seen_siblings.push_back(v);
                    first_child = false;
                    continue; // can neither beat the best path nor match the first
                }
            }
            bool found = descend(q, depth + 1, child_on_first, child_tied, child_matches_first);
            seen_siblings.push_back(v);
            first_child = false;
            if (found && !on_first) return true;
        }
        return false;
    }

    static OrderedPartition individualize(const OrderedPartition& p, int cell, int v) {
        OrderedPartition q = p;
        int vp = q.pos[v];
        int other = q.order[cell];
        std::swap(q.order[cell], q.order[vp]);
        q.pos[other] = vp;
        q.pos[v] = cell;
        int cl = q.cell_len[cell];
        q.cell_len[cell] = 1;
        q.cell_start[cell] = cell;
        q.cell_len[cell + 1] = cl - 1;
        for (int i = cell + 1; i < cell + cl; ++i) q.cell_start[i] = cell + 1;
        return q;
    }

    bool handle_leaf(const OrderedPartition& p, bool on_first, bool tied, bool matches_first) {
        std::vector<uint64_t> cert = leaf_certificate(p);
        bool found_auto = false;
        if (first_cert_.empty()) {
            first_cert_ = cert;
            first_leaf_ = p.order;
            best_cert_ = cert;
            best_leaf_ = p.order;
            return false;
        }
        if (matches_first && cert == first_cert_) found_auto |= record_automorphism(first_leaf_, p.order);
        if (tied) {
            if (best_cert_.empty() || cert > best_cert_) {
                best_cert_ = cert;
                best_leaf_ = p.order;
            } else if (cert == best_cert_ && best_leaf_ != p.order) {
                found_auto |= record_automorphism(best_leaf_, p.order);
            }
        }
        return found_auto && !on_first;
    }

    bool record_automorphism(const std::vector<int>& ref_leaf, const std::vector<int>& leaf) {
        Perm g(n_);
        for (int i = 0; i < n_; ++i) g[ref_leaf[i]] = leaf[i];
        if (perm_is_identity(g)) return false;
        bool fresh = false;
        for (int i = 0; i < n_; ++i) fresh |= orbits_.unite(i, g[i]);
        if (fresh) gens_.push_back(std::move(g));
        return true; // a rediscovered automorphism still ends the sibling branch
    }

    std::vector<uint64_t> leaf_certificate(const OrderedPartition& p) const {
        int words = bits::words_for(n_);
        std::vector<uint64_t> cert(size_t(n_) * words, 0);
        for (int i = 0; i < n_; ++i) {
            const uint64_t* row = g_.row(p.order[i]);
            uint64_t* out = cert.data() + size_t(i) * words;
            for (int j = 0; j < n_; ++j)
                if (bits::get(row, p.order[j])) bits::set(out, j);
        }
        return cert;
    }

    static bool segment_equals(const std::vector<std::vector<uint32_t>>& store, int depth,
                               const std::vector<uint32_t>& seg) {
        return depth < int(store.size()) && store[depth] == seg;
    }
    /// -1: seg worse than stored; 0: equal; +1: better (or nothing stored yet).
    static int compare_segment(const std::vector<std::vector<uint32_t>>& store, int depth,
                               const std::vector<uint32_t>& seg) {
        if (depth >= int(store.size()) || store[depth].empty()) return 1;
        const auto& ref = store[depth];
        if (seg == ref) return 0;
        return seg > ref ? 1 : -1;
    }
    static void store_segment(std::vector<std::vector<uint32_t>>& store, int depth,
                              const std::vector<uint32_t>& seg) {
        if (depth >= int(store.size())) store.resize(depth + 1);
        store[depth] = seg;
    }
    void invalidate_best_below(int depth) {
        for (int d = depth + 1; d < int(best_segments_.size()); ++d) best_segments_[d].clear();
        best_cert_.clear();
        best_leaf_.clear();
    }

    const Graph& g_;
    int n_;
    Refiner refiner_;
    Dsu orbits_;
    std::vector<Perm> gens_;
    std::vector<std::vector<uint32_t>> first_segments_, best_segments_;
    std::vector<uint64_t> first_cert_, best_cert_;
    std::vector<int> first_leaf_;
    Perm best_leaf_;
    long nodes_ = 0;
};

} // namespace detail

/// Full automorphism group; generators all preserve adjacency (asserted in
/// tests), stabilizer chain built deterministically from them.
inline PermGroup automorphism_group(const Graph& g, AutResult* details = nullptr) {
    if (g.n() == 0) return PermGroup(1, {});
    detail::AutSearch search(g);
    AutResult res = search.run();
    if (details) *details = res;
    return PermGroup(g.n(), res.generators);
}

/// Canonical form: adjacency bitstring of the canonically relabeled graph.
inline std::vector<uint64_t> canonical_form(const Graph& g) {
    if (g.n() == 0) return {};
    detail::AutSearch search(g);
    AutResult res = search.run();
    const Perm& lab = res.canonical_labeling;
    int words = bits::words_for(g.n());
    std::vector<uint64_t> cert(size_t(g.n()) * words, 0);
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.adjacent(lab[i], lab[j])) bits::set(cert.data() + size_t(i) * words, j);
    return cert;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace qsym
