#pragma once

// Planar intertwiner diagrams: k external vertices on a disk boundary, an
// equality partition over them (double-strike classes), single-strike edges
// (external-external, external-internal, internal-internal), and internal
// vertices. The diagram stands for an element of the k-box space, so validity
// includes planarity of the drawn picture.
//
// Planarity is decided on an augmented graph: the boundary cycle v0..v_{k-1}
// plus an apex joined to every external (this pins the externals to the outer
// face in the given cyclic order), all single-strike edges, and one star
// vertex per equality class of size >= 2 (a double-strike class is a drawn
// region connecting its members through the disk). The crossing pairing
// {{0,2},{1,3}} is exactly the flip and fails this test; non-crossing
// partitions pass.

#include "qsym/errors.hpp"
#include "qsym/planarity.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

struct Diagram {
    int k = 4;                                    // external vertex count
    std::vector<int> eq_class;                    // external -> class id, restricted growth form
    std::vector<std::pair<int, int>> ext_ext;     // sorted pairs (i < j)
    std::vector<std::pair<int, int>> ext_int;     // (external, internal), sorted
    std::vector<std::pair<int, int>> int_int;     // sorted pairs (i < j)
    int n_int = 0;

    bool operator==(const Diagram&) const = default;
    size_t total_edges() const { return ext_ext.size() + ext_int.size() + int_int.size(); }
};

namespace detail {

/// Rewrites a partition labeling into restricted growth form (class ids appear
/// in first-occurrence order starting at 0).
inline std::vector<int> restricted_growth(const std::vector<int>& labels) {
    std::vector<int> out(labels.size());
    std::map<int, int> seen;
    int next = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
        auto it = seen.find(labels[i]);
        if (it == seen.end()) it = seen.emplace(labels[i], next++).first;
        out[i] = it->second;
    }
    return out;
}

} // namespace detail

inline bool diagram_is_planar(const Diagram& d);

/// Structural validity: index ranges, no loops, no parallel single-strike
/// edges, internal valency >= 3, restricted-growth partition, planarity.
inline void validate_diagram(const Diagram& d) {
    if (d.k < 1) throw InvalidDiagram("diagram: k must be positive");
    if (d.n_int < 0) throw InvalidDiagram("diagram: negative internal count");
    if (int(d.eq_class.size()) != d.k) throw InvalidDiagram("diagram: partition size != k");
    if (d.eq_class != detail::restricted_growth(d.eq_class))
        throw InvalidDiagram("diagram: partition not in restricted growth form");

    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : d.ext_ext) {
        if (a < 0 || b < 0 || a >= d.k || b >= d.k) throw InvalidDiagram("diagram: ext-ext index range");
        if (a >= b) throw InvalidDiagram("diagram: ext-ext pairs must have a < b");
        if (!seen.insert({a, b}).second) throw InvalidDiagram("diagram: parallel ext-ext edge");
    }
    seen.clear();
    for (auto [e, i] : d.ext_int) {
        if (e < 0 || e >= d.k || i < 0 || i >= d.n_int) throw InvalidDiagram("diagram: ext-int index range");
        if (!seen.insert({e, i}).second) throw InvalidDiagram("diagram: parallel ext-int edge");
    }
    seen.clear();
    for (auto [a, b] : d.int_int) {
        if (a < 0 || b < 0 || a >= d.n_int || b >= d.n_int) throw InvalidDiagram("diagram: int-int index range");
        if (a >= b) throw InvalidDiagram("diagram: int-int pairs must have a < b");
        if (!seen.insert({a, b}).second) throw InvalidDiagram("diagram: parallel int-int edge");
    }
    if (!std::is_sorted(d.ext_ext.begin(), d.ext_ext.end()) ||
        !std::is_sorted(d.ext_int.begin(), d.ext_int.end()) ||
        !std::is_sorted(d.int_int.begin(), d.int_int.end()))
        throw InvalidDiagram("diagram: edge lists must be sorted");

    std::vector<int> valency(d.n_int, 0);
    for (auto [e, i] : d.ext_int) {
        (void)e;
        ++valency[i];
    }
    for (auto [a, b] : d.int_int) {
        ++valency[a];
        ++valency[b];
    }
    for (int i = 0; i < d.n_int; ++i)
        if (valency[i] <= 2) throw InvalidDiagram("diagram: internal vertex of valency <= 2");

    if (!diagram_is_planar(d)) throw InvalidDiagram("diagram: not planar");
}

inline bool diagram_is_planar(const Diagram& d) {
    // vertices: 0..k-1 externals, k..k+n_int-1 internals, then apex, then one
    // star vertex per equality class of size >= 2
    int apex = d.k + d.n_int;
    int next = apex + 1;
    int classes = d.eq_class.empty() ? 0 : 1 + *std::max_element(d.eq_class.begin(), d.eq_class.end());
    std::vector<int> class_size(classes, 0);
    for (int c : d.eq_class) ++class_size[c];
    std::vector<int> class_vertex(classes, -1);
    for (int c = 0; c < classes; ++c)
        if (class_size[c] >= 2) class_vertex[c] = next++;

    std::vector<std::pair<int, int>> edges;
    if (d.k >= 3)
        for (int i = 0; i < d.k; ++i) edges.emplace_back(i, (i + 1) % d.k);
    for (int i = 0; i < d.k; ++i) edges.emplace_back(i, apex);
    for (auto [a, b] : d.ext_ext) edges.emplace_back(a, b);
    for (auto [e, i] : d.ext_int) edges.emplace_back(e, d.k + i);
    for (auto [a, b] : d.int_int) edges.emplace_back(d.k + a, d.k + b);
    for (int i = 0; i < d.k; ++i)
        if (class_vertex[d.eq_class[i]] >= 0) edges.emplace_back(i, class_vertex[d.eq_class[i]]);

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return is_planar_graph(next, edges);
}

inline bool diagram_is_valid(const Diagram& d) {
    try {
        validate_diagram(d);
        return true;
    } catch (const InvalidDiagram&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Canonical one-line text encoding, round-trips exactly. Example:
//   k:4;eq:0011;ee:0-1,2-3;ei:0-0;ii:;ni:1

inline std::string encode_diagram(const Diagram& d) {
    if (d.k > 9) throw InvalidDiagram("encode_diagram: k > 9 unsupported");
    std::string s = "k:" + std::to_string(d.k) + ";eq:";
    for (int c : d.eq_class) s += char('0' + c);
    auto pairs = [](const std::vector<std::pair<int, int>>& v) {
        std::string out;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(v[i].first) + "-" + std::to_string(v[i].second);
        }
        return out;
    };
    s += ";ee:" + pairs(d.ext_ext);
    s += ";ei:" + pairs(d.ext_int);
    s += ";ii:" + pairs(d.int_int);
    s += ";ni:" + std::to_string(d.n_int);
    return s;
}

inline Diagram decode_diagram(const std::string& s) {
    auto field = [&](const std::string& key) -> std::string {
        std::string tag = key + ":";
        size_t at = s.find(tag);
        if (at == std::string::npos) throw InvalidDiagram("decode_diagram: missing field " + key);
        at += tag.size();
        size_t end = s.find(';', at);
        return s.substr(at, end == std::string::npos ? std::string::npos : end - at);
    };
    auto pairs = [](const std::string& str) {
        std::vector<std::pair<int, int>> out;
        size_t i = 0;
        while (i < str.size()) {
            size_t dash = str.find('-', i);
            size_t comma = str.find(',', i);
            if (dash == std::string::npos) throw InvalidDiagram("decode_diagram: bad pair");
            int a = std::stoi(str.substr(i, dash - i));
            int b = std::stoi(str.substr(dash + 1, (comma == std::string::npos ? str.size() : comma) - dash - 1));
            out.emplace_back(a, b);
            i = comma == std::string::npos ? str.size() : comma + 1;
        }
        return out;
    };
    Diagram d;
    d.k = std::stoi(field("k"));
    d.n_int = std::stoi(field("ni"));
    std::string eq = field("eq");
    for (char c : eq) d.eq_class.push_back(c - '0');
    d.ext_ext = pairs(field("ee"));
    d.ext_int = pairs(field("ei"));
    d.int_int = pairs(field("ii"));
    validate_diagram(d);
    return d;
}

// ---------------------------------------------------------------------------
// Catalog enumeration

/// Deterministic stream of valid diagrams with n_int <= max_internal and at
/// most max_edges single-strike edges, ordered by (n_int, total edges,
/// encoding), deduplicated up to relabeling of the internal vertices
/// (external labels carry meaning and stay fixed). Edges inside an equality
/// class are skipped: they force x ~ x and the element vanishes on loop-free
/// graphs.
class DiagramEnumerator {
public:
    DiagramEnumerator(int k, int max_internal, long max_edges)
        : k_(k), max_internal_(max_internal), max_edges_(max_edges) {
        if (k < 1 || max_internal < 0 || max_edges < 0)
            throw InvalidParameters("DiagramEnumerator: budgets must be nonnegative");
        partitions_ = all_partitions(k);
    }

    /// All diagrams in catalog order. Prefer next()/has_next for streaming.
    std::vector<Diagram> all() {
        std::vector<Diagram> out;
        while (auto d = next()) out.push_back(*d);
        return out;
    }

    std::optional<Diagram> next() {
        while (true) {
            if (buffer_pos_ < buffer_.size()) return buffer_[buffer_pos_++];
            if (exhausted_ || !advance_bucket()) return std::nullopt;
        }
    }

private:
    static std::vector<std::vector<int>> all_partitions(int k) {
        // restricted growth strings in lexicographic order
        std::vector<std::vector<int>> out;
        std::vector<int> rgs(k, 0);
        while (true) {
            out.push_back(rgs);
            int i = k - 1;
            for (; i > 0; --i) {
                int maxv = 0;
                for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
                if (rgs[i] <= maxv) {
                    ++rgs[i];
                    for (int j = i + 1; j < k; ++j) rgs[j] = 0;
                    break;
                }
                rgs[i] = 0;
            }
            if (i == 0) break;
        }
        return out;
    }

    /// Fills buffer_ with the (n_int, edge_count) bucket in encoding order.
    bool advance_bucket() {
        buffer_.clear();
        buffer_pos_ = 0;
        while (buffer_.empty()) {
            if (cur_edges_ > long(max_possible_edges(cur_int_)) || cur_edges_ > max_edges_) {
                ++cur_int_;
                cur_edges_ = 0;
                if (cur_int_ > max_internal_) {
                    exhausted_ = true;
                    return false;
                }
            }
            fill_bucket(cur_int_, cur_edges_);
            ++cur_edges_;
        }
        return true;
    }

    size_t max_possible_edges(int ni) const {
        return size_t(k_ * (k_ - 1) / 2) + size_t(k_ * ni) + size_t(ni * (ni - 1) / 2);
    }

    void fill_bucket(int ni, long edges) {
        // candidate edge slots, in the fixed order ee, ei, ii
        std::vector<std::pair<int, int>> ee, ei, ii;
        for (int a = 0; a < k_; ++a)
            for (int b = a + 1; b < k_; ++b) ee.emplace_back(a, b);
        for (int e = 0; e < k_; ++e)
            for (int i = 0; i < ni; ++i) ei.emplace_back(e, i);
        for (int a = 0; a < ni; ++a)
            for (int b = a + 1; b < ni; ++b) ii.emplace_back(a, b);
        size_t slots = ee.size() + ei.size() + ii.size();
        if (edges > long(slots)) return;

        std::vector<Diagram> found;
        for (const auto& part : partitions_) {
            std::vector<int> pick;
            enumerate_subsets(slots, size_t(edges), pick, [&](const std::vector<int>& chosen) {
                Diagram d;
                d.k = k_;
                d.eq_class = part;
                d.n_int = ni;
                for (int idx : chosen) {
                    if (idx < int(ee.size()))
                        d.ext_ext.push_back(ee[idx]);
                    else if (idx < int(ee.size() + ei.size()))
                        d.ext_int.push_back(ei[idx - ee.size()]);
                    else
                        d.int_int.push_back(ii[idx - ee.size() - ei.size()]);
                }
                // quick rejections before the planarity test
                for (auto [a, b] : d.ext_ext)
                    if (part[a] == part[b]) return;
                std::vector<int> val(ni, 0);
                for (auto [e, i] : d.ext_int) {
                    (void)e;
                    ++val[i];
                }
                for (auto [a, b] : d.int_int) {
                    ++val[a];
                    ++val[b];
                }
                for (int v : val)
                    if (v <= 2) return;
                if (!is_internal_canonical(d)) return;
                if (!diagram_is_planar(d)) return;
                found.push_back(std::move(d));
            });
        }
        std::sort(found.begin(), found.end(), [](const Diagram& a, const Diagram& b) {
            return encode_diagram(a) < encode_diagram(b);
        });
        for (auto& d : found) buffer_.push_back(std::move(d));
    }

    template <class F>
    static void enumerate_subsets(size_t slots, size_t want, std::vector<int>& pick, F&& sink) {
        if (pick.size() == want) {
            sink(pick);
            return;
        }
        int start = pick.empty() ? 0 : pick.back() + 1;
        for (int i = start; i + int(want - pick.size()) <= int(slots); ++i) {
            pick.push_back(i);
            enumerate_subsets(slots, want, pick, sink);
            pick.pop_back();
        }
    }

    /// Keeps one representative per internal-relabeling class: the identity
    /// labeling must give the lexicographically least encoding.
    bool is_internal_canonical(const Diagram& d) const {
        if (d.n_int <= 1) return true;
        std::vector<int> perm(d.n_int);
        std::iota(perm.begin(), perm.end(), 0);
        std::string self = encode_diagram(d);
        while (std::next_permutation(perm.begin(), perm.end())) {
            Diagram r = d;
            for (auto& [e, i] : r.ext_int) i = perm[i];
            for (auto& [a, b] : r.int_int) {
                a = perm[a];
                b = perm[b];
                if (a > b) std::swap(a, b);
            }
            std::sort(r.ext_int.begin(), r.ext_int.end());
            std::sort(r.int_int.begin(), r.int_int.end());
            if (encode_diagram(r) < self) return false;
        }
        return true;
    }

    int k_;
    int max_internal_;
    long max_edges_;
    std::vector<std::vector<int>> partitions_;
    std::vector<Diagram> buffer_;
    size_t buffer_pos_ = 0;
    int cur_int_ = 0;
    long cur_edges_ = 0;
    bool exhausted_ = false;
};

} // namespace qsym
