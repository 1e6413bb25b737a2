#pragma once

// The 4-box operations: product through the orbit-pair multiplicity table,
// rotation and inverse rotation. The table entry for a target orbit omega
// counts, at its representative (x0,x1,x2,x3), the vertex pairs (y,z) with
// (x0,x1,y,z) in omega1 and (z,y,x2,x3) in omega2; the product is then
//   (a*b)_omega = sum mult * a_{omega1} * b_{omega2},
// matching the raw double sum over (y,z).

#include "qsym/coeff.hpp"
#include "qsym/errors.hpp"
#include "qsym/graph.hpp"
#include "qsym/orbits.hpp"
#include "qsym/rational.hpp"
#include "qsym/threading.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qsym {

struct MultiplicityTable {
    std::string graph_hash;
    long orbit_count = 0;
    long n = 0;
    struct Entry {
        int64_t o1, o2, mult;
        bool operator==(const Entry&) const = default;
    };
    std::vector<std::vector<Entry>> rows; // target orbit -> sparse entries sorted by (o1, o2)
};

namespace detail {

inline void table_row(const Graph& g, const OrbitIndex& oi4, MultiplicityTable& t, long id) {
    auto r = oi4.representative(id);
    std::map<std::pair<long, long>, long> acc;
    for (int y = 0; y < g.n(); ++y)
        for (int z = 0; z < g.n(); ++z) {
            long o1 = oi4.lookup4(r[0], r[1], y, z);
            long o2 = oi4.lookup4(z, y, r[2], r[3]);
            ++acc[{o1, o2}];
        }
    auto& row = t.rows[id];
    row.reserve(acc.size());
    for (auto& [key, m] : acc) row.push_back({key.first, key.second, m});
}

} // namespace detail

inline MultiplicityTable build_multiplicity_table(const Graph& g, const OrbitIndex& oi4,
                                                  int threads = 1) {
    if (oi4.k() != 4) throw ArityMismatch("build_multiplicity_table: needs the 4-box orbit index");
    if (oi4.graph_hash() != g.sha256()) throw HashMismatch("build_multiplicity_table: orbit index from other graph");
    MultiplicityTable t;
    t.graph_hash = oi4.graph_hash();
    t.orbit_count = oi4.orbit_count();
    t.n = g.n();
    t.rows.resize(t.orbit_count);
    parallel_for(t.orbit_count, threads, [&](long id) { detail::table_row(g, oi4, t, id); });
    return t;
}

inline CoefficientVector box_product(const CoefficientVector& a, const CoefficientVector& b,
                                     const MultiplicityTable& t) {
    if (a.graph_hash != t.graph_hash || b.graph_hash != t.graph_hash)
        throw HashMismatch("box_product: operands and table disagree on the graph");
    if (a.k != 4 || b.k != 4 || long(a.values.size()) != t.orbit_count ||
        long(b.values.size()) != t.orbit_count)
        throw ArityMismatch("box_product: 4-box vectors over the table's orbit space required");
    CoefficientVector out;
    out.graph_hash = t.graph_hash;
    out.k = 4;
    out.values.assign(t.orbit_count, Rational(0));
    out.derivation = Derivation::literal("product");
    for (long id = 0; id < t.orbit_count; ++id) {
        Rational s(0);
        for (const auto& e : t.rows[id]) s += Rational(long(e.mult)) * a.values[e.o1] * b.values[e.o2];
        out.values[id] = s;
    }
    return out;
}

/// rot(a)^{x0,x1,x2,x3} = a^{x3,x0,x1,x2}; computed per representative
/// through an orbit lookup of the permuted tuple.
inline CoefficientVector rot(const CoefficientVector& a, const OrbitIndex& oi4) {
    if (a.graph_hash != oi4.graph_hash()) throw HashMismatch("rot: vector from other graph");
    CoefficientVector out;
    out.graph_hash = a.graph_hash;
    out.k = 4;
    out.values.assign(oi4.orbit_count(), Rational(0));
    out.derivation = Derivation::literal("rot");
    for (long id = 0; id < oi4.orbit_count(); ++id) {
        auto r = oi4.representative(id);
        out.values[id] = a.values[oi4.lookup4(r[3], r[0], r[1], r[2])];
    }
    return out;
}

/// invrot(a)^{x0,x1,x2,x3} = a^{x1,x2,x3,x0}.
inline CoefficientVector invrot(const CoefficientVector& a, const OrbitIndex& oi4) {
    if (a.graph_hash != oi4.graph_hash()) throw HashMismatch("invrot: vector from other graph");
    CoefficientVector out;
    out.graph_hash = a.graph_hash;
    out.k = 4;
    out.values.assign(oi4.orbit_count(), Rational(0));
    out.derivation = Derivation::literal("invrot");
    for (long id = 0; id < oi4.orbit_count(); ++id) {
        auto r = oi4.representative(id);
        out.values[id] = a.values[oi4.lookup4(r[1], r[2], r[3], r[0])];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cache file: magic, version, adjacency hash, orbit count, then per-row
// varint-encoded sparse entries. Loading refuses hash or version mismatches.

namespace detail {

inline void put_varint(std::string& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(char(uint8_t(v) | 0x80));
        v >>= 7;
    }
    out.push_back(char(uint8_t(v)));
}

inline uint64_t get_varint(const std::string& in, size_t& pos) {
    uint64_t v = 0;
    int shift = 0;
    while (true) {
        if (pos >= in.size()) throw Error("multiplicity table: truncated varint");
        uint8_t b = uint8_t(in[pos++]);
        v |= uint64_t(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
        if (shift > 63) throw Error("multiplicity table: varint overflow");
    }
}

} // namespace detail

inline constexpr char kTableMagic[] = "QSMT";
inline constexpr uint32_t kTableVersion = 1;

/// rows_done < orbit_count marks a resumable partial file.
inline void save_multiplicity_table(const MultiplicityTable& t, const std::string& path,
                                    long rows_done = -1) {
    if (rows_done < 0) rows_done = t.orbit_count;
    std::string out;
    out.append(kTableMagic, 4);
    detail::put_varint(out, kTableVersion);
    detail::put_varint(out, t.graph_hash.size());
    out += t.graph_hash;
    detail::put_varint(out, uint64_t(t.orbit_count));
    detail::put_varint(out, uint64_t(t.n));
    detail::put_varint(out, uint64_t(rows_done));
    for (long id = 0; id < rows_done; ++id) {
        const auto& row = t.rows[id];
        detail::put_varint(out, row.size());
        for (const auto& e : row) {
            detail::put_varint(out, uint64_t(e.o1));
            detail::put_varint(out, uint64_t(e.o2));
            detail::put_varint(out, uint64_t(e.mult));
        }
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("save_multiplicity_table: cannot open " + path);
    f.write(out.data(), long(out.size()));
}

/// Loads a (possibly partial) table; *rows_done_out receives the number of
/// completed rows. Refuses hash or version mismatches.
inline MultiplicityTable load_multiplicity_table_partial(const std::string& path, const Graph& g,
                                                         long* rows_done_out) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("load_multiplicity_table: cannot open " + path);
    std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (in.size() < 4 || in.compare(0, 4, kTableMagic) != 0)
        throw HashMismatch("multiplicity table: bad magic");
    size_t pos = 4;
    if (detail::get_varint(in, pos) != kTableVersion)
        throw HashMismatch("multiplicity table: version mismatch");
    size_t hash_len = detail::get_varint(in, pos);
    if (pos + hash_len > in.size()) throw Error("multiplicity table: truncated hash");
    std::string hash = in.substr(pos, hash_len);
    pos += hash_len;
    if (hash != g.sha256()) throw HashMismatch("multiplicity table: graph hash mismatch");
    MultiplicityTable t;
    t.graph_hash = hash;
    t.orbit_count = long(detail::get_varint(in, pos));
    t.n = long(detail::get_varint(in, pos));
    long rows_done = long(detail::get_varint(in, pos));
    if (rows_done < 0 || rows_done > t.orbit_count) throw Error("multiplicity table: bad row count");
    t.rows.resize(t.orbit_count);
    for (long id = 0; id < rows_done; ++id) {
        auto& row = t.rows[id];
        size_t cnt = detail::get_varint(in, pos);
        row.resize(cnt);
        for (auto& e : row) {
            e.o1 = int64_t(detail::get_varint(in, pos));
            e.o2 = int64_t(detail::get_varint(in, pos));
            e.mult = int64_t(detail::get_varint(in, pos));
        }
    }
    if (pos != in.size()) throw Error("multiplicity table: trailing bytes");
    if (rows_done_out) *rows_done_out = rows_done;
    return t;
}

inline MultiplicityTable load_multiplicity_table(const std::string& path, const Graph& g) {
    long rows_done = 0;
    MultiplicityTable t = load_multiplicity_table_partial(path, g, &rows_done);
    if (rows_done != t.orbit_count) throw Error("multiplicity table: file is a partial checkpoint");
    return t;
}

/// Builds with caching and row-level checkpointing: a completed table is read
/// back from `path` when present; an interrupted build leaves its finished
/// rows behind and raises ResourceBudgetExceeded, and the next call resumes
/// from them.
inline MultiplicityTable build_multiplicity_table_resumable(
    const Graph& g, const OrbitIndex& oi4, const std::string& path, int threads = 1,
    const std::function<bool()>& should_stop = {}) {
    try {
        return load_multiplicity_table(path, g);
    } catch (const HashMismatch&) {
        throw;
    } catch (...) {
    }
    MultiplicityTable t;
    long rows_done = 0;
    try {
        t = load_multiplicity_table_partial(path + ".partial", g, &rows_done);
    } catch (...) {
        t.graph_hash = oi4.graph_hash();
        t.orbit_count = oi4.orbit_count();
        t.n = g.n();
        t.rows.assign(t.orbit_count, {});
        rows_done = 0;
    }
    const long chunk = std::max(1, 4 * threads);
    while (rows_done < t.orbit_count) {
        if (should_stop && should_stop()) {
            save_multiplicity_table(t, path + ".partial", rows_done);
            throw ResourceBudgetExceeded("multiplicity table build interrupted", path + ".partial");
        }
        long upto = std::min(t.orbit_count, rows_done + chunk);
        parallel_for(upto - rows_done, threads,
                     [&](long i) { detail::table_row(g, oi4, t, rows_done + i); });
        rows_done = upto;
    }
    save_multiplicity_table(t, path);
    std::error_code ec;
    std::filesystem::remove(path + ".partial", ec);
    return t;
}

inline nlohmann::ordered_json multiplicity_table_to_json(const MultiplicityTable& t) {
    nlohmann::ordered_json j;
    j["graph_sha256"] = t.graph_hash;
    j["orbit_count"] = t.orbit_count;
    j["n"] = t.n;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& e : row) r.push_back({e.o1, e.o2, e.mult});
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

} // namespace qsym
