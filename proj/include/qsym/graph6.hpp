#pragma once

// graph6, bit-exact per the published format: 6-bit big-endian upper-triangle
// encoding with bytes offset by 63. Single-byte header for n <= 62, 126 plus
// three bytes for 63 <= n <= 258047.

#include "qsym/errors.hpp"
#include "qsym/graph.hpp"

#include <string>
#include <string_view>

namespace qsym {

inline std::string emit_graph6(const Graph& g) {
    const int n = g.n();
    std::string out;
    if (n <= 62) {
        out.push_back(char(n + 63));
    } else if (n <= 258047) {
        out.push_back(char(126));
        out.push_back(char(((n >> 12) & 63) + 63));
        out.push_back(char(((n >> 6) & 63) + 63));
        out.push_back(char((n & 63) + 63));
    } else {
        throw InvalidParameters("emit_graph6: n too large");
    }
    int acc = 0, nb = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nb == 6) {
                out.push_back(char(acc + 63));
                acc = 0;
                nb = 0;
            }
        }
    if (nb) out.push_back(char((acc << (6 - nb)) + 63));
    return out;
}

inline Graph parse_graph6(std::string_view bytes) {
    size_t pos = 0;
    auto need = [&](size_t k) {
        if (bytes.size() - pos < k) throw MalformedHeader("parse_graph6: input too short for header");
    };
    need(1);
    long n = 0;
    unsigned char c0 = static_cast<unsigned char>(bytes[pos]);
    if (c0 == 126) {
        ++pos;
        need(3);
        for (int i = 0; i < 3; ++i) {
            unsigned char c = static_cast<unsigned char>(bytes[pos + i]);
            if (c < 63 || c > 126) throw MalformedHeader("parse_graph6: bad header byte");
            n = (n << 6) | (c - 63);
        }
        pos += 3;
        if (n <= 62) throw MalformedHeader("parse_graph6: long header used for small n");
        if (n > 258047) throw MalformedHeader("parse_graph6: n out of supported range");
    } else {
        if (c0 < 63 || c0 > 125) throw MalformedHeader("parse_graph6: bad header byte");
        n = c0 - 63;
        ++pos;
    }

    long bits_needed = n * (n - 1) / 2;
    long bytes_needed = (bits_needed + 5) / 6;
    if (long(bytes.size() - pos) < bytes_needed)
        throw TruncatedBitVector("parse_graph6: bit vector truncated");
    if (long(bytes.size() - pos) > bytes_needed)
        throw TrailingBytes("parse_graph6: trailing bytes after bit vector");

    Graph g(int(n), "ingested");
    long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            unsigned char c = static_cast<unsigned char>(bytes[pos + bit / 6]);
            if (c < 63 || c > 126) throw TruncatedBitVector("parse_graph6: bad data byte");
            if ((c - 63) >> (5 - bit % 6) & 1) g.add_edge(i, j);
        }
    return g;
}

} // namespace qsym
