#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qsym {

// Word-packed bit rows; adjacency rows and candidate sets during backtracking.
namespace bits {

inline int words_for(int n) { return (n + 63) >> 6; }

inline bool get(const uint64_t* row, int i) { return (row[i >> 6] >> (i & 63)) & 1u; }
inline void set(uint64_t* row, int i) { row[i >> 6] |= uint64_t(1) << (i & 63); }
inline void clear(uint64_t* row, int i) { row[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

inline int popcount(const uint64_t* row, int words) {
    int c = 0;
    for (int w = 0; w < words; ++w) c += std::popcount(row[w]);
    return c;
}

inline int popcount_and(const uint64_t* a, const uint64_t* b, int words) {
    int c = 0;
    for (int w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

inline void and_into(uint64_t* dst, const uint64_t* src, int words) {
    for (int w = 0; w < words; ++w) dst[w] &= src[w];
}

/// Calls f(i) for each set bit.
template <class F>
inline void for_each(const uint64_t* row, int words, F&& f) {
    for (int w = 0; w < words; ++w) {
        uint64_t x = row[w];
        while (x) {
            int b = std::countr_zero(x);
            f(w * 64 + b);
            x &= x - 1;
        }
    }
}

} // namespace bits
} // namespace qsym
