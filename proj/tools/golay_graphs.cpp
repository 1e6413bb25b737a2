// Regenerates data/mclaughlin.g6 and data/higman_sims.g6 from the binary
// [23,12,7] Golay code. The library itself only ingests these files; this
// tool documents where they come from.
//
// Blocks of the Steiner system S(4,7,23) are the weight-7 codewords. With a
// fixed point (22):
//   McLaughlin graph, SRG(275,112,30,56):
//     vertices: 22 points, 77 blocks through the fixed point, 176 blocks
//     avoiding it; point ~ through-block not containing it, point ~
//     avoiding-block containing it, through ~ through meeting only at the
//     fixed point, through ~ avoiding meeting in 3, avoiding ~ avoiding
//     meeting in 1.
//   Higman-Sims graph, SRG(100,22,0,6), from the derived S(3,6,22):
//     vertices: one apex, 22 points, 77 hexads; apex ~ points,
//     point ~ hexad containing it, hexad ~ disjoint hexad.

#include "qsym/graph.hpp"
#include "qsym/graph6.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <vector>

using namespace qsym;

namespace {

// cyclic [23,12] quadratic-residue code with generator
// g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
std::vector<uint32_t> golay_weight7_codewords() {
    const uint32_t gen = (1u << 11) | (1u << 10) | (1u << 6) | (1u << 5) | (1u << 4) | (1u << 2) | 1u;
    std::vector<uint32_t> blocks;
    for (uint32_t info = 0; info < (1u << 12); ++info) {
        uint32_t word = 0;
        for (int i = 0; i < 12; ++i)
            if ((info >> i) & 1u) word ^= gen << i;
        if (std::popcount(word) == 7) blocks.push_back(word);
    }
    return blocks;
}

int inter(uint32_t a, uint32_t b) { return std::popcount(a & b); }

Graph build_mclaughlin() {
    auto blocks = golay_weight7_codewords();
    if (blocks.size() != 253) throw std::runtime_error("expected 253 heptads");
    const uint32_t fixed = 1u << 22;
    std::vector<uint32_t> through, avoiding;
    for (uint32_t b : blocks) (b & fixed ? through : avoiding).push_back(b);
    if (through.size() != 77 || avoiding.size() != 176) throw std::runtime_error("bad block split");

    Graph g(275, "mclaughlin");
    auto thr = [&](int i) { return 22 + i; };
    auto avd = [&](int i) { return 22 + 77 + i; };
    for (int x = 0; x < 22; ++x) {
        for (int i = 0; i < 77; ++i)
            if (!((through[i] >> x) & 1u)) g.add_edge(x, thr(i));
        for (int i = 0; i < 176; ++i)
            if ((avoiding[i] >> x) & 1u) g.add_edge(x, avd(i));
    }
    for (int i = 0; i < 77; ++i)
        for (int j = i + 1; j < 77; ++j)
            if (inter(through[i], through[j]) == 1) g.add_edge(thr(i), thr(j)); // only the fixed point
    for (int i = 0; i < 77; ++i)
        for (int j = 0; j < 176; ++j)
            if (inter(through[i], avoiding[j]) == 3) g.add_edge(thr(i), avd(j));
    for (int i = 0; i < 176; ++i)
        for (int j = i + 1; j < 176; ++j)
            if (inter(avoiding[i], avoiding[j]) == 1) g.add_edge(avd(i), avd(j));
    return g;
}

Graph build_higman_sims() {
    auto blocks = golay_weight7_codewords();
    const uint32_t fixed = 1u << 22;
    std::vector<uint32_t> hexads;
    for (uint32_t b : blocks)
        if (b & fixed) hexads.push_back(b & ~fixed);
    if (hexads.size() != 77) throw std::runtime_error("expected 77 hexads");

    Graph g(100, "higman_sims");
    // vertex 0: apex; 1..22: points; 23..99: hexads
    for (int x = 0; x < 22; ++x) g.add_edge(0, 1 + x);
    for (int x = 0; x < 22; ++x)
        for (int i = 0; i < 77; ++i)
            if ((hexads[i] >> x) & 1u) g.add_edge(1 + x, 23 + i);
    for (int i = 0; i < 77; ++i)
        for (int j = i + 1; j < 77; ++j)
            if ((hexads[i] & hexads[j]) == 0) g.add_edge(23 + i, 23 + j);
    return g;
}

void write_file(const std::string& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << emit_graph6(g) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    Graph mcl = build_mclaughlin();
    auto srg = verify_srg(mcl);
    std::printf("mclaughlin: SRG(%d,%d,%d,%d)\n", srg.v, srg.k, srg.lambda, srg.mu);
    if (!(srg == SrgParams{275, 112, 30, 56})) {
        std::fprintf(stderr, "unexpected McLaughlin parameters\n");
        return 1;
    }
    Graph hs = build_higman_sims();
    auto srg2 = verify_srg(hs);
    std::printf("higman_sims: SRG(%d,%d,%d,%d)\n", srg2.v, srg2.k, srg2.lambda, srg2.mu);
    if (!(srg2 == SrgParams{100, 22, 0, 6})) {
        std::fprintf(stderr, "unexpected Higman-Sims parameters\n");
        return 1;
    }
    write_file(dir + "/mclaughlin.g6", mcl);
    write_file(dir + "/higman_sims.g6", hs);
    std::printf("wrote %s/mclaughlin.g6 and %s/higman_sims.g6\n", dir.c_str(), dir.c_str());
    return 0;
}
