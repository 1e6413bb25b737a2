#include <doctest.h>

#include "qsym/diagram.hpp"

#include <set>

using namespace qsym;

namespace {

// independent oracle: non-crossing test for a partition given as labels
bool partition_non_crossing(const std::vector<int>& eq) {
    int k = int(eq.size());
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c)
                for (int d = c + 1; d < k; ++d)
                    if (eq[a] == eq[c] && eq[b] == eq[d] && eq[a] != eq[b]) return false;
    return true;
}

} // namespace

TEST_CASE("0 internal, 0 edges: exactly the non-crossing partitions") {
    // at k=4 the crossing pairing {{0,2},{1,3}} is the flip pattern and is
    // rejected by planarity; 14 remain
    DiagramEnumerator e4(4, 0, 0);
    auto cat = e4.all();
    CHECK(cat.size() == 14);
    std::set<std::vector<int>> got;
    for (auto& d : cat) {
        CHECK(d.total_edges() == 0);
        CHECK(partition_non_crossing(d.eq_class));
        got.insert(d.eq_class);
    }
    CHECK(got.size() == 14);
    CHECK(got.count({0, 1, 0, 1}) == 0);

    // at k=3 every partition is non-crossing: Bell(3) = 5
    DiagramEnumerator e3(3, 0, 0);
    CHECK(e3.all().size() == 5);
}

TEST_CASE("planarity: drawn pictures inside the disk") {
    Diagram flip;
    flip.k = 4;
    flip.eq_class = {0, 1, 0, 1};
    CHECK_FALSE(diagram_is_valid(flip));

    Diagram two_diagonals;
    two_diagonals.k = 4;
    two_diagonals.eq_class = {0, 1, 2, 3};
    two_diagonals.ext_ext = {{0, 2}, {1, 3}};
    CHECK_FALSE(diagram_is_valid(two_diagonals));

    Diagram one_diagonal = two_diagonals;
    one_diagonal.ext_ext = {{0, 2}};
    CHECK(diagram_is_valid(one_diagonal));

    // an equality region blocks the crossing chord
    Diagram blocked;
    blocked.k = 4;
    blocked.eq_class = {0, 1, 0, 2};
    blocked.ext_ext = {{1, 3}};
    CHECK_FALSE(diagram_is_valid(blocked));

    // non-crossing triple class with a singleton inside its arc is fine
    Diagram arc;
    arc.k = 4;
    arc.eq_class = {0, 1, 0, 0};
    CHECK(diagram_is_valid(arc));
}

TEST_CASE("reductions: parallel edges and low-valency internals rejected") {
    Diagram par;
    par.k = 4;
    par.eq_class = {0, 1, 2, 3};
    par.ext_ext = {{0, 1}, {0, 1}};
    CHECK_FALSE(diagram_is_valid(par));

    Diagram val2;
    val2.k = 4;
    val2.eq_class = {0, 1, 2, 3};
    val2.n_int = 1;
    val2.ext_int = {{0, 0}, {1, 0}};
    CHECK_FALSE(diagram_is_valid(val2));

    Diagram val3 = val2;
    val3.ext_int = {{0, 0}, {1, 0}, {2, 0}};
    CHECK(diagram_is_valid(val3));
}

TEST_CASE("every emitted diagram passes the full validity check") {
    DiagramEnumerator en(4, 1, 5);
    long count = 0;
    while (auto d = en.next()) {
        validate_diagram(*d); // throws on violation
        ++count;
    }
    CHECK(count > 100);
}

TEST_CASE("catalog is deduplicated up to internal relabeling, externals fixed") {
    DiagramEnumerator en(4, 2, 6);
    std::set<std::string> seen;
    while (auto d = en.next()) {
        // canonical form under internal relabeling: try all permutations
        std::vector<int> perm(d->n_int);
        std::iota(perm.begin(), perm.end(), 0);
        std::string least = encode_diagram(*d);
        do {
            Diagram r = *d;
            for (auto& [e, i] : r.ext_int) i = perm[i];
            for (auto& [a, b] : r.int_int) {
                a = perm[a];
                b = perm[b];
                if (a > b) std::swap(a, b);
            }
            std::sort(r.ext_int.begin(), r.ext_int.end());
            std::sort(r.int_int.begin(), r.int_int.end());
            least = std::min(least, encode_diagram(r));
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(least == encode_diagram(*d));
        CHECK(seen.insert(least).second);
    }
}

TEST_CASE("text encoding round trips exactly") {
    DiagramEnumerator en(4, 1, 4);
    while (auto d = en.next()) {
        std::string enc = encode_diagram(*d);
        CHECK(decode_diagram(enc) == *d);
        CHECK(encode_diagram(decode_diagram(enc)) == enc);
    }
    CHECK_THROWS_AS(decode_diagram("k:4;eq:0101;ee:;ei:;ii:;ni:0"), InvalidDiagram);
    CHECK_THROWS_AS(decode_diagram("nonsense"), InvalidDiagram);
}

TEST_CASE("full-support edge subsets on 4 externals, independent recount") {
    // internal-free diagrams on the discrete partition: edge subsets of the
    // 4-gon + diagonals that stay planar with the boundary ring
    DiagramEnumerator en(4, 0, 6);
    long discrete = 0;
    while (auto d = en.next())
        if (d->eq_class == std::vector<int>{0, 1, 2, 3}) ++discrete;

    long expect = 0;
    std::vector<std::pair<int, int>> slots = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int m = 0; m < 64; ++m) {
        Diagram d;
        d.k = 4;
        d.eq_class = {0, 1, 2, 3};
        for (int i = 0; i < 6; ++i)
            if ((m >> i) & 1) d.ext_ext.push_back(slots[i]);
        if (diagram_is_valid(d)) ++expect;
    }
    CHECK(discrete == expect);
    // both diagonals can never be present together: 2^6 minus those 16 = 48
    CHECK(expect == 48);
}
