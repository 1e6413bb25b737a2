#pragma once

// Planarity predicate for the diagram validity check, on the augmented graph
// described in diagram.hpp. Boyer-Myrvold via boost.

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <utility>
#include <vector>

namespace qsym {

inline bool is_planar_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph g(n);
    for (auto [a, b] : edges)
        if (a != b) boost::add_edge(a, b, g);
    return boost::boyer_myrvold_planarity_test(g);
}

} // namespace qsym
