#pragma once

#include <memory>
#include <random>
#include <vector>

#include "tfg/io.hpp"
#include "tfg/multigraph.hpp"

namespace tfg::test {

// One vertex, two loops x, y: the binary full shift, F(G) = Thompson's V.
inline GraphPtr loop_graph(int loops) {
    auto g = std::make_shared<MultiGraph>("loops" + std::to_string(loops));
    g->add_vertex("a");
    for (int i = 0; i < loops; ++i) g->add_edge(std::string(1, static_cast<char>('x' + i % 3)) +
                                                    (i > 2 ? std::to_string(i) : ""),
                                                "a", "a");
    return g;
}

// The M_p graph: adjacency [[1,1],[1,p]].
inline GraphPtr mp_graph(int p) {
    auto g = std::make_shared<MultiGraph>("mp" + std::to_string(p));
    g->add_vertex("u");
    g->add_vertex("w");
    g->add_edge("s", "u", "u");
    g->add_edge("t", "u", "w");
    g->add_edge("r", "w", "u");
    for (int i = 1; i <= p; ++i) g->add_edge("l" + std::to_string(i), "w", "w");
    return g;
}

inline GraphPtr graph_from_adjacency(const std::vector<std::vector<int>>& rows,
                                     const std::string& prefix = "g") {
    const int n = static_cast<int>(rows.size());
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    return std::make_shared<MultiGraph>(graph_from_matrix(m, prefix));
}

// Seed-stable random admissible graph with finite cokernel (det != 0).
inline GraphPtr random_admissible_graph(std::mt19937_64& rng, int max_vertices, int max_entry,
                                        bool require_finite_coker) {
    for (;;) {
        int n = 1 + static_cast<int>(rng() % max_vertices);
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<int>(rng() % (max_entry + 1));
        auto g = std::make_shared<MultiGraph>(graph_from_matrix(m, "r"));
        if (!is_diconnected(*g) || !is_non_circular(*g)) continue;
        if (require_finite_coker && determinant(id_minus_transpose(m)) == 0) continue;
        return g;
    }
}

}  // namespace tfg::test
