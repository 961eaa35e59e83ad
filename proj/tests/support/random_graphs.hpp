#pragma once

// Deterministic random fixtures.  Every test seeds its own engine so runs
// are reproducible.

#include <numeric>
#include <random>
#include <vector>

#include "dyniso/graph.hpp"

namespace dyniso::testing {

inline Graph random_graph(std::mt19937& rng, int n, double edge_prob = 0.5) {
    Graph g(n);
    std::bernoulli_distribution coin(edge_prob);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline Graph random_connected_graph(std::mt19937& rng, int n, double edge_prob = 0.5) {
    for (;;) {
        Graph g = random_graph(rng, n, edge_prob);
        if (is_connected(g)) return g;
    }
}

inline std::vector<int> random_permutation(std::mt19937& rng, int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace dyniso::testing
