#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"

namespace dyniso {

struct OrbitPartition {
    Partition partition;
    long long group_size = 0;
};

namespace detail {

inline bool is_automorphism(const Graph& g, const std::vector<int>& p) {
    const int n = g.size();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.adjacent(u, v) != g.adjacent(p[u], p[v])) return false;
    return true;
}

struct OrbitUnion {
    std::vector<int> parent;
    explicit OrbitUnion(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    Partition to_partition() {
        std::vector<int> roots(parent.size());
        for (int v = 0; v < static_cast<int>(parent.size()); ++v) roots[v] = find(v);
        return Partition::group_by(roots);
    }
};

}  // namespace detail

inline constexpr int kBruteForceMaxVertices = 9;

// Ground truth by sheer enumeration of all n! permutations.  The value of
// this routine is that its correctness is obvious, not its speed.
inline OrbitPartition orbit_partition_bruteforce(const Graph& g) {
    const int n = g.size();
    if (n > kBruteForceMaxVertices)
        throw ContractError("orbit_partition_bruteforce refuses graphs with more than " +
                            std::to_string(kBruteForceMaxVertices) + " vertices");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    detail::OrbitUnion orbits(n);
    long long count = 0;
    do {
        if (detail::is_automorphism(g, p)) {
            ++count;
            for (int v = 0; v < n; ++v) orbits.unite(v, p[v]);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return {orbits.to_partition(), count};
}

// First adjacency-preserving bijection g1 -> g2 in lexicographic order.
inline std::optional<std::vector<int>> isomorphism_bruteforce(const Graph& g1, const Graph& g2) {
    if (g1.size() != g2.size()) throw ContractError("isomorphism_bruteforce needs equal orders");
    const int n = g1.size();
    if (n > kBruteForceMaxVertices)
        throw ContractError("isomorphism_bruteforce refuses graphs with more than " +
                            std::to_string(kBruteForceMaxVertices) + " vertices");
    auto degs1 = degree_sequence(g1), degs2 = degree_sequence(g2);
    {
        auto s1 = degs1, s2 = degs2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; ok && u < n; ++u)
            for (int v = u + 1; ok && v < n; ++v)
                if (g1.adjacent(u, v) != g2.adjacent(p[u], p[v])) ok = false;
        if (ok) return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}

inline constexpr int kOrbitSearchMaxVertices = 40;

// Exhaustive automorphism enumeration by backtracking over partial maps,
// pruning on degree and adjacency consistency.  Visits every automorphism,
// so the orbits are exact; usable well past the plain-enumeration cap.
// Cross-checked against orbit_partition_bruteforce in the test suite.
inline OrbitPartition automorphism_orbits_search(const Graph& g) {
    const int n = g.size();
    if (n > kOrbitSearchMaxVertices)
        throw ContractError("automorphism_orbits_search refuses graphs with more than " +
                            std::to_string(kOrbitSearchMaxVertices) + " vertices");
    const auto degs = degree_sequence(g);
    detail::OrbitUnion orbits(n);
    long long count = 0;
    std::vector<int> image(n, -1);
    std::vector<char> used(n, 0);

    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            ++count;
            for (int v = 0; v < n; ++v) orbits.unite(v, image[v]);
            return;
        }
        for (int cand = 0; cand < n; ++cand) {
            if (used[cand] || degs[cand] != degs[depth]) continue;
            bool ok = true;
            for (int prev = 0; prev < depth; ++prev)
                if (g.adjacent(prev, depth) != g.adjacent(image[prev], cand)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            image[depth] = cand;
            used[cand] = 1;
            self(self, depth + 1);
            used[cand] = 0;
            image[depth] = -1;
        }
    };
    rec(rec, 0);
    return {orbits.to_partition(), count};
}

}  // namespace dyniso
