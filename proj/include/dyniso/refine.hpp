#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"
#include "dyniso/matrix.hpp"

namespace dyniso {

// Cell colorings of the symbolic refinement.  C holds the pair colors,
// D the distance colors of the current step (empty until computed).  Ids
// are dense nonnegative integers assigned by first occurrence in row-major
// order, so equal colorings are equal matrices.
struct RefinementState {
    SquareMat<int> C;
    SquareMat<int> D;
    int step = 0;
};

namespace detail {

// First-occurrence canonical numbering of row-major cell keys.
template <typename Key>
SquareMat<int> canonical_cell_ids(const std::vector<Key>& cells, int m) {
    SquareMat<int> ids(m);
    std::map<Key, int> seen;
    int next = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto [it, inserted] = seen.try_emplace(cells[static_cast<std::size_t>(i) * m + j], next);
            if (inserted) ++next;
            ids(i, j) = it->second;
        }
    return ids;
}

}  // namespace detail

inline RefinementState init_colors(int m) {
    if (m < 1) throw ContractError("refinement needs at least one vertex");
    RefinementState st;
    st.C = SquareMat<int>(m, 1);
    for (int i = 0; i < m; ++i) st.C(i, i) = 0;
    st.step = 0;
    return st;
}

// Distance colors: cell (i,j) is keyed by the sorted vector of pairs
// (C[i][l], C[j][l]) over l, the symbolic stand-in for the squared
// distance between points i and j.
inline SquareMat<int> distance_labels(const RefinementState& st) {
    const int m = st.C.size();
    std::vector<std::vector<std::pair<int, int>>> keys(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto& key = keys[static_cast<std::size_t>(i) * m + j];
            key.reserve(m);
            for (int l = 0; l < m; ++l) key.emplace_back(st.C(i, l), st.C(j, l));
            std::sort(key.begin(), key.end());
        }
    return detail::canonical_cell_ids(keys, m);
}

// One refinement round: cell (i,j) is keyed by the sorted vector of
// 4-tuples (C[i][j], C[k][j], D[i][k], h[i][k]) over k.  The resulting
// cell partition refines the previous one because the cell's own color is
// part of every tuple.
inline RefinementState refine_step(const RefinementState& st, const Graph& g) {
    const int m = st.C.size();
    if (m != g.size()) throw ContractError("refinement state belongs to a different order");
    const SquareMat<int> d = st.D.empty() ? distance_labels(st) : st.D;

    std::vector<std::vector<std::array<int, 4>>> keys(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto& key = keys[static_cast<std::size_t>(i) * m + j];
            key.reserve(m);
            for (int k = 0; k < m; ++k)
                key.push_back({st.C(i, j), st.C(k, j), d(i, k), g.adjacent(i, k) ? 1 : 0});
            std::sort(key.begin(), key.end());
        }

    RefinementState next;
    next.C = detail::canonical_cell_ids(keys, m);
    next.step = st.step + 1;
    return next;
}

// Iterates refine_step to the fixpoint.  Returns the stable state and the
// number of rounds applied; more than m^2 rounds would contradict the
// step bound, so that raises an internal error.  When trace is given, one
// entry per round is recorded with both C and D populated.
inline std::pair<RefinementState, int> run_refinement(const Graph& g,
                                                      std::vector<RefinementState>* trace = nullptr) {
    const int m = g.size();
    RefinementState cur = init_colors(m);
    int applied = 0;
    for (;;) {
        cur.D = distance_labels(cur);
        if (trace) trace->push_back(cur);
        RefinementState next = refine_step(cur, g);
        ++applied;
        if (applied > m * m)
            throw InternalError("refinement exceeded " + std::to_string(m * m) + " rounds");
        if (next.C == cur.C) {
            cur.step = next.step;
            return {std::move(cur), applied};
        }
        cur = std::move(next);
    }
}

inline Partition partition_from_color_rows(const SquareMat<int>& c) {
    const int m = c.size();
    std::vector<std::vector<int>> keys(m);
    for (int v = 0; v < m; ++v) {
        keys[v].assign(c.row(v).begin(), c.row(v).end());
        std::sort(keys[v].begin(), keys[v].end());
    }
    return Partition::group_by(keys);
}

// Vertices classed together iff their C rows at the fixpoint are
// permutation equivalent (equal sorted multisets of color ids).
inline Partition a1prime_partition(const Graph& g) {
    auto [state, steps] = run_refinement(g);
    (void)steps;
    return partition_from_color_rows(state.C);
}

// Debug/regression rendering: one block per recorded round, C then D as
// integer grids.
inline std::string render_refinement_trace(const std::vector<RefinementState>& trace) {
    std::string out;
    for (const auto& st : trace) {
        out += "step " + std::to_string(st.step) + "\n";
        const int m = st.C.size();
        auto grid = [&](const SquareMat<int>& mat, const char* name) {
            out += std::string(name) + ":\n";
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) {
                    if (j) out += ' ';
                    out += std::to_string(mat(i, j));
                }
                out += '\n';
            }
        };
        grid(st.C, "C");
        if (!st.D.empty()) grid(st.D, "D");
    }
    return out;
}

}  // namespace dyniso
