#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dyniso/errors.hpp"

namespace dyniso {

// Simple undirected graph: symmetric 0/1 adjacency with zero diagonal.
// Vertices are 0-indexed; optional external labels survive only for I/O.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 1) throw ValidationError("graph needs at least one vertex");
    }

    static Graph with_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int size() const { return n_; }

    bool adjacent(int u, int v) const { return adj_[idx(u, v)] != 0; }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw ValidationError("loop edge at vertex " + std::to_string(u));
        adj_[idx(u, v)] = 1;
        adj_[idx(v, u)] = 1;
    }

    int degree(int v) const {
        check_vertex(v);
        int d = 0;
        for (int u = 0; u < n_; ++u) d += adj_[idx(v, u)];
        return d;
    }

    int edge_count() const {
        int m = 0;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v) m += adj_[idx(u, v)];
        return m;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (adjacent(u, v)) out.emplace_back(u, v);
        return out;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty() && static_cast<int>(labels.size()) != n_)
            throw ValidationError("label count does not match vertex count");
        labels_ = std::move(labels);
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw ValidationError("vertex " + std::to_string(v) + " out of range [0, " +
                                  std::to_string(n_) + ")");
    }

    int n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::string> labels_;
};

// Disjoint, jointly exhaustive vertex classes in canonical order: members
// ascending, classes sorted by smallest member.  Equality of partitions is
// then plain structural equality.
class Partition {
public:
    Partition() = default;

    static Partition from_classes(std::vector<std::vector<int>> classes) {
        for (auto& c : classes) std::sort(c.begin(), c.end());
        std::sort(classes.begin(), classes.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        Partition p;
        p.classes_ = std::move(classes);
        p.build_index();
        return p;
    }

    // Groups indices 0..n-1 by equal key.
    template <typename Key>
    static Partition group_by(const std::vector<Key>& keys) {
        std::map<Key, std::vector<int>> groups;
        for (int i = 0; i < static_cast<int>(keys.size()); ++i) groups[keys[i]].push_back(i);
        std::vector<std::vector<int>> classes;
        classes.reserve(groups.size());
        for (auto& [k, members] : groups) classes.push_back(std::move(members));
        return from_classes(std::move(classes));
    }

    static Partition singletons(int n) {
        std::vector<int> ident(n);
        std::iota(ident.begin(), ident.end(), 0);
        return group_by(ident);
    }

    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int element_count() const { return static_cast<int>(class_of_.size()); }

    int class_of(int v) const { return class_of_.at(v); }
    bool same_class(int u, int v) const { return class_of(u) == class_of(v); }
    const std::vector<int>& class_members(int v) const { return classes_[class_of(v)]; }

    // True when every class of *this is contained in one class of coarser.
    bool refines(const Partition& coarser) const {
        if (element_count() != coarser.element_count()) return false;
        for (const auto& c : classes_) {
            const int target = coarser.class_of(c.front());
            for (int v : c)
                if (coarser.class_of(v) != target) return false;
        }
        return true;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.classes_ == b.classes_;
    }

private:
    void build_index() {
        int n = 0;
        for (const auto& c : classes_) n += static_cast<int>(c.size());
        class_of_.assign(n, -1);
        for (int ci = 0; ci < static_cast<int>(classes_.size()); ++ci)
            for (int v : classes_[ci]) {
                if (v < 0 || v >= n || class_of_[v] != -1)
                    throw ContractError("partition classes are not disjoint classes of 0..n-1");
                class_of_[v] = ci;
            }
    }

    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

inline Graph complement(const Graph& g) {
    const int n = g.size();
    Graph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) out.add_edge(u, v);
    return out;
}

inline bool is_connected(const Graph& g) {
    const int n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (!seen[v] && g.adjacent(u, v)) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == n;
}

inline bool is_doubly_connected(const Graph& g) {
    return is_connected(g) && is_connected(complement(g));
}

inline std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> degs(g.size());
    for (int v = 0; v < g.size(); ++v) degs[v] = g.degree(v);
    return degs;
}

inline Partition degree_partition(const Graph& g) {
    return Partition::group_by(degree_sequence(g));
}

inline bool degree_partitions_equivalent(const Graph& g1, const Graph& g2) {
    std::map<int, int> class_sizes1, class_sizes2;
    for (int d : degree_sequence(g1)) ++class_sizes1[d];
    for (int d : degree_sequence(g2)) ++class_sizes2[d];
    return class_sizes1 == class_sizes2;
}

// Vertex i of g becomes vertex p[i] of the result.
inline Graph relabel(const Graph& g, const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != g.size())
        throw ContractError("permutation size does not match graph order");
    Graph out(g.size());
    for (auto [u, v] : g.edges()) out.add_edge(p[u], p[v]);
    return out;
}

}  // namespace dyniso
