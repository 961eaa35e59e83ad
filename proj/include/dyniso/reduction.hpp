#pragma once

#include <cassert>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"

namespace dyniso {

using Partitioner = std::function<Partition(const Graph&)>;

// Disjoint union of g1 (vertices 0..n-1) and g2 (vertices n..2n-1) plus the
// single bridge edge {sigma0, n + tau}.
struct GadgetGraph {
    Graph graph;
    int sigma0 = -1;  // gadget index, in the g1 part
    int tau = -1;     // gadget index, in the g2 part
    std::pair<int, int> bridge() const { return {sigma0, tau}; }
};

// Smallest-index vertex of maximal degree.
inline int select_sigma0(const Graph& g1) {
    if (g1.size() < 2) throw ContractError("select_sigma0 needs order > 1");
    int best = 0, best_deg = g1.degree(0);
    for (int v = 1; v < g1.size(); ++v) {
        const int d = g1.degree(v);
        if (d > best_deg) {
            best = v;
            best_deg = d;
        }
    }
    return best;
}

// Ascending list of g2 vertices of degree exactly d0; empty means the
// degree partitions already rule out isomorphism.
inline std::vector<int> candidate_taus(const Graph& g2, int d0) {
    std::vector<int> out;
    for (int v = 0; v < g2.size(); ++v)
        if (g2.degree(v) == d0) out.push_back(v);
    return out;
}

// tau is a g2-local vertex index of degree d0 = deg(sigma0, g1).
inline GadgetGraph build_gadget(const Graph& g1, const Graph& g2, int tau) {
    const int n = g1.size();
    if (n != g2.size() || n < 2) throw ContractError("build_gadget needs equal orders > 1");
    if (!is_connected(g1) || !is_connected(g2))
        throw ContractError("build_gadget needs connected inputs");
    const int sigma0 = select_sigma0(g1);
    if (tau < 0 || tau >= n || g2.degree(tau) != g1.degree(sigma0))
        throw ContractError("tau must have the maximal g1 degree in g2");

    GadgetGraph out;
    out.graph = Graph(2 * n);
    for (auto [u, v] : g1.edges()) out.graph.add_edge(u, v);
    for (auto [u, v] : g2.edges()) out.graph.add_edge(n + u, n + v);
    out.sigma0 = sigma0;
    out.tau = n + tau;
    out.graph.add_edge(out.sigma0, out.tau);
    assert(is_doubly_connected(out.graph));
    return out;
}

enum class GiOutcome { DegreeMismatch, NotIsomorphic, PossiblyIsomorphic };

struct GiDecision {
    GiOutcome outcome = GiOutcome::NotIsomorphic;
    // tau values (local to the possibly complemented g2) whose gadget
    // partition left sigma0 and tau in one class, ascending.
    std::vector<int> surviving_taus;
    bool used_complements = false;
    int sigma0 = -1;
    int partition_calls = 0;
    std::string reason;
};

// Reduction of isomorphism testing to automorphism partitioning of doubly
// connected gadget graphs.  Sound for "not isomorphic" whenever the
// partitioner never splits a true automorphism orbit; "possibly" otherwise.
// max_workers > 1 evaluates tau candidates concurrently; results are merged
// in tau order either way.
inline GiDecision gi_decide(const Graph& g1_in, const Graph& g2_in, const Partitioner& partitioner,
                            int max_workers = 1) {
    if (g1_in.size() != g2_in.size()) throw ContractError("gi_decide needs equal orders");
    if (g1_in.size() < 2) throw ContractError("gi_decide needs order > 1");

    GiDecision dec;
    if (!degree_partitions_equivalent(g1_in, g2_in)) {
        dec.outcome = GiOutcome::DegreeMismatch;
        dec.reason = "degree partition mismatch";
        return dec;
    }

    const bool c1 = is_connected(g1_in), c2 = is_connected(g2_in);
    if (c1 != c2) {
        // Connectivity is an isomorphism invariant; nothing to partition.
        dec.outcome = GiOutcome::NotIsomorphic;
        dec.reason = "connectivity mismatch";
        return dec;
    }
    const Graph g1 = c1 ? g1_in : complement(g1_in);
    const Graph g2 = c2 ? g2_in : complement(g2_in);
    dec.used_complements = !c1;

    dec.sigma0 = select_sigma0(g1);
    const int d0 = g1.degree(dec.sigma0);
    const std::vector<int> taus = candidate_taus(g2, d0);
    if (taus.empty()) {
        dec.outcome = GiOutcome::NotIsomorphic;
        dec.reason = "no vertex of matching maximal degree";
        return dec;
    }

    const int n = g1.size();
    auto co_classed = [&](int tau) {
        const GadgetGraph gadget = build_gadget(g1, g2, tau);
        const Partition p = partitioner(gadget.graph);
        if (p.element_count() != 2 * n)
            throw ContractError("partitioner returned a partition of the wrong order");
        return p.same_class(gadget.sigma0, gadget.tau);
    };

    std::vector<char> survived(taus.size(), 0);
    if (max_workers > 1 && taus.size() > 1) {
        std::size_t next = 0;
        while (next < taus.size()) {
            const std::size_t batch = std::min<std::size_t>(max_workers, taus.size() - next);
            std::vector<std::future<bool>> futs;
            futs.reserve(batch);
            for (std::size_t b = 0; b < batch; ++b)
                futs.push_back(std::async(std::launch::async, co_classed, taus[next + b]));
            for (std::size_t b = 0; b < batch; ++b) survived[next + b] = futs[b].get() ? 1 : 0;
            next += batch;
        }
    } else {
        for (std::size_t t = 0; t < taus.size(); ++t) survived[t] = co_classed(taus[t]) ? 1 : 0;
    }
    dec.partition_calls = static_cast<int>(taus.size());

    for (std::size_t t = 0; t < taus.size(); ++t)
        if (survived[t]) dec.surviving_taus.push_back(taus[t]);
    if (dec.surviving_taus.empty()) {
        dec.outcome = GiOutcome::NotIsomorphic;
        dec.reason = "sigma0 separated from every tau";
    } else {
        dec.outcome = GiOutcome::PossiblyIsomorphic;
    }
    return dec;
}

}  // namespace dyniso
