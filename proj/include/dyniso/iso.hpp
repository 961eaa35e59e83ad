#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"
#include "dyniso/reduction.hpp"

namespace dyniso {

enum class Verdict { Yes, No, DontKnow };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "Yes";
        case Verdict::No: return "No";
        case Verdict::DontKnow: return "DontKnow";
    }
    return "?";
}

struct IsoStep {
    int sigma = -1;  // g1-local vertex pinned at this stage (sigma_j)
    int tau = -1;    // g2-local partner (tau_j)
    Partition partition;  // partition of the Z graph this stage examined
};

struct IsoResult {
    Verdict verdict = Verdict::DontKnow;
    std::optional<std::vector<int>> gamma;  // g1 -> g2 vertex map, present iff Yes
    std::vector<IsoStep> trace;
    bool used_complements = false;
    std::string reason;
    int partition_calls = 0;
};

// Growing gadget chain Z_0..Z_p on V1 (0..n-1) and V2 (n..2n-1).  Stage j
// joins sigma_i to tau_{j-i} for all i <= j, so the pinned vertices keep
// strictly decreasing, unique degrees.
struct ZChain {
    int n = 0;
    std::vector<Graph> graphs;        // Z_0..Z_p
    std::vector<int> sigmas;          // g1-local, sigma_0..sigma_p
    std::vector<int> taus;            // g2-local, tau_0..tau_p
    std::vector<int> g1_degrees;      // selection key for the next sigma

    const Graph& current() const { return graphs.back(); }
    int stage() const { return static_cast<int>(sigmas.size()); }  // j: next step index
};

inline ZChain start_chain(const Graph& g1, const Graph& g2, int tau) {
    GadgetGraph gadget = build_gadget(g1, g2, tau);
    ZChain chain;
    chain.n = g1.size();
    chain.sigmas.push_back(gadget.sigma0);
    chain.taus.push_back(tau);
    chain.g1_degrees = degree_sequence(g1);
    chain.graphs.push_back(std::move(gadget.graph));
    return chain;
}

enum class ExtendOutcome { Extended, Stuck, Done };

namespace detail {

// Every class a cross pair {one V1 vertex, one V2 vertex}: the partition
// then spells out a bijection.
inline bool chain_done(const ZChain& chain, const Partition& p) {
    for (const auto& cls : p.classes()) {
        if (cls.size() != 2) return false;
        const int v1_members = (cls[0] < chain.n) + (cls[1] < chain.n);
        if (v1_members != 1) return false;
    }
    return true;
}

// Lowest-index unused vertex of largest g1 degree, or -1 when all are used.
inline int next_sigma(const ZChain& chain) {
    std::vector<char> used(chain.n, 0);
    for (int s : chain.sigmas) used[s] = 1;
    int best = -1;
    for (int v = 0; v < chain.n; ++v) {
        if (used[v]) continue;
        if (best == -1 || chain.g1_degrees[v] > chain.g1_degrees[best]) best = v;
    }
    return best;
}

// Unused V2 vertices sharing sigma's class, ascending (g2-local ids).
inline std::vector<int> tau_candidates(const ZChain& chain, const Partition& p, int sigma) {
    std::vector<char> used(chain.n, 0);
    for (int t : chain.taus) used[t] = 1;
    std::vector<int> out;
    for (int v : p.class_members(sigma))
        if (v >= chain.n && !used[v - chain.n]) out.push_back(v - chain.n);
    return out;
}

inline void append_stage(ZChain& chain, int sigma, int tau) {
    Graph z = chain.current();
    chain.sigmas.push_back(sigma);
    chain.taus.push_back(tau);
    const int j = static_cast<int>(chain.sigmas.size()) - 1;
    for (int i = 0; i <= j; ++i) z.add_edge(chain.sigmas[i], chain.n + chain.taus[j - i]);
    chain.graphs.push_back(std::move(z));
#ifndef NDEBUG
    for (int i = 1; i <= j; ++i)
        assert(chain.current().degree(chain.sigmas[i - 1]) > chain.current().degree(chain.sigmas[i]));
    assert(is_doubly_connected(chain.current()));
#endif
}

}  // namespace detail

// One chain step against the given partition of the current Z graph.
// Picks the lowest-index tau candidate; Stuck when none exists or the
// stage budget p <= n-2 is exhausted.
inline ExtendOutcome extend_chain(ZChain& chain, const Partition& p) {
    if (chain.stage() < 1 || p.element_count() != 2 * chain.n)
        throw ContractError("extend_chain needs a started chain and a partition of Z");
    if (detail::chain_done(chain, p)) return ExtendOutcome::Done;
    if (chain.stage() > chain.n - 2) return ExtendOutcome::Stuck;
    const int sigma = detail::next_sigma(chain);
    if (sigma < 0) return ExtendOutcome::Stuck;
    const auto cands = detail::tau_candidates(chain, p, sigma);
    if (cands.empty()) return ExtendOutcome::Stuck;
    detail::append_stage(chain, sigma, cands.front());
    return ExtendOutcome::Extended;
}

// gamma[v] = the class partner of v, for every v in V1.
inline std::vector<int> read_gamma(const ZChain& chain, const Partition& p) {
    if (!detail::chain_done(chain, p))
        throw ContractError("read_gamma needs a partition of cross pairs");
    std::vector<int> gamma(chain.n, -1);
    for (const auto& cls : p.classes()) {
        const int a = cls[0], b = cls[1];
        const int v1 = a < chain.n ? a : b;
        const int v2 = a < chain.n ? b : a;
        gamma[v1] = v2 - chain.n;
    }
    return gamma;
}

inline bool verify_iso(const Graph& g1, const Graph& g2, const std::vector<int>& gamma) {
    const int n = g1.size();
    if (g2.size() != n || static_cast<int>(gamma.size()) != n)
        throw ContractError("verify_iso needs equal orders and a total map");
    std::vector<char> hit(n, 0);
    for (int v : gamma) {
        if (v < 0 || v >= n || hit[v]) throw ContractError("gamma is not a bijection");
        hit[v] = 1;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g1.adjacent(u, v) != g2.adjacent(gamma[u], gamma[v])) return false;
    return true;
}

struct A2Options {
    // Upper bound on partitioner invocations per call; 0 = unlimited.  The
    // chain search reports DontKnow when the budget runs out.
    int max_partition_calls = 0;
    int max_workers = 1;  // used by the initial reduction's tau scan
};

namespace detail {

enum class ChainOutcome { Found, DoneButWrong, Stuck, Budget };

struct ChainContext {
    const Graph& g1;
    const Graph& g2;
    const Partitioner& partitioner;
    const A2Options& opts;
    IsoResult& result;
    std::vector<int> gamma;
};

// Depth-first search over tau choices.  A candidate that merges with
// sigma_j can still be wrong under an approximate partitioner, so on
// Stuck the remaining candidates of the same class are retried; a Done
// partition ends the search for this chain either way.
inline ChainOutcome run_chain(ChainContext& ctx, ZChain& chain) {
    if (ctx.opts.max_partition_calls > 0 &&
        ctx.result.partition_calls >= ctx.opts.max_partition_calls)
        return ChainOutcome::Budget;
    const Partition p = ctx.partitioner(chain.current());
    ++ctx.result.partition_calls;
    ctx.result.trace.push_back({chain.sigmas.back(), chain.taus.back(), p});
    if (p.element_count() != 2 * chain.n)
        throw ContractError("partitioner returned a partition of the wrong order");

    if (chain_done(chain, p)) {
        const std::vector<int> gamma = read_gamma(chain, p);
        if (verify_iso(ctx.g1, ctx.g2, gamma)) {
            ctx.gamma = gamma;
            return ChainOutcome::Found;
        }
        return ChainOutcome::DoneButWrong;
    }
    if (chain.stage() > chain.n - 2) return ChainOutcome::Stuck;
    const int sigma = next_sigma(chain);
    if (sigma < 0) return ChainOutcome::Stuck;
    for (int tau : tau_candidates(chain, p, sigma)) {
        ZChain child = chain;
        append_stage(child, sigma, tau);
        const ChainOutcome sub = run_chain(ctx, child);
        if (sub != ChainOutcome::Stuck) return sub;
    }
    return ChainOutcome::Stuck;
}

}  // namespace detail

// Yes / No / DontKnow isomorphism decision.  Yes always carries a gamma
// that passed verify_iso against the original inputs; No is produced only
// by the reduction's soundness argument.
inline IsoResult a2_decide(const Graph& g1_in, const Graph& g2_in, const Partitioner& partitioner,
                           const A2Options& opts = {}) {
    IsoResult result;
    GiDecision dec = gi_decide(g1_in, g2_in, partitioner, opts.max_workers);
    result.partition_calls = dec.partition_calls;
    result.used_complements = dec.used_complements;
    if (dec.outcome == GiOutcome::DegreeMismatch || dec.outcome == GiOutcome::NotIsomorphic) {
        result.verdict = Verdict::No;
        result.reason = dec.reason;
        return result;
    }

    const Graph g1 = dec.used_complements ? complement(g1_in) : g1_in;
    const Graph g2 = dec.used_complements ? complement(g2_in) : g2_in;

    detail::ChainContext ctx{g1, g2, partitioner, opts, result, {}};
    for (int tau : dec.surviving_taus) {
        ZChain chain = start_chain(g1, g2, tau);
        const auto outcome = detail::run_chain(ctx, chain);
        if (outcome == detail::ChainOutcome::Found) {
            // A bijection preserving the complement edges preserves the
            // original edges, but verify against the originals regardless.
            if (!verify_iso(g1_in, g2_in, ctx.gamma))
                throw InternalError("extracted gamma verified on complements but not originals");
            result.verdict = Verdict::Yes;
            result.gamma = std::move(ctx.gamma);
            return result;
        }
        if (outcome == detail::ChainOutcome::DoneButWrong) {
            result.verdict = Verdict::DontKnow;
            result.reason = "extracted mapping failed verification";
            return result;
        }
        if (outcome == detail::ChainOutcome::Budget) {
            result.verdict = Verdict::DontKnow;
            result.reason = "partitioner budget exhausted";
            return result;
        }
    }
    result.verdict = Verdict::DontKnow;
    result.reason = "every candidate chain got stuck";
    return result;
}

}  // namespace dyniso
