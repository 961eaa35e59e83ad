#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"
#include "dyniso/matrix.hpp"

namespace dyniso {

using Rat = mpq_class;
using Int = mpz_class;

// Exact power-series coefficients of the graph dynamics started from the
// identity configuration at rest.  A[s] is the matrix coefficient of t^{2s}
// in the trajectory X(t); R[s] the coefficient of t^{2s} in the pairwise
// inverse-square-distance functions (zero diagonal).  dist2[s] caches the
// t^{2s} coefficient of the pairwise squared distances, which the R
// recurrence consumes; it is fully determined by A.
struct SeriesCoefficients {
    int m = 0;
    std::vector<SquareMat<Rat>> A;
    std::vector<SquareMat<Rat>> R;
    std::vector<SquareMat<Rat>> dist2;

    int terms() const { return static_cast<int>(A.size()); }
};

struct TruncationPolicy {
    int s_max = -1;           // negative: use the default m*m
    bool early_stop = false;  // stop once one extra term leaves the induced partition unchanged

    int resolve_s_max(int m) const {
        if (s_max >= 0) return s_max;
        return m * m;
    }
};

inline SeriesCoefficients series_init(const Graph& g) {
    const int m = g.size();
    SeriesCoefficients c;
    c.m = m;
    c.A.push_back(SquareMat<Rat>::identity(m));
    SquareMat<Rat> r0(m, Rat(0));
    SquareMat<Rat> d0(m, Rat(0));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            if (i != k) {
                r0(i, k) = Rat(1, 2);
                d0(i, k) = 2;
            }
    c.R.push_back(std::move(r0));
    c.dist2.push_back(std::move(d0));
    return c;
}

// Appends term s+1: first A[s+1] from A[0..s] and R[0..s], then R[s+1]
// from A[0..s+1] and R[0..s].  All arithmetic is exact rational; gmp keeps
// every value in reduced form.
inline void series_extend_inplace(const Graph& g, SeriesCoefficients& c) {
    const int m = c.m;
    if (m != g.size()) throw ContractError("series coefficients belong to a different order");
    if (c.terms() < 1) throw ContractError("series coefficients not initialized");
    const int s = c.terms() - 1;

    SquareMat<Rat> next_a(m, Rat(0));
    const Rat denom(2 * (s + 1) * (2 * s + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Rat acc(0);
            for (int k = 0; k < m; ++k) {
                if (k == i) continue;
                for (int p = 0; p <= s; ++p)
                    acc += (c.A[p](i, j) - c.A[p](k, j)) * c.R[s - p](i, k);
                if (g.adjacent(i, k)) acc -= c.A[s](i, j) - c.A[s](k, j);
            }
            next_a(i, j) = acc / denom;
        }
    }
    c.A.push_back(std::move(next_a));

    // dist2[s+1] needs the fresh A term.
    SquareMat<Rat> next_d(m, Rat(0));
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            Rat acc(0);
            for (int l = 0; l < m; ++l)
                for (int d = 0; d <= s + 1; ++d)
                    acc += (c.A[d](i, l) - c.A[d](k, l)) *
                           (c.A[s + 1 - d](i, l) - c.A[s + 1 - d](k, l));
            next_d(i, k) = acc;
            next_d(k, i) = next_d(i, k);
        }
    }
    c.dist2.push_back(std::move(next_d));

    SquareMat<Rat> next_r(m, Rat(0));
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            Rat acc(0);
            for (int cc = 1; cc <= s + 1; ++cc) acc += c.R[s + 1 - cc](i, k) * c.dist2[cc](i, k);
            acc /= -2;
            next_r(i, k) = acc;
            next_r(k, i) = std::move(acc);
        }
    }
    c.R.push_back(std::move(next_r));
}

inline SeriesCoefficients series_extend(const Graph& g, SeriesCoefficients c) {
    series_extend_inplace(g, c);
    return c;
}

// Per-term sorted row entries; two rows of a matrix are permutation
// equivalent exactly when their sorted multisets agree, so equality of
// signatures decides the per-term row test of the partitioning algorithm.
using RowSignature = std::vector<std::vector<Rat>>;

inline RowSignature row_signature(const std::vector<SquareMat<Rat>>& mats, int vertex) {
    RowSignature sig;
    sig.reserve(mats.size());
    for (const auto& mat : mats) {
        if (vertex < 0 || vertex >= mat.size()) throw ContractError("row index out of range");
        std::vector<Rat> row(mat.row(vertex).begin(), mat.row(vertex).end());
        std::sort(row.begin(), row.end());
        sig.push_back(std::move(row));
    }
    return sig;
}

inline Partition partition_from_signatures(const std::vector<SquareMat<Rat>>& mats, int m) {
    std::vector<RowSignature> sigs;
    sigs.reserve(m);
    for (int v = 0; v < m; ++v) sigs.push_back(row_signature(mats, v));
    return Partition::group_by(sigs);
}

inline SeriesCoefficients series_up_to(const Graph& g, const TruncationPolicy& policy = {}) {
    const int m = g.size();
    const int s_max = policy.resolve_s_max(m);
    SeriesCoefficients c = series_init(g);
    Partition prev;
    for (int s = 1; s <= s_max; ++s) {
        series_extend_inplace(g, c);
        if (policy.early_stop) {
            // Stability is only tested from the second extension on: the
            // multisets of A[1] rows alone need not even determine vertex
            // degrees, so the first plateau would be spurious.
            Partition cur = partition_from_signatures(c.A, m);
            if (s >= 2 && cur == prev) break;
            prev = std::move(cur);
        }
    }
    return c;
}

inline Partition a1_partition(const Graph& g, const TruncationPolicy& policy = {}) {
    const SeriesCoefficients c = series_up_to(g, policy);
    return partition_from_signatures(c.A, g.size());
}

// alpha[s] = 2^s (2s)! A[s],  rho[s] = 2^{s+1} (2s)! R[s].  Both are
// integer matrices for every s; a non-integer entry can only mean the
// recurrence was implemented wrong, hence the hard error.
struct ScaledSeries {
    std::vector<SquareMat<Int>> alpha;
    std::vector<SquareMat<Int>> rho;
};

inline ScaledSeries scaled_integer_view(const SeriesCoefficients& c) {
    ScaledSeries out;
    const int m = c.m;
    mpz_class fac2s;
    for (int s = 0; s < c.terms(); ++s) {
        mpz_fac_ui(fac2s.get_mpz_t(), static_cast<unsigned long>(2 * s));
        Int pow2s = Int(1) << s;
        const Int scale_a = pow2s * fac2s;
        const Int scale_r = scale_a * 2;
        SquareMat<Int> alpha(m), rho(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Rat a = c.A[s](i, j) * scale_a;
                a.canonicalize();
                if (a.get_den() != 1)
                    throw InternalError("scaled coefficient alpha[" + std::to_string(s) +
                                        "] is not an integer");
                alpha(i, j) = a.get_num();
                Rat r = c.R[s](i, j) * scale_r;
                r.canonicalize();
                if (r.get_den() != 1)
                    throw InternalError("scaled coefficient rho[" + std::to_string(s) +
                                        "] is not an integer");
                rho(i, j) = r.get_num();
            }
        out.alpha.push_back(std::move(alpha));
        out.rho.push_back(std::move(rho));
    }
    return out;
}

// Finite sum of A[s] t^{2s} in floating point.  Only meaningful for |t|
// small enough that the truncated tail is negligible.
inline SquareMat<double> evaluate_truncated(const SeriesCoefficients& c, double t) {
    const int m = c.m;
    SquareMat<double> out(m, 0.0);
    const double t2 = t * t;
    double power = 1.0;
    for (int s = 0; s < c.terms(); ++s) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out(i, j) += c.A[s](i, j).get_d() * power;
        power *= t2;
    }
    return out;
}

}  // namespace dyniso
