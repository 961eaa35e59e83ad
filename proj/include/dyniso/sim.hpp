#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"
#include "dyniso/matrix.hpp"

namespace dyniso {

inline constexpr double kDefaultDistanceFloor = 1e-9;

// Positions X (row i = coordinates of point i), velocities Y, and the
// conserved initial energy for drift reporting.
struct SimState {
    SquareMat<double> X;
    SquareMat<double> Y;
    double t = 0.0;
    double e0 = 0.0;

    int order() const { return X.size(); }
};

struct EnergyReport {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
    double drift = 0.0;
};

enum class Integrator { VelocityVerlet, Yoshida4 };

// Row i: sum over k of (x_i - x_k)(1/||x_i - x_k||^2 - h_ik).  Each pair
// force is computed once and negated, so F_ik = -F_ki holds exactly in
// floating point.
inline SquareMat<double> total_force(const SquareMat<double>& X, const Graph& g,
                                     double distance_floor = kDefaultDistanceFloor) {
    const int m = X.size();
    if (m != g.size()) throw ContractError("positions belong to a different order");
    SquareMat<double> F(m, 0.0);
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            double d2 = 0.0;
            for (int l = 0; l < m; ++l) {
                const double diff = X(i, l) - X(k, l);
                d2 += diff * diff;
            }
            if (d2 <= distance_floor * distance_floor)
                throw SingularityError("points " + std::to_string(i) + " and " +
                                       std::to_string(k) + " closer than the distance floor");
            const double coef = 1.0 / d2 - (g.adjacent(i, k) ? 1.0 : 0.0);
            for (int l = 0; l < m; ++l) {
                const double f = (X(i, l) - X(k, l)) * coef;
                F(i, l) += f;
                F(k, l) -= f;
            }
        }
    }
    return F;
}

inline double kinetic_energy(const SquareMat<double>& Y) {
    double e = 0.0;
    const int m = Y.size();
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) e += Y(r, s) * Y(r, s);
    return e / 2.0;
}

inline double potential_energy(const SquareMat<double>& X, const Graph& g) {
    const int m = X.size();
    double e = 0.0;
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s) {
            double d2 = 0.0;
            for (int l = 0; l < m; ++l) {
                const double diff = X(r, l) - X(s, l);
                d2 += diff * diff;
            }
            e -= 0.5 * (std::log(d2) - (g.adjacent(r, s) ? d2 : 0.0));
        }
    return e;
}

inline EnergyReport energy(const SimState& state, const Graph& g) {
    EnergyReport rep;
    rep.kinetic = kinetic_energy(state.Y);
    rep.potential = potential_energy(state.X, g);
    rep.total = rep.kinetic + rep.potential;
    rep.drift = std::abs(rep.total - state.e0);
    return rep;
}

inline SimState initial_state(const Graph& g) {
    SimState st;
    st.X = SquareMat<double>::identity(g.size());
    st.Y = SquareMat<double>(g.size(), 0.0);
    st.t = 0.0;
    st.e0 = potential_energy(st.X, g);
    return st;
}

namespace detail {

inline void verlet_step(SimState& st, const Graph& g, double dt, SquareMat<double>& force,
                        double floor) {
    const int m = st.order();
    const double half = 0.5 * dt;
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) {
            st.Y(i, l) += half * force(i, l);
            st.X(i, l) += dt * st.Y(i, l);
        }
    force = total_force(st.X, g, floor);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) st.Y(i, l) += half * force(i, l);
}

}  // namespace detail

// Advances the state by t_add using fixed steps of size dt (last step
// shortened to land on t_add exactly).  Negative t_add with negative dt
// integrates backward.  Symplectic either way.
inline void integrate(SimState& st, const Graph& g, double t_add, double dt,
                      Integrator scheme = Integrator::Yoshida4,
                      double distance_floor = kDefaultDistanceFloor) {
    if (dt == 0.0) throw ContractError("dt must be nonzero");
    if (t_add == 0.0) return;
    if ((t_add > 0) != (dt > 0)) throw ContractError("dt and the time span disagree in sign");

    // Yoshida's 4th-order composition of three Verlet sub-steps.
    static const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 * w1;

    SquareMat<double> force = total_force(st.X, g, distance_floor);
    const double t_target = st.t + t_add;
    double remaining = t_add;
    while (std::abs(remaining) > 1e-15 * std::max(1.0, std::abs(t_target))) {
        const double step = (std::abs(remaining) >= std::abs(dt)) ? dt : remaining;
        if (scheme == Integrator::VelocityVerlet) {
            detail::verlet_step(st, g, step, force, distance_floor);
        } else {
            detail::verlet_step(st, g, step * w1, force, distance_floor);
            detail::verlet_step(st, g, step * w0, force, distance_floor);
            detail::verlet_step(st, g, step * w1, force, distance_floor);
        }
        remaining -= step;
        st.t = t_target - remaining;
    }
    st.t = t_target;
}

// Trajectory of the system started from X = I at rest.
inline SimState simulate(const Graph& g, double t_end, double dt,
                         Integrator scheme = Integrator::Yoshida4,
                         double distance_floor = kDefaultDistanceFloor) {
    SimState st = initial_state(g);
    integrate(st, g, t_end, dt, scheme, distance_floor);
    return st;
}

// The n(n-1)/2 pairwise distances, ascending.
inline std::vector<double> distance_signature(const SimState& state) {
    const int m = state.order();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s) {
            double d2 = 0.0;
            for (int l = 0; l < m; ++l) {
                const double diff = state.X(r, l) - state.X(s, l);
                d2 += diff * diff;
            }
            out.push_back(std::sqrt(d2));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Max-norm deviation between simulating the relabeled graph and relabeling
// the simulated coordinates; rounding noise aside this is zero.
inline double check_equivariance(const Graph& g, const std::vector<int>& perm, double t_end,
                                 double dt, Integrator scheme = Integrator::Yoshida4) {
    const SimState base = simulate(g, t_end, dt, scheme);
    const SimState relabeled = simulate(relabel(g, perm), t_end, dt, scheme);
    const SquareMat<double> expected = permute_conjugate(base.X, perm);
    double dev = 0.0;
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            dev = std::max(dev, std::abs(relabeled.X(i, j) - expected(i, j)));
    return dev;
}

}  // namespace dyniso
