#pragma once

#include "ddefit/types.hpp"

namespace ddefit {

// Uniform solve grid tied to the delay: dt = tau / n_tau, so the delayed
// state always sits exactly n_tau nodes back. Because t_final is generally
// not a multiple of dt, the solve overshoots: n_step is the smallest n with
// n*dt >= t_final, and the last node t_end() = n_step*dt lies in
// [t_final, t_final + dt).
struct SolveGrid {
    int n_tau = 0;
    double dt = 0.0;
    int n_step = 0;
    double t_final = 0.0;

    static SolveGrid make(Delay tau, int n_tau, double t_final);

    double t_end() const { return n_step * dt; }
    double time_at(int k) const { return k * dt; }
};

// State the dynamics sees at t_k - tau during the forward solve: the history
// function for k < n_tau, the stored node k - n_tau otherwise.
Vec delayed_state(const std::vector<Vec>& states_so_far, const InitialConditionModel& x0,
                  const Vec& phi, int k, const SolveGrid& grid);

// Fixed-step Heun (explicit trapezoidal) solve of
//   x'(t) = F(x(t), x(t - tau), tau, t, theta),  x(t) = X0(t, phi) on [-tau, 0]
// on the grid above. Heun's two stages sample the delayed state only at grid
// times t_k and t_{k+1}, where the n_tau-step buffer is exact, so no
// intra-step interpolation is ever needed. Throws NonFiniteState as soon as
// any state component stops being finite.
Trajectory solve_forward(const DynamicsModel& f, const InitialConditionModel& x0,
                         const Vec& theta, Delay tau, const Vec& phi,
                         double t_final, int n_tau);

} // namespace ddefit
