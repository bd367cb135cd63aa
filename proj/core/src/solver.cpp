#include "ddefit/solver.hpp"

#include <cmath>

namespace ddefit {

SolveGrid SolveGrid::make(Delay tau, int n_tau, double t_final) {
    if (n_tau < 1) throw DegenerateInput("n_tau must be >= 1");
    if (!(t_final > 0.0)) throw DegenerateInput("t_final must be positive");
    SolveGrid g;
    g.n_tau = n_tau;
    g.dt = tau.value() / n_tau;
    g.t_final = t_final;
    // Smallest n with n*dt >= t_final, read with a relative tolerance so that
    // an exact multiple stays an exact multiple despite rounding in dt.
    const double q = t_final / g.dt;
    g.n_step = std::max(1, static_cast<int>(std::ceil(q - 1e-9 * std::max(1.0, q))));
    return g;
}

Vec delayed_state(const std::vector<Vec>& states_so_far, const InitialConditionModel& x0,
                  const Vec& phi, int k, const SolveGrid& grid) {
    const int m = k - grid.n_tau;
    if (m < 0) return x0.eval(m * grid.dt, phi);
    if (m >= static_cast<int>(states_so_far.size()))
        throw IndexOutOfRange("delayed_state: trajectory shorter than required");
    return states_so_far[m];
}

Trajectory solve_forward(const DynamicsModel& f, const InitialConditionModel& x0,
                         const Vec& theta, Delay tau, const Vec& phi,
                         double t_final, int n_tau) {
    if (f.dim() != x0.dim()) throw DimensionMismatch("model/initial-condition dimension");
    const SolveGrid grid = SolveGrid::make(tau, n_tau, t_final);
    const double dt = grid.dt;

    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = dt;
    traj.states.reserve(grid.n_step + 1);
    traj.states.push_back(x0.eval(0.0, phi));
    if (!is_finite(traj.states.front()))
        throw NonFiniteState("initial condition is not finite");

    for (int k = 0; k < grid.n_step; ++k) {
        const Vec& xk = traj.states[k];
        const double tk = grid.time_at(k);
        const Vec y0 = delayed_state(traj.states, x0, phi, k, grid);
        const Vec k1 = f.eval(xk, y0, tau.value(), tk, theta);

        Vec x_pred = xk;
        axpy(dt, k1, x_pred);
        const Vec y1 = delayed_state(traj.states, x0, phi, k + 1, grid);
        const Vec k2 = f.eval(x_pred, y1, tau.value(), grid.time_at(k + 1), theta);

        Vec next = xk;
        axpy(0.5 * dt, k1, next);
        axpy(0.5 * dt, k2, next);
        if (!is_finite(next))
            throw NonFiniteState("forward solve blew up at t = " + std::to_string(grid.time_at(k + 1)));
        traj.states.push_back(std::move(next));
    }
    return traj;
}

} // namespace ddefit
