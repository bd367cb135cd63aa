#pragma once

#include <span>

#include "ddefit/loss.hpp"
#include "ddefit/solver.hpp"
#include "ddefit/spline.hpp"

namespace ddefit {

// Adjoint solution on the reversed solve grid: lambdas[k] holds lambda at
// time t_end - k*dt for k = 0..n_step, where t_end = n_step*dt is the last
// forward node. The grid therefore ends exactly at t = 0, and the advanced
// value lambda(t + tau) is always the entry n_tau positions earlier.
struct AdjointTrajectory {
    double t_end = 0.0;
    double dt = 0.0;
    std::vector<Vec> lambdas;

    double time_at(int k) const { return t_end - k * dt; }
    int size() const { return static_cast<int>(lambdas.size()); }

    // lambda at t = 0: the node value when a node sits at 0, otherwise the
    // linear interpolation of the two nodes bracketing 0.
    Vec at_time_zero() const;
};

// Backward Heun solve of
//   lambda'(t) = grad_x l(x(t)) - [d_x F]^T lambda(t)
//                - 1_{t < t_end - tau} [d_y F(x(t+tau), x(t), tau, t+tau)]^T lambda(t+tau)
//   lambda(t_end) = -grad_x G(x(t_end))   (zero when no terminal term)
// from t_end down to 0. Current and delayed states are read from the
// predicted-trajectory spline for t >= 0 and from X0(t, phi) for t < 0; the
// indicator is evaluated by node index, so the advanced term switches off
// exactly at t = t_end - tau.
AdjointTrajectory solve_adjoint(const DynamicsModel& f, const Vec& theta, Delay tau,
                                const Vec& phi, const InitialConditionModel& x0,
                                const CubicSpline& pred, const CubicSpline& target,
                                const LossConfig& cfg, const SolveGrid& grid);

// Approximates the integral over [0, upper] of an integrand known at the
// descending nodes t_top - k*dt, k = 0..values.size()-1, as the exact
// integral of the integrand's piecewise-linear interpolant. Interior
// subintervals reduce to the plain trapezoid; a boundary subinterval that is
// cut by 0 or by `upper` uses the linear interpolation of its two node values
// at the cut. The nodes must cover [0, upper].
double quad_modified_trapezoid(std::span<const double> values, double t_top, double dt,
                               double upper);

struct GradientBundle {
    Vec theta;  // length p
    double tau = 0.0;
    Vec phi;    // length q
};

// Loss gradients assembled from the adjoint:
//   grad theta = -int_0^T [d_theta F]^T lambda dt
//   grad tau   =  int_0^{T-tau} <[d_y F(t+tau)]^T lambda(t+tau), x'(t)> dt
//               - int_0^T <d_tau F, lambda> dt
//   grad phi   = -[d_phi X0(0)]^T lambda(0)
//               - int_0^tau [d_phi X0(t-tau)]^T [d_y F]^T lambda dt
// x'(t) is recomputed as F on interpolated states rather than read from a
// spline derivative, which keeps it exact for the model dynamics given the
// states.
Vec grad_theta(const DynamicsModel& f, const Vec& theta, Delay tau,
               const InitialConditionModel& x0, const Vec& phi, const CubicSpline& pred,
               const AdjointTrajectory& adj, const SolveGrid& grid);

double grad_tau(const DynamicsModel& f, const Vec& theta, Delay tau, const Vec& phi,
                const InitialConditionModel& x0, const CubicSpline& pred,
                const AdjointTrajectory& adj, const SolveGrid& grid);

Vec grad_phi(const DynamicsModel& f, const InitialConditionModel& x0, const Vec& theta,
             Delay tau, const Vec& phi, const CubicSpline& pred,
             const AdjointTrajectory& adj, const SolveGrid& grid);

GradientBundle compute_gradients(const DynamicsModel& f, const InitialConditionModel& x0,
                                 const Vec& theta, Delay tau, const Vec& phi,
                                 const CubicSpline& pred, const CubicSpline& target,
                                 const LossConfig& cfg, const SolveGrid& grid);

} // namespace ddefit
