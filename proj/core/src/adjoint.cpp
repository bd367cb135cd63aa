#include "ddefit/adjoint.hpp"

#include <cmath>

namespace ddefit {

namespace {

// State lookup shared by the adjoint solve and the gradient integrands:
// predicted spline on [0, t_end], history function below 0.
Vec state_at(const CubicSpline& pred, const InitialConditionModel& x0, const Vec& phi,
             double t) {
    return t >= 0.0 ? pred.eval(t) : x0.eval(t, phi);
}

} // namespace

Vec AdjointTrajectory::at_time_zero() const {
    if (lambdas.empty()) throw DegenerateInput("empty adjoint trajectory");
    // Walk from the bottom node (smallest time) up to the pair bracketing 0.
    const int n = size();
    for (int k = n - 1; k >= 1; --k) {
        const double lo = time_at(k);
        const double hi = time_at(k - 1);
        if (lo <= 0.0 && 0.0 <= hi) {
            const double w = (0.0 - lo) / dt;
            Vec out = lambdas[k];
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += w * (lambdas[k - 1][i] - out[i]);
            return out;
        }
    }
    if (std::abs(time_at(n - 1)) <= 1e-9) return lambdas[n - 1];
    throw IndexOutOfRange("adjoint grid does not reach t = 0");
}

AdjointTrajectory solve_adjoint(const DynamicsModel& f, const Vec& theta, Delay tau,
                                const Vec& phi, const InitialConditionModel& x0,
                                const CubicSpline& pred, const CubicSpline& target,
                                const LossConfig& cfg, const SolveGrid& grid) {
    const int d = f.dim();
    const double dt = grid.dt;
    const int n_step = grid.n_step;
    const int n_tau = grid.n_tau;

    AdjointTrajectory adj;
    adj.t_end = grid.t_end();
    adj.dt = dt;
    adj.lambdas.reserve(n_step + 1);

    // lambda(t_end) = -grad G(x(t_end)); the zero vector when G == 0.
    if (cfg.terminal) {
        const Vec x_end = pred.eval(adj.t_end);
        adj.lambdas.push_back(scale(-1.0, pointwise_loss_grad(x_end, target.eval(adj.t_end), *cfg.terminal)));
    } else {
        adj.lambdas.push_back(zeros(d));
    }

    // lambda'(t) at backward node index j (time (n_step - j)*dt). The advanced
    // term is gated by node index: t_j < t_end - tau holds exactly when
    // j > n_tau, and lambda(t_j + tau) is the already-computed entry j - n_tau.
    auto rhs = [&](int j, const Vec& lam) {
        const int fwd = n_step - j;        // forward node index of this time
        const double t = fwd * dt;
        const Vec x_t = pred.eval(t);
        const Vec y_t = state_at(pred, x0, phi, (fwd - n_tau) * dt);

        Vec out = pointwise_loss_grad(x_t, target.eval(t), cfg.running);
        const Mat jx = f.jac_x(x_t, y_t, tau.value(), t, theta);
        axpy(-1.0, jx.tmul(lam), out);
        if (j > n_tau) {
            const double t_adv = (fwd + n_tau) * dt;
            const Vec x_adv = pred.eval(t_adv);
            const Mat jy = f.jac_y(x_adv, x_t, tau.value(), t_adv, theta);
            axpy(-1.0, jy.tmul(adj.lambdas[j - n_tau]), out);
        }
        return out;
    };

    for (int j = 0; j < n_step; ++j) {
        const Vec& lam = adj.lambdas[j];
        const Vec k1 = rhs(j, lam);

        Vec lam_pred = lam;
        axpy(-dt, k1, lam_pred);
        const Vec k2 = rhs(j + 1, lam_pred);

        Vec next = lam;
        axpy(-0.5 * dt, k1, next);
        axpy(-0.5 * dt, k2, next);
        if (!is_finite(next))
            throw NonFiniteState("adjoint solve blew up at t = " + std::to_string(adj.time_at(j + 1)));
        adj.lambdas.push_back(std::move(next));
    }
    return adj;
}

double quad_modified_trapezoid(std::span<const double> values, double t_top, double dt,
                               double upper) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw DegenerateInput("quadrature needs at least two nodes");
    if (!(dt > 0.0)) throw DegenerateInput("quadrature step must be positive");
    const double bottom = t_top - (n - 1) * dt;
    const double tol = 1e-9 * std::max(1.0, std::abs(upper));
    if (bottom > tol || upper > t_top + tol)
        throw DegenerateInput("quadrature nodes do not cover [0, upper]");

    double total = 0.0;
    for (int k = 0; k < n - 1; ++k) {
        const double b = t_top - k * dt;  // right end of the segment, value values[k]
        const double a = b - dt;          // left end, value values[k + 1]
        const double lo = std::max(a, 0.0);
        const double hi = std::min(b, upper);
        if (hi <= lo) continue;
        const double va = values[k + 1] + (values[k] - values[k + 1]) * ((lo - a) / dt);
        const double vb = values[k + 1] + (values[k] - values[k + 1]) * ((hi - a) / dt);
        total += 0.5 * (va + vb) * (hi - lo);
    }
    return total;
}

Vec grad_theta(const DynamicsModel& f, const Vec& theta, Delay tau,
               const InitialConditionModel& x0, const Vec& phi, const CubicSpline& pred,
               const AdjointTrajectory& adj, const SolveGrid& grid) {
    const int p = f.param_count();
    if (p == 0) return Vec{};
    const int n_step = grid.n_step;

    std::vector<Vec> integrand(n_step + 1);
    for (int k = 0; k <= n_step; ++k) {
        const int fwd = n_step - k;
        const double t = fwd * grid.dt;
        const Vec x_t = pred.eval(t);
        const Vec y_t = state_at(pred, x0, phi, (fwd - grid.n_tau) * grid.dt);
        const Mat jt = f.jac_theta(x_t, y_t, tau.value(), t, theta);
        integrand[k] = jt.tmul(adj.lambdas[k]);
    }

    Vec g(p, 0.0);
    std::vector<double> comp(n_step + 1);
    for (int c = 0; c < p; ++c) {
        for (int k = 0; k <= n_step; ++k) comp[k] = integrand[k][c];
        g[c] = -quad_modified_trapezoid(comp, adj.t_end, grid.dt, grid.t_final);
    }
    return g;
}

double grad_tau(const DynamicsModel& f, const Vec& theta, Delay tau, const Vec& phi,
                const InitialConditionModel& x0, const CubicSpline& pred,
                const AdjointTrajectory& adj, const SolveGrid& grid) {
    const int n_step = grid.n_step;
    const int n_tau = grid.n_tau;
    const double dt = grid.dt;

    // First integral, over [0, t_final - tau]: the integrand at time t needs
    // lambda(t + tau), so it is defined at the adjoint nodes k >= n_tau
    // (times t_end - tau down to 0).
    double first = 0.0;
    if (n_step >= n_tau) {
        const int m = n_step - n_tau; // top sub-grid node time: m*dt = t_end - tau
        std::vector<double> vals(m + 1);
        for (int k = 0; k <= m; ++k) {
            const int fwd = m - k;      // forward node index of time t
            const double t = fwd * dt;
            const Vec x_t = pred.eval(t);
            const Vec y_t = state_at(pred, x0, phi, (fwd - n_tau) * dt);
            const Vec xdot = f.eval(x_t, y_t, tau.value(), t, theta);

            const double t_adv = (fwd + n_tau) * dt;
            const Vec x_adv = pred.eval(t_adv);
            const Mat jy = f.jac_y(x_adv, x_t, tau.value(), t_adv, theta);
            // lambda(t + tau) sits at backward index k: its time is
            // t_end - k*dt = (m - k)*dt + tau.
            // <[d_y F]^T lambda(t+tau), x'(t)> = <lambda(t+tau), d_y F * x'(t)>
            vals[k] = dot(adj.lambdas[k], jy.mul(xdot));
        }
        const double upper = grid.t_final - tau.value();
        if (upper > 0.0) first = quad_modified_trapezoid(vals, m * dt, dt, upper);
    }

    // Second integral, over [0, t_final]: <d_tau F, lambda> at every node.
    std::vector<double> vals2(n_step + 1);
    for (int k = 0; k <= n_step; ++k) {
        const int fwd = n_step - k;
        const double t = fwd * dt;
        const Vec x_t = pred.eval(t);
        const Vec y_t = state_at(pred, x0, phi, (fwd - n_tau) * dt);
        vals2[k] = dot(f.jac_tau(x_t, y_t, tau.value(), t, theta), adj.lambdas[k]);
    }
    const double second = quad_modified_trapezoid(vals2, adj.t_end, dt, grid.t_final);

    return first - second;
}

Vec grad_phi(const DynamicsModel& f, const InitialConditionModel& x0, const Vec& theta,
             Delay tau, const Vec& phi, const CubicSpline& pred,
             const AdjointTrajectory& adj, const SolveGrid& grid) {
    const int q = x0.param_count();
    const int n_step = grid.n_step;
    const int n_tau = grid.n_tau;
    const double dt = grid.dt;

    const Vec lam0 = adj.at_time_zero();
    Vec g = scale(-1.0, x0.jac_phi(0.0, phi).tmul(lam0));

    // Integral over [0, tau]: adjoint nodes k = n_step - n_tau .. n_step, i.e.
    // times tau down to 0, where t - tau lands in the history domain. When the
    // solve window is shorter than one delay the integral is cut at t_end,
    // past which the adjoint does not exist.
    const int lo = std::max(0, n_step - n_tau);
    const int n_nodes = n_step - lo;
    std::vector<Vec> integrand(n_nodes + 1);
    for (int k = lo; k <= n_step; ++k) {
        const int fwd = n_step - k;
        const double t = fwd * dt;
        const double t_delayed = (fwd - n_tau) * dt; // <= 0
        const Vec x_t = pred.eval(t);
        const Vec y_t = x0.eval(t_delayed, phi);
        const Mat jy = f.jac_y(x_t, y_t, tau.value(), t, theta);
        const Mat jphi = x0.jac_phi(t_delayed, phi);
        integrand[k - lo] = jphi.tmul(jy.tmul(adj.lambdas[k]));
    }

    const double t_top = (n_step - lo) * dt;
    const double upper = std::min(tau.value(), t_top);
    std::vector<double> comp(n_nodes + 1);
    for (int c = 0; c < q; ++c) {
        for (int k = 0; k <= n_nodes; ++k) comp[k] = integrand[k][c];
        g[c] -= quad_modified_trapezoid(comp, t_top, dt, upper);
    }
    return g;
}

GradientBundle compute_gradients(const DynamicsModel& f, const InitialConditionModel& x0,
                                 const Vec& theta, Delay tau, const Vec& phi,
                                 const CubicSpline& pred, const CubicSpline& target,
                                 const LossConfig& cfg, const SolveGrid& grid) {
    const AdjointTrajectory adj = solve_adjoint(f, theta, tau, phi, x0, pred, target, cfg, grid);
    GradientBundle out;
    out.theta = grad_theta(f, theta, tau, x0, phi, pred, adj, grid);
    out.tau = grad_tau(f, theta, tau, phi, x0, pred, adj, grid);
    out.phi = grad_phi(f, x0, theta, tau, phi, pred, adj, grid);
    if (!is_finite(out.theta) || !std::isfinite(out.tau) || !is_finite(out.phi))
        throw NonFiniteState("non-finite gradient");
    return out;
}

} // namespace ddefit
