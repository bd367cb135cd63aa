#include "ddefit/trainer.hpp"

namespace ddefit {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::epochs_exhausted: return "epochs_exhausted";
        case StopReason::loss_below_min: return "loss_below_min";
        case StopReason::blow_up: return "blow_up";
    }
    return "unknown";
}

namespace {

std::vector<double> grid_times(const SolveGrid& grid) {
    std::vector<double> ts(grid.n_step + 1);
    for (int k = 0; k <= grid.n_step; ++k) ts[k] = grid.time_at(k);
    return ts;
}

} // namespace

FitResult fit(const FitConfig& cfg, const std::vector<double>& data_times,
              const std::vector<Vec>& data_values) {
    if (!cfg.model || !cfg.ic) throw ConfigError("fit: model and ic must be set");
    if (data_times.size() < 2) throw DegenerateInput("fit: need at least two data points");
    const DynamicsModel& f = *cfg.model;
    const InitialConditionModel& x0 = *cfg.ic;
    const int p = f.param_count();
    const int q = x0.param_count();
    if (static_cast<int>(cfg.theta0.size()) != p) throw DimensionMismatch("fit: theta0 length");
    if (static_cast<int>(cfg.phi0.size()) != q) throw DimensionMismatch("fit: phi0 length");

    // The target spline is fit once from the raw noisy points and reused for
    // every epoch; it is never refit.
    const CubicSpline target = CubicSpline::fit_natural(data_times, data_values);

    // Flat trainable vector [theta | tau | phi].
    Vec params;
    params.reserve(p + 1 + q);
    params.insert(params.end(), cfg.theta0.begin(), cfg.theta0.end());
    params.push_back(cfg.tau0);
    params.insert(params.end(), cfg.phi0.begin(), cfg.phi0.end());
    if (cfg.init_b_from_data) {
        const int off = x0.offset_index();
        if (off < 0) throw ConfigError("fit: this initial-condition family has no offset block");
        for (int i = 0; i < x0.dim(); ++i) params[p + 1 + off + i] = data_values.front()[i];
    }

    auto theta_of = [&](const Vec& pv) { return Vec(pv.begin(), pv.begin() + p); };
    auto phi_of = [&](const Vec& pv) { return Vec(pv.begin() + p + 1, pv.end()); };

    FitResult result;
    result.stop_reason = StopReason::epochs_exhausted;
    AdamState adam = AdamState::init(params.size(), cfg.beta1, cfg.beta2);
    const LrSchedule schedule{cfg.lr0, cfg.n_epochs, 0.1};

    for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
        const Vec theta = theta_of(params);
        const Delay tau = clamp_tau(params[p], cfg.tau_floor);
        params[p] = tau.value();
        const Vec phi = phi_of(params);

        const SolveGrid grid = SolveGrid::make(tau, cfg.n_tau, cfg.t_final);
        Trajectory traj;
        try {
            traj = solve_forward(f, x0, theta, tau, phi, cfg.t_final, cfg.n_tau);
        } catch (const NonFiniteState&) {
            result.stop_reason = StopReason::blow_up;
            break;
        }

        const double loss = total_loss(traj, target, cfg.loss);
        result.loss_history.push_back(loss);
        result.predicted = std::move(traj);

        if (loss < cfg.loss_min) {
            if (cfg.on_epoch)
                cfg.on_epoch({epoch, loss, lr_at(schedule, epoch), grid.dt, grid.n_step,
                              theta, tau.value(), phi, nullptr});
            result.stop_reason = StopReason::loss_below_min;
            break;
        }

        const CubicSpline pred = CubicSpline::fit_natural(grid_times(grid), result.predicted.states);
        GradientBundle grads;
        try {
            grads = compute_gradients(f, x0, theta, tau, phi, pred, target, cfg.loss, grid);
        } catch (const NonFiniteState&) {
            result.stop_reason = StopReason::blow_up;
            break;
        }

        Vec flat_grad;
        flat_grad.reserve(params.size());
        flat_grad.insert(flat_grad.end(), grads.theta.begin(), grads.theta.end());
        flat_grad.push_back(grads.tau);
        flat_grad.insert(flat_grad.end(), grads.phi.begin(), grads.phi.end());

        const double lr = lr_at(schedule, epoch);
        if (cfg.on_epoch)
            cfg.on_epoch({epoch, loss, lr, grid.dt, grid.n_step, theta, tau.value(), phi, &grads});

        adam_step(adam, params, flat_grad, lr);
        params[p] = clamp_tau(params[p], cfg.tau_floor).value();
    }

    result.theta = theta_of(params);
    result.tau = params[p];
    result.phi = phi_of(params);
    return result;
}

} // namespace ddefit
