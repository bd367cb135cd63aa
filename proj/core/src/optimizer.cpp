#include "ddefit/optimizer.hpp"

#include <cmath>
#include <numbers>

namespace ddefit {

AdamState AdamState::init(std::size_t n, double beta1, double beta2) {
    AdamState s;
    s.m = zeros(n);
    s.v = zeros(n);
    s.beta1 = beta1;
    s.beta2 = beta2;
    return s;
}

void adam_step(AdamState& state, Vec& params, const Vec& grads, double lr) {
    check_same_size(params, grads, "adam_step");
    check_same_size(params, state.m, "adam_step state");
    if (!(lr > 0.0)) throw DegenerateInput("adam_step: lr must be positive");
    state.step_count += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, state.step_count);
    const double bc2 = 1.0 - std::pow(state.beta2, state.step_count);
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

double lr_at(const LrSchedule& schedule, int epoch) {
    if (epoch < 0 || epoch > schedule.n_epochs)
        throw IndexOutOfRange("lr_at: epoch outside [0, n_epochs]");
    const double lr_min = schedule.floor_fraction * schedule.lr0;
    if (epoch == 0) return schedule.lr0;
    if (epoch == schedule.n_epochs) return lr_min;
    const double phase = std::numbers::pi * epoch / schedule.n_epochs;
    return lr_min + 0.5 * (schedule.lr0 - lr_min) * (1.0 + std::cos(phase));
}

Delay clamp_tau(double tau_new, double tau_floor) {
    if (!(tau_floor > 0.0)) throw DegenerateInput("clamp_tau: floor must be positive");
    return Delay(std::max(tau_new, tau_floor));
}

} // namespace ddefit
