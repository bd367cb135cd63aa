#pragma once

#include "ddefit/types.hpp"

namespace ddefit {

// Adam moment estimates for one flat parameter vector. theta, tau, and phi
// are updated jointly as a single group with one shared state.
struct AdamState {
    Vec m;
    Vec v;
    long step_count = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(std::size_t n, double beta1 = 0.9, double beta2 = 0.999);
};

// One bias-corrected Adam update, in place:
//   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
//   p <- p - lr * m_hat / (sqrt(v_hat) + eps)
void adam_step(AdamState& state, Vec& params, const Vec& grads, double lr);

// Cosine annealing from lr0 down to floor_fraction*lr0 across n_epochs.
struct LrSchedule {
    double lr0 = 0.03;
    int n_epochs = 500;
    double floor_fraction = 0.1;
};

// lr_min + 0.5*(lr0 - lr_min)*(1 + cos(pi*epoch/n_epochs)); hits lr0 at
// epoch 0 and lr_min at epoch n_epochs exactly.
double lr_at(const LrSchedule& schedule, int epoch);

// max(tau_new, tau_floor): keeps dt = tau/n_tau well-defined after an
// optimizer step drives tau toward (or past) zero.
Delay clamp_tau(double tau_new, double tau_floor = 1e-3);

} // namespace ddefit
