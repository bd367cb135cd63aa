#pragma once

#include <functional>
#include <memory>

#include "ddefit/adjoint.hpp"
#include "ddefit/optimizer.hpp"

namespace ddefit {

enum class StopReason { epochs_exhausted, loss_below_min, blow_up };

const char* to_string(StopReason r);

// Per-epoch snapshot handed to FitConfig::on_epoch, mainly for tests and
// verbose CLI output.
struct EpochInfo {
    int epoch = 0;
    double loss = 0.0;
    double lr = 0.0;
    double dt = 0.0;
    int n_step = 0;
    Vec theta;
    double tau = 0.0;
    Vec phi;
    const GradientBundle* grads = nullptr; // null on the early-stop epoch
};

struct FitConfig {
    std::shared_ptr<const DynamicsModel> model;
    std::shared_ptr<const InitialConditionModel> ic;

    Vec theta0;
    double tau0 = 1.0;
    Vec phi0;

    double t_final = 10.0;
    int n_tau = 10;

    int n_epochs = 500;
    double lr0 = 0.03;
    double loss_min = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double tau_floor = 1e-3;

    LossConfig loss;

    // Replace the offset block b of phi0 with the first data value, as the
    // cheyne and hiv setups do.
    bool init_b_from_data = false;

    std::function<void(const EpochInfo&)> on_epoch;
};

struct FitResult {
    Vec theta;
    double tau = 0.0;
    Vec phi;
    std::vector<double> loss_history; // one entry per executed epoch
    StopReason stop_reason = StopReason::epochs_exhausted;
    Trajectory predicted;             // last finite forward solve

    int epochs_run() const { return static_cast<int>(loss_history.size()); }
    double final_loss() const { return loss_history.empty() ? 0.0 : loss_history.back(); }
};

// The full training loop: fit the target spline to the data once, then per
// epoch rebuild the grid from the current tau, solve forward, evaluate the
// grid loss, stop early below loss_min, otherwise solve the adjoint, assemble
// the three gradients, and take one Adam step on the flat vector
// [theta | tau | phi] with the cosine-annealed learning rate. A forward (or
// adjoint) blow-up aborts with the current parameters and stop reason blow_up
// rather than crashing.
FitResult fit(const FitConfig& cfg, const std::vector<double>& data_times,
              const std::vector<Vec>& data_values);

} // namespace ddefit
