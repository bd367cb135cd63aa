#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ddefit/models.hpp"
#include "ddefit/trainer.hpp"

namespace ddefit {

// Everything one run needs, read from a flat INI-style file with
// [section] headers and key = value lines. Unset keys fall back to the
// bundled benchmark defaults of the chosen model, so a preset config can be
// as short as the model name plus overrides.
struct RunConfig {
    std::string model_name;
    std::string ic_family;

    Vec theta_true;
    double tau_true = 1.0;
    Vec phi_true;

    Vec theta_init;
    double tau_init = 1.0;
    Vec phi_init;
    bool init_b_from_data = false;

    double t_final = 10.0;
    double gen_dt = 0.1;
    int n_tau = 10;

    int n_epochs = 500;
    double lr0 = 0.03;
    double loss_min = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double tau_floor = 1e-3;

    NormKind::Kind running_norm = NormKind::L2;
    std::optional<NormKind::Kind> terminal_norm;

    std::vector<double> noise_levels = {0.1, 0.3, 0.9};
    int trials = 20;
    std::uint64_t seed = 0;

    std::string out_dir = "out";
};

RunConfig load_config(const std::string& path);

// The defaults a config file starts from, given just a model name.
RunConfig config_from_benchmark(const std::string& model_name);

// Assembles the pieces a fit needs from a run config.
FitConfig make_fit_config(const RunConfig& rc);

} // namespace ddefit
