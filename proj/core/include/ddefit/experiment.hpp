#pragma once

#include "ddefit/config.hpp"
#include "ddefit/data.hpp"

namespace ddefit {

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    StopReason stop_reason = StopReason::epochs_exhausted;
    int epochs = 0;
    double final_loss = 0.0;
    Vec theta;
    double tau = 0.0;
    Vec phi;
    bool failed = false;       // threw something other than a recorded blow-up
    std::string error;
};

struct ExperimentResult {
    double noise_level = 0.0;
    std::vector<TrialRecord> trials;
    std::vector<std::string> param_names; // theta names, "tau", phi names
    Vec true_values;
    Vec mean;  // per parameter, over non-failed trials
    Vec stddev; // unbiased; NaN marks an undefined entry (printed as NA)
};

// Fits `trials` independently drawn noisy datasets at one noise level.
// Trial i uses seed master_seed + i; the clean dataset is generated once.
// Individual trial failures are recorded per row and the harness continues.
ExperimentResult run_trials(const RunConfig& rc, const Dataset& clean, double noise_level,
                            int jobs);

// CSV with the 20 trial rows followed by a summary block
// (parameter,true_value,mean_learned,std). Deterministic for a fixed config
// and master seed, independent of the job count.
void write_experiment_csv(const ExperimentResult& result, const std::string& path);

// One file per configured noise level, named
// <out_dir>/results_<model>_noise<level>.csv. Returns the paths written.
std::vector<std::string> run_experiment(const RunConfig& rc, const std::string& out_dir,
                                        int jobs);

std::string format_double(double v); // shortest round-trip-ish, %.17g

} // namespace ddefit
