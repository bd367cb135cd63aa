#include "ddefit/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

namespace ddefit {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string format_level(double level) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", level);
    return buf;
}

TrialRecord run_one_trial(const RunConfig& rc, const Dataset& clean, double level, int trial) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = rc.seed + static_cast<std::uint64_t>(trial);
    try {
        const Dataset noisy = add_noise(clean, {level, rec.seed});
        const FitConfig fc = make_fit_config(rc);
        const FitResult fr = fit(fc, noisy.times, noisy.values);
        rec.stop_reason = fr.stop_reason;
        rec.epochs = fr.epochs_run();
        rec.final_loss = fr.final_loss();
        rec.theta = fr.theta;
        rec.tau = fr.tau;
        rec.phi = fr.phi;
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

} // namespace

ExperimentResult run_trials(const RunConfig& rc, const Dataset& clean, double noise_level,
                            int jobs) {
    ExperimentResult result;
    result.noise_level = noise_level;
    result.trials.resize(rc.trials);

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (int i = 0; i < rc.trials; ++i)
            result.trials[i] = run_one_trial(rc, clean, noise_level, i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (int i = next.fetch_add(1); i < rc.trials; i = next.fetch_add(1))
                result.trials[i] = run_one_trial(rc, clean, noise_level, i);
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min(jobs, rc.trials);
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const FitConfig fc = make_fit_config(rc);
    result.param_names = fc.model->param_names();
    result.param_names.push_back("tau");
    const auto phi_names = fc.ic->param_names();
    result.param_names.insert(result.param_names.end(), phi_names.begin(), phi_names.end());

    result.true_values = rc.theta_true;
    result.true_values.push_back(rc.tau_true);
    result.true_values.insert(result.true_values.end(), rc.phi_true.begin(), rc.phi_true.end());

    const std::size_t n_params = result.param_names.size();
    result.mean.assign(n_params, std::numeric_limits<double>::quiet_NaN());
    result.stddev.assign(n_params, std::numeric_limits<double>::quiet_NaN());

    std::vector<const TrialRecord*> ok;
    for (const TrialRecord& rec : result.trials) {
        if (!rec.failed) ok.push_back(&rec);
    }
    if (ok.empty()) return result;

    auto param_at = [](const TrialRecord& rec, std::size_t j) {
        const std::size_t p = rec.theta.size();
        if (j < p) return rec.theta[j];
        if (j == p) return rec.tau;
        return rec.phi[j - p - 1];
    };
    const double n = static_cast<double>(ok.size());
    for (std::size_t j = 0; j < n_params; ++j) {
        double mean = 0.0;
        for (const TrialRecord* rec : ok) mean += param_at(*rec, j);
        mean /= n;
        result.mean[j] = mean;
        if (ok.size() >= 2) {
            double ss = 0.0;
            for (const TrialRecord* rec : ok) {
                const double dv = param_at(*rec, j) - mean;
                ss += dv * dv;
            }
            result.stddev[j] = std::sqrt(ss / (n - 1.0));
        }
    }
    return result;
}

void write_experiment_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);

    file << "trial,seed,stop_reason,epochs,final_loss";
    for (const std::string& name : result.param_names) file << ',' << name;
    file << "\n";
    for (const TrialRecord& rec : result.trials) {
        file << rec.trial << ',' << rec.seed << ',';
        if (rec.failed) {
            file << "failed," << 0 << ',' << "NA";
            for (std::size_t j = 0; j < result.param_names.size(); ++j) file << ",NA";
        } else {
            file << to_string(rec.stop_reason) << ',' << rec.epochs << ','
                 << format_double(rec.final_loss);
            for (double th : rec.theta) file << ',' << format_double(th);
            file << ',' << format_double(rec.tau);
            for (double ph : rec.phi) file << ',' << format_double(ph);
        }
        file << "\n";
    }

    file << "\nparameter,true_value,mean_learned,std\n";
    for (std::size_t j = 0; j < result.param_names.size(); ++j) {
        file << result.param_names[j] << ',' << format_double(result.true_values[j]) << ',';
        if (std::isnan(result.mean[j])) file << "NA";
        else file << format_double(result.mean[j]);
        file << ',';
        // Unbiased std is undefined for a single trial and degenerate when a
        // parameter never moves; both print as NA like the source tables.
        if (std::isnan(result.stddev[j]) || result.stddev[j] == 0.0) file << "NA";
        else file << format_double(result.stddev[j]);
        file << "\n";
    }
    if (!file) throw IoError("write failed: " + path);
}

std::vector<std::string> run_experiment(const RunConfig& rc, const std::string& out_dir,
                                        int jobs) {
    std::filesystem::create_directories(out_dir);
    const FitConfig fc = make_fit_config(rc);
    const Dataset clean = generate_true(*fc.model, *fc.ic, rc.theta_true, Delay(rc.tau_true),
                                        rc.phi_true, rc.t_final, rc.gen_dt);
    std::vector<std::string> written;
    for (double level : rc.noise_levels) {
        const ExperimentResult result = run_trials(rc, clean, level, jobs);
        const std::string path =
            out_dir + "/results_" + rc.model_name + "_noise" + format_level(level) + ".csv";
        write_experiment_csv(result, path);
        written.push_back(path);
    }
    return written;
}

} // namespace ddefit
