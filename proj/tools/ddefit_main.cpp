// Command-line front end: generate synthetic datasets, run single fits, run
// batch experiments across noise levels, and check the adjoint gradients
// against finite differences.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical
// failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ddefit/experiment.hpp"
#include "ddefit/gradcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string config_path;
    std::string data_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};

ddefit::RunConfig load(const CommonOpts& opts) {
    ddefit::RunConfig rc = ddefit::load_config(opts.config_path);
    if (opts.seed) rc.seed = *opts.seed;
    if (!opts.out_dir.empty()) rc.out_dir = opts.out_dir;
    return rc;
}

int cmd_simulate(const CommonOpts& opts, std::optional<double> level_opt) {
    const ddefit::RunConfig rc = load(opts);
    const ddefit::FitConfig fc = ddefit::make_fit_config(rc);
    const ddefit::Dataset clean =
        ddefit::generate_true(*fc.model, *fc.ic, rc.theta_true, ddefit::Delay(rc.tau_true),
                              rc.phi_true, rc.t_final, rc.gen_dt);
    const double level = level_opt ? *level_opt
                                   : (rc.noise_levels.empty() ? 0.0 : rc.noise_levels.front());
    const ddefit::Dataset noisy = ddefit::add_noise(clean, {level, rc.seed});

    std::filesystem::create_directories(rc.out_dir);
    const std::string clean_path = rc.out_dir + "/" + rc.model_name + "_clean.csv";
    const std::string noisy_path = rc.out_dir + "/" + rc.model_name + "_noisy.csv";
    ddefit::write_csv(clean, clean_path);
    ddefit::write_csv(noisy, noisy_path);
    std::cout << "wrote " << clean_path << "\n";
    std::cout << "wrote " << noisy_path << " (noise level " << level << ", seed " << rc.seed
              << ")\n";
    return kExitOk;
}

int cmd_fit(const CommonOpts& opts, bool verbose) {
    const ddefit::RunConfig rc = load(opts);
    if (opts.data_path.empty()) {
        std::cerr << "fit: --data is required\n";
        return kExitUsage;
    }
    const ddefit::Dataset data = ddefit::read_csv(opts.data_path);

    ddefit::FitConfig fc = ddefit::make_fit_config(rc);
    if (verbose) {
        fc.on_epoch = [](const ddefit::EpochInfo& info) {
            std::printf("epoch %4d  loss %.6e  tau %.6f  lr %.5f\n", info.epoch, info.loss,
                        info.tau, info.lr);
        };
    }
    const ddefit::FitResult fr = ddefit::fit(fc, data.times, data.values);

    std::filesystem::create_directories(rc.out_dir);
    const std::string result_path = rc.out_dir + "/fit_result.csv";
    {
        std::ofstream file(result_path, std::ios::binary);
        if (!file) throw ddefit::IoError("cannot open for writing: " + result_path);
        file << "model,stop_reason,epochs,final_loss";
        auto names = fc.model->param_names();
        names.push_back("tau");
        for (const auto& n : fc.ic->param_names()) names.push_back(n);
        for (const auto& n : names) file << ',' << n;
        file << "\n";
        file << rc.model_name << ',' << ddefit::to_string(fr.stop_reason) << ','
             << fr.epochs_run() << ',' << ddefit::format_double(fr.final_loss());
        for (double v : fr.theta) file << ',' << ddefit::format_double(v);
        file << ',' << ddefit::format_double(fr.tau);
        for (double v : fr.phi) file << ',' << ddefit::format_double(v);
        file << "\n";
    }

    // Plot-ready dump: predicted trajectory on its grid, target spline at the
    // same times.
    const std::string traj_path = rc.out_dir + "/trajectory.csv";
    {
        const ddefit::CubicSpline target = ddefit::CubicSpline::fit_natural(data.times, data.values);
        std::ofstream file(traj_path, std::ios::binary);
        if (!file) throw ddefit::IoError("cannot open for writing: " + traj_path);
        file << "t";
        for (int c = 0; c < fc.model->dim(); ++c) file << ",pred" << c;
        for (int c = 0; c < fc.model->dim(); ++c) file << ",target" << c;
        file << "\n";
        for (int k = 0; k < fr.predicted.size(); ++k) {
            const double t = fr.predicted.time_at(k);
            file << ddefit::format_double(t);
            for (double v : fr.predicted.states[k]) file << ',' << ddefit::format_double(v);
            for (double v : target.eval(t)) file << ',' << ddefit::format_double(v);
            file << "\n";
        }
    }

    std::cout << "stop reason: " << ddefit::to_string(fr.stop_reason) << " after "
              << fr.epochs_run() << " epochs, final loss " << fr.final_loss() << "\n";
    std::cout << "learned tau: " << fr.tau << "\n";
    std::cout << "wrote " << result_path << " and " << traj_path << "\n";
    if (fr.stop_reason == ddefit::StopReason::blow_up) return kExitNumerical;
    return kExitOk;
}

int cmd_experiment(const CommonOpts& opts) {
    const ddefit::RunConfig rc = load(opts);
    const auto paths = ddefit::run_experiment(rc, rc.out_dir, opts.jobs);
    for (const auto& p : paths) std::cout << "wrote " << p << "\n";
    return kExitOk;
}

int cmd_gradcheck(const CommonOpts& opts, double level) {
    std::vector<std::string> models;
    std::uint64_t seed = 1234;
    if (!opts.config_path.empty()) {
        const ddefit::RunConfig rc = load(opts);
        models.push_back(rc.model_name);
        seed = rc.seed;
    } else {
        models = ddefit::model_names();
    }
    if (opts.seed) seed = *opts.seed;

    bool all_pass = true;
    for (const std::string& name : models) {
        const ddefit::CompareReport report = ddefit::gradcheck_benchmark(name, level, seed);
        all_pass = all_pass && report.all_pass;
        std::printf("%-12s max rel err %.3e  h_tau %.3e%s  %s\n", name.c_str(),
                    report.max_rel_err, report.h_tau, report.h_tau_shrunk ? " (shrunk)" : "",
                    report.all_pass ? "PASS" : "FAIL");
        for (const auto& row : report.rows) {
            std::printf("    %-8s adjoint % .6e  fd % .6e  rel err %.3e  %s\n", row.name.c_str(),
                        row.adjoint, row.fd, row.rel_err, row.pass ? "ok" : "FAIL");
        }
    }
    return all_pass ? kExitOk : kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameter, delay, and initial-condition identification for "
                 "delay differential equations"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool verbose = false;
    std::optional<double> sim_level;
    double check_level = 0.3;

    auto add_common = [&](CLI::App* cmd, bool config_required = true) {
        auto* c = cmd->add_option("--config", opts.config_path, "path to an INI config");
        if (config_required) c->required();
        cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
        cmd->add_option("--seed", opts.seed, "master seed (overrides config)");
    };

    auto* simulate = app.add_subcommand("simulate", "write clean and noisy dataset CSVs");
    add_common(simulate);
    simulate->add_option("--level", sim_level, "noise level (default: first configured level)");

    auto* fit = app.add_subcommand("fit", "fit one dataset and write result CSVs");
    add_common(fit);
    fit->add_option("--data", opts.data_path, "dataset CSV to fit")->required();
    fit->add_flag("--verbose", verbose, "print per-epoch progress");

    auto* experiment = app.add_subcommand("experiment", "run the batch protocol per noise level");
    add_common(experiment);
    experiment->add_option("--jobs", opts.jobs, "run trials in parallel");

    auto* gradcheck =
        app.add_subcommand("gradcheck", "compare adjoint gradients against finite differences");
    add_common(gradcheck, /*config_required=*/false);
    gradcheck->add_option("--level", check_level, "noise level for the check data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(opts, sim_level);
        if (fit->parsed()) return cmd_fit(opts, verbose);
        if (experiment->parsed()) return cmd_experiment(opts);
        if (gradcheck->parsed()) return cmd_gradcheck(opts, check_level);
    } catch (const ddefit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ddefit::ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ddefit::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitData;
    } catch (const ddefit::NonFiniteState& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
