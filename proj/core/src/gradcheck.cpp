#include "ddefit/gradcheck.hpp"

#include <cmath>

#include "ddefit/models.hpp"

namespace ddefit {

Vec fd_gradient(const std::function<double(const Vec&)>& loss_of_params, const Vec& params,
                double h_rel) {
    if (!(h_rel > 0.0)) throw DegenerateInput("fd_gradient: h_rel must be positive");
    Vec g(params.size(), 0.0);
    Vec work = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double h = h_rel * std::max(1.0, std::abs(params[i]));
        work[i] = params[i] + h;
        const double up = loss_of_params(work);
        work[i] = params[i] - h;
        const double down = loss_of_params(work);
        work[i] = params[i];
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

CompareReport compare(const GradientBundle& adjoint, const Vec& fd,
                      double tol_rel_theta_phi, double tol_rel_tau,
                      const std::vector<std::string>& names) {
    const std::size_t p = adjoint.theta.size();
    const std::size_t q = adjoint.phi.size();
    if (fd.size() != p + 1 + q) throw DimensionMismatch("compare: fd layout");
    if (names.size() != fd.size()) throw DimensionMismatch("compare: names layout");

    constexpr double kAbsFloor = 1e-4;
    CompareReport report;
    auto push = [&](std::size_t i, double a, double tol) {
        CompareRow row;
        row.name = names[i];
        row.adjoint = a;
        row.fd = fd[i];
        row.tol = tol;
        // |a - fd| <= max(tol*|fd|, floor) rewritten as one effective ratio.
        row.rel_err = std::abs(a - fd[i]) / std::max(std::abs(fd[i]), kAbsFloor / tol);
        row.pass = row.rel_err <= tol;
        report.all_pass = report.all_pass && row.pass;
        report.max_rel_err = std::max(report.max_rel_err, row.rel_err);
        report.rows.push_back(std::move(row));
    };
    for (std::size_t i = 0; i < p; ++i) push(i, adjoint.theta[i], tol_rel_theta_phi);
    push(p, adjoint.tau, tol_rel_tau);
    for (std::size_t i = 0; i < q; ++i) push(p + 1 + i, adjoint.phi[i], tol_rel_theta_phi);
    return report;
}

CompareReport gradcheck_pipeline(const GradCheckSetup& setup,
                                 const std::vector<double>& data_times,
                                 const std::vector<Vec>& data_values) {
    const DynamicsModel& f = *setup.model;
    const InitialConditionModel& x0 = *setup.ic;
    const int p = f.param_count();
    const int q = x0.param_count();

    const CubicSpline target = CubicSpline::fit_natural(data_times, data_values);

    auto loss_of = [&](const Vec& flat) {
        const Vec theta(flat.begin(), flat.begin() + p);
        const Delay tau(flat[p]);
        const Vec phi(flat.begin() + p + 1, flat.end());
        const Trajectory traj = solve_forward(f, x0, theta, tau, phi, setup.t_final, setup.n_tau);
        return total_loss(traj, target, setup.loss);
    };

    Vec flat;
    flat.reserve(p + 1 + q);
    flat.insert(flat.end(), setup.theta.begin(), setup.theta.end());
    flat.push_back(setup.tau);
    flat.insert(flat.end(), setup.phi.begin(), setup.phi.end());

    // Adjoint gradients at the base point.
    const Delay tau(setup.tau);
    const SolveGrid grid = SolveGrid::make(tau, setup.n_tau, setup.t_final);
    const Trajectory traj = solve_forward(f, x0, setup.theta, tau, setup.phi, setup.t_final, setup.n_tau);
    std::vector<double> knot_times(grid.n_step + 1);
    for (int k = 0; k <= grid.n_step; ++k) knot_times[k] = grid.time_at(k);
    const CubicSpline pred = CubicSpline::fit_natural(knot_times, traj.states);
    const GradientBundle adjoint =
        compute_gradients(f, x0, setup.theta, tau, setup.phi, pred, target, setup.loss, grid);

    // FD for theta and phi at the configured step; tau gets its own step,
    // shrunk until the perturbation stays inside the current N_step plateau.
    Vec fd = fd_gradient(loss_of, flat, setup.h_rel);

    const auto n_step_of = [&](double t) {
        return SolveGrid::make(Delay(t), setup.n_tau, setup.t_final).n_step;
    };
    const int base_steps = n_step_of(setup.tau);
    double h = setup.h_rel * std::max(1.0, std::abs(setup.tau));
    bool shrunk = false;
    for (int iter = 0; iter < 60; ++iter) {
        if (setup.tau - h > 0.0 && n_step_of(setup.tau + h) == base_steps &&
            n_step_of(setup.tau - h) == base_steps)
            break;
        h *= 0.5;
        shrunk = true;
        if (iter == 59)
            throw Error("gradcheck: tau sits exactly on an N_step transition");
    }
    Vec flat_up = flat, flat_down = flat;
    flat_up[p] = setup.tau + h;
    flat_down[p] = setup.tau - h;
    fd[p] = (loss_of(flat_up) - loss_of(flat_down)) / (2.0 * h);

    std::vector<std::string> names = f.param_names();
    names.push_back("tau");
    const auto phi_names = x0.param_names();
    names.insert(names.end(), phi_names.begin(), phi_names.end());

    CompareReport report = compare(adjoint, fd, setup.tol_theta_phi, setup.tol_tau, names);
    report.h_tau = h;
    report.h_tau_shrunk = shrunk;
    return report;
}

CompareReport gradcheck_benchmark(const std::string& model_name, double noise_level,
                                  std::uint64_t seed) {
    const Benchmark b = benchmark(model_name);
    GradCheckSetup setup;
    setup.model = make_model(b.model_name);
    setup.ic = make_ic(b.ic_family, b.d);
    setup.theta = b.theta_init;
    setup.tau = b.tau_init;
    setup.phi = b.phi_init;
    setup.t_final = b.t_final;
    setup.n_tau = b.n_tau;
    setup.loss.running.kind = b.running_norm;

    const Dataset clean = generate_true(*setup.model, *setup.ic, b.theta_true,
                                        Delay(b.tau_true), b.phi_true, b.t_final, b.gen_dt);
    const Dataset noisy = add_noise(clean, {noise_level, seed});
    if (b.init_b_from_data) {
        const int off = setup.ic->offset_index();
        for (int i = 0; i < b.d; ++i) setup.phi[off + i] = noisy.values.front()[i];
    }
    return gradcheck_pipeline(setup, noisy.times, noisy.values);
}

} // namespace ddefit
