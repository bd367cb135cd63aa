#pragma once

#include <functional>
#include <memory>
#include <string>

#include "ddefit/adjoint.hpp"
#include "ddefit/data.hpp"
#include "ddefit/trainer.hpp"

namespace ddefit {

// Central finite differences of a scalar function: component i gets
// (L(p + h_i e_i) - L(p - h_i e_i)) / (2 h_i) with h_i = h_rel*max(1, |p_i|).
Vec fd_gradient(const std::function<double(const Vec&)>& loss_of_params, const Vec& params,
                double h_rel = 1e-4);

struct CompareRow {
    std::string name;
    double adjoint = 0.0;
    double fd = 0.0;
    double rel_err = 0.0; // |adjoint - fd| / max(|fd|, floor/tol)
    double tol = 0.0;
    bool pass = true;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    bool all_pass = true;
    double max_rel_err = 0.0;
    double h_tau = 0.0;        // step actually used for the tau column
    bool h_tau_shrunk = false; // true when the N_step guard reduced it
};

// Per-component check of the adjoint gradients against an FD vector laid out
// as [theta | tau | phi]. A component passes when
// |adjoint - fd| <= max(tol*|fd|, 1e-4), i.e. relative tolerance with a 1e-4
// absolute floor.
CompareReport compare(const GradientBundle& adjoint, const Vec& fd,
                      double tol_rel_theta_phi, double tol_rel_tau,
                      const std::vector<std::string>& names);

// Full-pipeline check for one model setup: builds the discretized loss as a
// function of the flat parameter vector (forward solve on the tau-dependent
// grid, grid loss against the fixed target spline), differentiates it by
// central FD, and compares against the adjoint gradients at the same point.
//
// The tau column needs care: perturbing tau moves the whole grid, and the
// loss jumps where N_step changes. The checker verifies
// N_step(tau +- h) == N_step(tau) and halves h until that holds, recording
// the final step in the report.
struct GradCheckSetup {
    std::shared_ptr<const DynamicsModel> model;
    std::shared_ptr<const InitialConditionModel> ic;
    Vec theta;
    double tau = 1.0;
    Vec phi;
    double t_final = 10.0;
    int n_tau = 10;
    LossConfig loss;
    double h_rel = 1e-4;
    double tol_theta_phi = 1e-2;
    double tol_tau = 5e-2;
};

CompareReport gradcheck_pipeline(const GradCheckSetup& setup,
                                 const std::vector<double>& data_times,
                                 const std::vector<Vec>& data_values);

// Runs gradcheck_pipeline for one bundled benchmark at its published
// initialization, on data generated at the given noise level.
CompareReport gradcheck_benchmark(const std::string& model_name, double noise_level,
                                  std::uint64_t seed);

} // namespace ddefit
