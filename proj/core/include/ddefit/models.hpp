#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ddefit/loss.hpp"
#include "ddefit/types.hpp"

namespace ddefit {

// Model catalog. Every entry supplies the closed-form right-hand side and its
// four analytic partials:
//
//   exponential  x' = theta0*x + theta1*y                       d = 1, p = 2
//   logistic     x' = theta0*x*(1 - theta1*y)                   d = 1, p = 2
//   enso         x' = theta0*x - theta1*x^3 - theta2*y          d = 1, p = 3
//   cheyne       x' = p - V0*x*y^m/(alpha + y^m), m = 8 fixed   d = 1, p = 3
//   hiv          three-species infection model with fixed rate
//                constants and an explicit exp(-m*tau) factor   d = 3, p = 0
//
// y denotes the delayed state x(t - tau). Only the hiv entry depends on tau
// explicitly, so the others return an exactly zero jac_tau.
std::shared_ptr<const DynamicsModel> make_model(const std::string& name);

// Initial-condition families:
//   constant   X0(t) = b                   q = d
//   affine     X0(t) = a*t + b             q = 2d, phi = concat[a, b]
//   periodic   X0(t) = A.*sin(omega*t)+b   q = 3d, phi = concat[A, omega, b]
std::shared_ptr<const InitialConditionModel> make_ic(const std::string& family, int d);

std::vector<std::string> model_names();

// Fixed rate constants of the hiv entry. They are configuration, not
// trainables: the model is over-parameterized, so only tau and phi train.
struct HivConstants {
    double k = 0.00343;
    double m = 3.8;
    double delta = 0.05;
    double c = 2.0;
    double t0_cells = 1000.0;
    double n_p = 0.43;
    double big_n = 48.0;
};

std::shared_ptr<const DynamicsModel> make_hiv(const HivConstants& constants);

// One bundled setup per benchmark experiment: generating (true) parameters,
// the published initialization point, grid and training hyperparameters.
// Where the source tables and the prose disagree (logistic omega, enso
// theta2), the defaults follow the tables.
struct Benchmark {
    std::string model_name;
    std::string ic_family;
    int d = 1;
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
    NormKind::Kind running_norm = NormKind::L2;
};

Benchmark benchmark(const std::string& model_name);

} // namespace ddefit
