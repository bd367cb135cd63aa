#pragma once

#include <cstdint>
#include <string>

#include "ddefit/types.hpp"

namespace ddefit {

// level is the paper-style noise multiplier: the added noise has standard
// deviation level * (unbiased sample std of the clean data), computed per
// state component.
struct NoiseSpec {
    double level = 0.0;
    std::uint64_t seed = 0;
};

struct Dataset {
    std::vector<double> times;  // ascending, first entry 0
    std::vector<Vec> values;

    int size() const { return static_cast<int>(times.size()); }
    int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
};

// Solves the generating IVP on the grid dt = solve_dt (solve_dt must divide
// tau, which fixes n_tau = round(tau/solve_dt)) and samples the first
// round(t_final/solve_dt) grid nodes, i.e. t = 0, dt, ..., t_final - dt.
Dataset generate_true(const DynamicsModel& f, const InitialConditionModel& x0,
                      const Vec& theta, Delay tau, const Vec& phi,
                      double t_final, double solve_dt);

// Adds iid N(0, sigma_c^2) draws per component, sigma_c = level * sample std
// of that component over ds. Times are never perturbed; level 0 returns the
// input unchanged without consuming randomness.
Dataset add_noise(const Dataset& ds, const NoiseSpec& spec);

// CSV with header "t,x0,...,x{d-1}", one row per sample, full double
// precision (17 significant digits), LF line endings.
void write_csv(const Dataset& ds, const std::string& path);
Dataset read_csv(const std::string& path);

} // namespace ddefit
