#include "ddefit/types.hpp"

#include <cmath>

namespace ddefit {

int trajectory_index_of(const Trajectory& traj, double t) {
    if (traj.states.empty() || !(traj.dt > 0.0))
        throw DegenerateInput("trajectory_index_of: empty trajectory");
    const double k_real = (t - traj.t0) / traj.dt;
    const int k = static_cast<int>(std::lround(k_real));
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    if (k < 0 || k >= traj.size() || std::abs(t - traj.time_at(k)) > tol)
        throw NotOnGrid("time " + std::to_string(t) + " is not a grid node");
    return k;
}

std::vector<std::string> DynamicsModel::param_names() const {
    std::vector<std::string> names;
    names.reserve(param_count());
    for (int i = 0; i < param_count(); ++i) names.push_back("theta" + std::to_string(i));
    return names;
}

std::vector<std::string> InitialConditionModel::param_names() const {
    std::vector<std::string> names;
    names.reserve(param_count());
    for (int i = 0; i < param_count(); ++i) names.push_back("phi" + std::to_string(i));
    return names;
}

} // namespace ddefit
