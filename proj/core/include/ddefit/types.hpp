#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ddefit/linalg.hpp"

namespace ddefit {

// Strictly positive time delay. The invariant tau > 0 is enforced on
// construction so downstream code (dt = tau / n_tau) never divides by zero.
class Delay {
public:
    explicit Delay(double value) : value_(value) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw DegenerateInput("Delay must be a finite positive value");
    }
    double value() const { return value_; }

private:
    double value_;
};

// State samples on a uniform grid t0 + k*dt. Times are derived from
// (t0, dt, k), never stored per point, so delayed-index lookups stay exact.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<Vec> states;

    double time_at(int k) const { return t0 + k * dt; }
    int size() const { return static_cast<int>(states.size()); }
    int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
};

// Index k of the grid node matching t up to 1e-9 relative tolerance.
// Throws NotOnGrid for off-grid inputs.
int trajectory_index_of(const Trajectory& traj, double t);

// Right-hand side of the delay differential equation
//   x'(t) = F(x(t), x(t - tau), tau, t, theta)
// together with its four analytic partial derivatives. All operations must be
// total on finite inputs with tau > 0; implementations are immutable and safe
// to share across threads.
class DynamicsModel {
public:
    virtual ~DynamicsModel() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;         // d
    virtual int param_count() const = 0; // p

    virtual Vec eval(const Vec& x, const Vec& y, double tau, double t, const Vec& theta) const = 0;
    // d x d derivative in the current state x(t)
    virtual Mat jac_x(const Vec& x, const Vec& y, double tau, double t, const Vec& theta) const = 0;
    // d x d derivative in the delayed state x(t - tau)
    virtual Mat jac_y(const Vec& x, const Vec& y, double tau, double t, const Vec& theta) const = 0;
    // length-d derivative in the delay itself
    virtual Vec jac_tau(const Vec& x, const Vec& y, double tau, double t, const Vec& theta) const = 0;
    // d x p derivative in theta
    virtual Mat jac_theta(const Vec& x, const Vec& y, double tau, double t, const Vec& theta) const = 0;

    virtual std::vector<std::string> param_names() const;
};

// Initial-condition (history) function X0(t, phi), defined for all t <= 0
// down to -tau for any delay under consideration.
class InitialConditionModel {
public:
    virtual ~InitialConditionModel() = default;

    virtual std::string family() const = 0;
    virtual int dim() const = 0;         // d
    virtual int param_count() const = 0; // q

    virtual Vec eval(double t, const Vec& phi) const = 0;
    virtual Mat jac_phi(double t, const Vec& phi) const = 0; // d x q

    // Index of the constant-offset block b inside phi, or -1 if the family
    // has none. Used by the "init b from first data point" option.
    virtual int offset_index() const { return -1; }

    virtual std::vector<std::string> param_names() const;
};

} // namespace ddefit
