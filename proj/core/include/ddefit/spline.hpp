#pragma once

#include <vector>

#include "ddefit/linalg.hpp"

namespace ddefit {

// Natural cubic spline through vector-valued samples. Each state component is
// fit independently against a shared knot vector; the boundary condition is
// zero second derivative at the first and last knot, which makes the two-point
// case the connecting straight line. Outside [t_1, t_N] evaluation continues
// the boundary interval's cubic, so the interpolant is defined (and smooth)
// slightly past the data range.
class CubicSpline {
public:
    // times strictly increasing, N >= 2, all values of equal dimension.
    // Throws DegenerateInput otherwise.
    static CubicSpline fit_natural(const std::vector<double>& times,
                                   const std::vector<Vec>& values);

    Vec eval(double t) const;
    Vec second_derivative(double t) const;

    int dim() const { return dim_; }
    const std::vector<double>& knots() const { return knots_; }

private:
    CubicSpline() = default;

    int interval_of(double t) const;

    int dim_ = 0;
    std::vector<double> knots_;
    // component-major: y_[c][i] is the value of component c at knot i,
    // m_[c][i] the spline's second derivative there (zero at both ends).
    std::vector<std::vector<double>> y_;
    std::vector<std::vector<double>> m_;
};

} // namespace ddefit
