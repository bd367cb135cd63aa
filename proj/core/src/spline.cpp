#include "ddefit/spline.hpp"

#include <algorithm>
#include <cmath>

namespace ddefit {

CubicSpline CubicSpline::fit_natural(const std::vector<double>& times,
                                     const std::vector<Vec>& values) {
    const int n = static_cast<int>(times.size());
    if (n < 2) throw DegenerateInput("spline fit needs at least two knots");
    if (values.size() != times.size())
        throw DegenerateInput("spline fit: times/values length mismatch");
    for (int i = 1; i < n; ++i) {
        if (!(times[i] > times[i - 1]))
            throw DegenerateInput("spline fit: knots must be strictly increasing");
    }
    const int d = static_cast<int>(values.front().size());
    for (const Vec& v : values) {
        if (static_cast<int>(v.size()) != d)
            throw DegenerateInput("spline fit: inconsistent value dimension");
    }

    CubicSpline s;
    s.dim_ = d;
    s.knots_ = times;
    s.y_.assign(d, std::vector<double>(n, 0.0));
    s.m_.assign(d, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < d; ++c) s.y_[c][i] = values[i][c];
    }

    if (n == 2) return s; // second derivatives stay zero: a straight line

    // Tridiagonal system for the interior second derivatives M_1..M_{n-2}
    // (natural boundary: M_0 = M_{n-1} = 0), solved with the Thomas algorithm.
    std::vector<double> h(n - 1);
    for (int i = 0; i < n - 1; ++i) h[i] = times[i + 1] - times[i];

    const int m = n - 2;
    std::vector<double> diag(m), upper(m), rhs(m);
    for (int c = 0; c < d; ++c) {
        const std::vector<double>& y = s.y_[c];
        for (int i = 0; i < m; ++i) {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            upper[i] = h[i + 1];
            rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h[i + 1] - (y[i + 1] - y[i]) / h[i]);
        }
        // forward elimination (lower diagonal is h[i])
        for (int i = 1; i < m; ++i) {
            const double w = h[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        std::vector<double>& M = s.m_[c];
        M[m] = rhs[m - 1] / diag[m - 1];
        for (int i = m - 2; i >= 0; --i) M[i + 1] = (rhs[i] - upper[i] * M[i + 2]) / diag[i];
    }
    return s;
}

int CubicSpline::interval_of(double t) const {
    // Clamping the interval index makes evaluation outside the knot range
    // continue the boundary cubic.
    const int n = static_cast<int>(knots_.size());
    if (t <= knots_.front()) return 0;
    if (t >= knots_.back()) return n - 2;
    const int hi = static_cast<int>(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin());
    return std::clamp(hi - 1, 0, n - 2);
}

Vec CubicSpline::eval(double t) const {
    const int i = interval_of(t);
    const double h = knots_[i + 1] - knots_[i];
    const double a = (knots_[i + 1] - t) / h;
    const double b = (t - knots_[i]) / h;
    const double h2 = h * h / 6.0;
    Vec out(dim_);
    for (int c = 0; c < dim_; ++c) {
        out[c] = a * y_[c][i] + b * y_[c][i + 1] +
                 ((a * a * a - a) * m_[c][i] + (b * b * b - b) * m_[c][i + 1]) * h2;
    }
    return out;
}

Vec CubicSpline::second_derivative(double t) const {
    const int i = interval_of(t);
    const double h = knots_[i + 1] - knots_[i];
    const double a = (knots_[i + 1] - t) / h;
    const double b = (t - knots_[i]) / h;
    Vec out(dim_);
    for (int c = 0; c < dim_; ++c) out[c] = a * m_[c][i] + b * m_[c][i + 1];
    return out;
}

} // namespace ddefit
