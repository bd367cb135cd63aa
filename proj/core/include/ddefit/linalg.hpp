#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ddefit/errors.hpp"

namespace ddefit {

// States, parameter blocks, and adjoint values are all small dense vectors
// (d <= 3, p <= 3, q <= 9 for the bundled models), so a plain double vector
// with a few free functions covers every need.
using Vec = std::vector<double>;

inline bool is_finite(const Vec& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

inline void check_same_size(const Vec& a, const Vec& b, const char* what) {
    if (a.size() != b.size()) throw DimensionMismatch(what);
}

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

inline Vec add(const Vec& a, const Vec& b) {
    check_same_size(a, b, "vector add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_size(a, b, "vector sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// r += s * a
inline void axpy(double s, const Vec& a, Vec& r) {
    check_same_size(a, r, "axpy");
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_size(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// Dense row-major matrix, sized at runtime. Only the handful of operations
// the adjoint assembly needs.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    // A * v
    Vec mul(const Vec& v) const {
        if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("Mat::mul");
        Vec r(rows_, 0.0);
        for (int i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (int j = 0; j < cols_; ++j) s += at(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    // A^T * v
    Vec tmul(const Vec& v) const {
        if (static_cast<int>(v.size()) != rows_) throw DimensionMismatch("Mat::tmul");
        Vec r(cols_, 0.0);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r[j] += at(i, j) * v[i];
        }
        return r;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

} // namespace ddefit
