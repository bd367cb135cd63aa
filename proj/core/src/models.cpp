#include "ddefit/models.hpp"

#include <cmath>

namespace ddefit {

namespace {

void check_shapes(const DynamicsModel& f, const Vec& x, const Vec& y, const Vec& theta) {
    if (static_cast<int>(x.size()) != f.dim() || static_cast<int>(y.size()) != f.dim())
        throw DimensionMismatch(f.name() + ": state dimension");
    if (static_cast<int>(theta.size()) != f.param_count())
        throw DimensionMismatch(f.name() + ": theta length");
}

class ExponentialModel final : public DynamicsModel {
public:
    std::string name() const override { return "exponential"; }
    int dim() const override { return 1; }
    int param_count() const override { return 2; }

    Vec eval(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        return {th[0] * x[0] + th[1] * y[0]};
    }
    Mat jac_x(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 1);
        j.at(0, 0) = th[0];
        return j;
    }
    Mat jac_y(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 1);
        j.at(0, 0) = th[1];
        return j;
    }
    Vec jac_tau(const Vec&, const Vec&, double, double, const Vec&) const override { return {0.0}; }
    Mat jac_theta(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 2);
        j.at(0, 0) = x[0];
        j.at(0, 1) = y[0];
        return j;
    }
};

class LogisticModel final : public DynamicsModel {
public:
    std::string name() const override { return "logistic"; }
    int dim() const override { return 1; }
    int param_count() const override { return 2; }

    Vec eval(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        return {th[0] * x[0] * (1.0 - th[1] * y[0])};
    }
    Mat jac_x(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 1);
        j.at(0, 0) = th[0] * (1.0 - th[1] * y[0]);
        return j;
    }
    Mat jac_y(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 1);
        j.at(0, 0) = -th[0] * th[1] * x[0];
        return j;
    }
    Vec jac_tau(const Vec&, const Vec&, double, double, const Vec&) const override { return {0.0}; }
    Mat jac_theta(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 2);
        j.at(0, 0) = x[0] * (1.0 - th[1] * y[0]);
        j.at(0, 1) = -th[0] * x[0] * y[0];
        return j;
    }
};

class EnsoModel final : public DynamicsModel {
public:
    std::string name() const override { return "enso"; }
    int dim() const override { return 1; }
    int param_count() const override { return 3; }

    Vec eval(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        return {th[0] * x[0] - th[1] * x[0] * x[0] * x[0] - th[2] * y[0]};
    }
    Mat jac_x(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 1);
        j.at(0, 0) = th[0] - 3.0 * th[1] * x[0] * x[0];
        return j;
    }
    Mat jac_y(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 1);
        j.at(0, 0) = -th[2];
        return j;
    }
    Vec jac_tau(const Vec&, const Vec&, double, double, const Vec&) const override { return {0.0}; }
    Mat jac_theta(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(1, 3);
        j.at(0, 0) = x[0];
        j.at(0, 1) = -x[0] * x[0] * x[0];
        j.at(0, 2) = -y[0];
        return j;
    }
};

// x' = p - V0 * x * y^m / (alpha + y^m) with m = 8 a fixed integer constant,
// theta = (p, V0, alpha).
class CheyneModel final : public DynamicsModel {
public:
    static constexpr int kM = 8;

    std::string name() const override { return "cheyne"; }
    int dim() const override { return 1; }
    int param_count() const override { return 3; }

    Vec eval(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        const double ym = pow_m(y[0]);
        const double den = denom(th[2], ym);
        return {th[0] - th[1] * x[0] * ym / den};
    }
    Mat jac_x(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        const double ym = pow_m(y[0]);
        const double den = denom(th[2], ym);
        Mat j(1, 1);
        j.at(0, 0) = -th[1] * ym / den;
        return j;
    }
    Mat jac_y(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        const double ym = pow_m(y[0]);
        const double den = denom(th[2], ym);
        const double ym1 = pow_m1(y[0]);
        Mat j(1, 1);
        // d/dy [y^m/(alpha+y^m)] = m*alpha*y^(m-1)/(alpha+y^m)^2
        j.at(0, 0) = -th[1] * x[0] * kM * th[2] * ym1 / (den * den);
        return j;
    }
    Vec jac_tau(const Vec&, const Vec&, double, double, const Vec&) const override { return {0.0}; }
    Mat jac_theta(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        const double ym = pow_m(y[0]);
        const double den = denom(th[2], ym);
        Mat j(1, 3);
        j.at(0, 0) = 1.0;
        j.at(0, 1) = -x[0] * ym / den;
        j.at(0, 2) = th[1] * x[0] * ym / (den * den);
        return j;
    }

private:
    static double pow_m(double y) {
        const double y2 = y * y;
        const double y4 = y2 * y2;
        return y4 * y4;
    }
    static double pow_m1(double y) {
        const double y2 = y * y;
        const double y4 = y2 * y2;
        return y4 * y2 * y;
    }
    static double denom(double alpha, double ym) {
        const double den = alpha + ym;
        if (den == 0.0) throw SingularDynamics("cheyne: alpha + y^m is zero");
        return den;
    }
};

// Components: x = (T*, V_I, V_NI).
//   T*'   = k*T0*V_I(t-tau)*exp(-m*tau) - delta*T*
//   V_I'  = (1-n_p)*N*delta*T* - c*V_I
//   V_NI' = n_p*N*delta*T* - c*V_NI
// The delayed state enters only through V_I(t-tau), so jac_y has exactly one
// nonzero cell, and the explicit exp(-m*tau) factor makes jac_tau nonzero in
// the T* row only.
class HivModel final : public DynamicsModel {
public:
    explicit HivModel(HivConstants constants) : c_(constants) {}

    std::string name() const override { return "hiv"; }
    int dim() const override { return 3; }
    int param_count() const override { return 0; }

    Vec eval(const Vec& x, const Vec& y, double tau, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        const double infl = c_.k * c_.t0_cells * y[1] * std::exp(-c_.m * tau);
        return {infl - c_.delta * x[0],
                (1.0 - c_.n_p) * c_.big_n * c_.delta * x[0] - c_.c * x[1],
                c_.n_p * c_.big_n * c_.delta * x[0] - c_.c * x[2]};
    }
    Mat jac_x(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(3, 3);
        j.at(0, 0) = -c_.delta;
        j.at(1, 0) = (1.0 - c_.n_p) * c_.big_n * c_.delta;
        j.at(1, 1) = -c_.c;
        j.at(2, 0) = c_.n_p * c_.big_n * c_.delta;
        j.at(2, 2) = -c_.c;
        return j;
    }
    Mat jac_y(const Vec& x, const Vec& y, double tau, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        Mat j(3, 3);
        j.at(0, 1) = c_.k * c_.t0_cells * std::exp(-c_.m * tau);
        return j;
    }
    Vec jac_tau(const Vec& x, const Vec& y, double tau, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        return {-c_.m * c_.k * c_.t0_cells * y[1] * std::exp(-c_.m * tau), 0.0, 0.0};
    }
    Mat jac_theta(const Vec& x, const Vec& y, double, double, const Vec& th) const override {
        check_shapes(*this, x, y, th);
        return Mat(3, 0);
    }

private:
    HivConstants c_;
};

class ConstantIC final : public InitialConditionModel {
public:
    explicit ConstantIC(int d) : d_(d) {}
    std::string family() const override { return "constant"; }
    int dim() const override { return d_; }
    int param_count() const override { return d_; }
    Vec eval(double, const Vec& phi) const override { return phi; }
    Mat jac_phi(double, const Vec&) const override {
        Mat j(d_, d_);
        for (int i = 0; i < d_; ++i) j.at(i, i) = 1.0;
        return j;
    }
    int offset_index() const override { return 0; }
    std::vector<std::string> param_names() const override { return suffixed("b", d_); }

    static std::vector<std::string> suffixed(const std::string& base, int d) {
        if (d == 1) return {base};
        std::vector<std::string> names;
        for (int i = 0; i < d; ++i) names.push_back(base + std::to_string(i));
        return names;
    }

private:
    int d_;
};

class AffineIC final : public InitialConditionModel {
public:
    explicit AffineIC(int d) : d_(d) {}
    std::string family() const override { return "affine"; }
    int dim() const override { return d_; }
    int param_count() const override { return 2 * d_; }
    Vec eval(double t, const Vec& phi) const override {
        Vec out(d_);
        for (int i = 0; i < d_; ++i) out[i] = phi[i] * t + phi[d_ + i];
        return out;
    }
    Mat jac_phi(double t, const Vec&) const override {
        Mat j(d_, 2 * d_);
        for (int i = 0; i < d_; ++i) {
            j.at(i, i) = t;
            j.at(i, d_ + i) = 1.0;
        }
        return j;
    }
    int offset_index() const override { return d_; }
    std::vector<std::string> param_names() const override {
        auto names = ConstantIC::suffixed("a", d_);
        auto bs = ConstantIC::suffixed("b", d_);
        names.insert(names.end(), bs.begin(), bs.end());
        return names;
    }

private:
    int d_;
};

class PeriodicIC final : public InitialConditionModel {
public:
    explicit PeriodicIC(int d) : d_(d) {}
    std::string family() const override { return "periodic"; }
    int dim() const override { return d_; }
    int param_count() const override { return 3 * d_; }
    Vec eval(double t, const Vec& phi) const override {
        Vec out(d_);
        for (int i = 0; i < d_; ++i)
            out[i] = phi[i] * std::sin(phi[d_ + i] * t) + phi[2 * d_ + i];
        return out;
    }
    Mat jac_phi(double t, const Vec& phi) const override {
        Mat j(d_, 3 * d_);
        for (int i = 0; i < d_; ++i) {
            j.at(i, i) = std::sin(phi[d_ + i] * t);
            j.at(i, d_ + i) = phi[i] * t * std::cos(phi[d_ + i] * t);
            j.at(i, 2 * d_ + i) = 1.0;
        }
        return j;
    }
    int offset_index() const override { return 2 * d_; }
    std::vector<std::string> param_names() const override {
        auto names = ConstantIC::suffixed("A", d_);
        auto om = ConstantIC::suffixed("omega", d_);
        auto bs = ConstantIC::suffixed("b", d_);
        names.insert(names.end(), om.begin(), om.end());
        names.insert(names.end(), bs.begin(), bs.end());
        return names;
    }

private:
    int d_;
};

} // namespace

std::shared_ptr<const DynamicsModel> make_model(const std::string& name) {
    if (name == "exponential") return std::make_shared<ExponentialModel>();
    if (name == "logistic") return std::make_shared<LogisticModel>();
    if (name == "enso") return std::make_shared<EnsoModel>();
    if (name == "cheyne") return std::make_shared<CheyneModel>();
    if (name == "hiv") return make_hiv(HivConstants{});
    throw ConfigError("unknown model: " + name);
}

std::shared_ptr<const DynamicsModel> make_hiv(const HivConstants& constants) {
    return std::make_shared<HivModel>(constants);
}

std::shared_ptr<const InitialConditionModel> make_ic(const std::string& family, int d) {
    if (d < 1) throw ConfigError("initial condition dimension must be >= 1");
    if (family == "constant") return std::make_shared<ConstantIC>(d);
    if (family == "affine") return std::make_shared<AffineIC>(d);
    if (family == "periodic") return std::make_shared<PeriodicIC>(d);
    throw ConfigError("unknown initial-condition family: " + family);
}

std::vector<std::string> model_names() {
    return {"exponential", "logistic", "enso", "cheyne", "hiv"};
}

Benchmark benchmark(const std::string& model_name) {
    Benchmark b;
    b.model_name = model_name;
    if (model_name == "exponential") {
        b.ic_family = "affine";
        b.theta_true = {-2.0, -2.0};
        b.tau_true = 1.0;
        b.phi_true = {1.5, 4.0};
        b.theta_init = {-1.5, -2.5};
        b.tau_init = 2.0;
        b.phi_init = {2.25, 2.8};
        b.t_final = 10.0;
        b.gen_dt = 0.1;
        b.n_tau = 10;
    } else if (model_name == "logistic") {
        b.ic_family = "periodic";
        b.theta_true = {2.0, 1.5};
        b.tau_true = 1.0;
        b.phi_true = {-0.5, 3.0, 2.0};
        b.theta_init = {1.0, 1.0};
        b.tau_init = 0.5;
        b.phi_init = {-0.25, 6.0, 2.6};
        b.t_final = 10.0;
        b.gen_dt = 0.1;
        b.n_tau = 10;
    } else if (model_name == "enso") {
        b.ic_family = "periodic";
        b.theta_true = {1.0, 1.0, 0.75};
        b.tau_true = 5.0;
        b.phi_true = {-0.25, 1.0, 1.5};
        b.theta_init = {1.5, 0.8, 1.2};
        b.tau_init = 6.0;
        b.phi_init = {-0.3, 0.8, 1.95};
        b.t_final = 10.0;
        b.gen_dt = 0.1;
        b.n_tau = 50;
    } else if (model_name == "cheyne") {
        b.ic_family = "affine";
        b.theta_true = {1.0, 7.0, 2.0};
        b.tau_true = 0.25;
        b.phi_true = {-5.0, 2.0};
        b.theta_init = {2.0, 12.0, 1.5};
        b.tau_init = 0.5;
        b.phi_init = {0.0, 2.0}; // b replaced by the first data point
        b.init_b_from_data = true;
        b.t_final = 3.0;
        b.gen_dt = 0.025;
        b.n_tau = 10;
    } else if (model_name == "hiv") {
        b.ic_family = "periodic";
        b.d = 3;
        b.theta_true = {};
        b.tau_true = 1.0;
        b.phi_true = {1.0, 3.0, 0.0, 1.0, 3.0, 0.0, 10.0, 8.0, 0.0};
        b.theta_init = {};
        b.tau_init = 0.25;
        b.phi_init = {1.0, 1.0, 1.0, 1.2, 3.6, 0.0, 10.0, 8.0, 0.0}; // b from data
        b.init_b_from_data = true;
        b.t_final = 10.0;
        b.gen_dt = 0.1;
        b.n_tau = 10;
        b.running_norm = NormKind::L1;
    } else {
        throw ConfigError("unknown benchmark: " + model_name);
    }
    return b;
}

} // namespace ddefit
