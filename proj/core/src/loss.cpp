#include "ddefit/loss.hpp"

#include <cmath>

namespace ddefit {

namespace {

double weight_at(const NormKind& norm, std::size_t i) {
    return norm.weights ? (*norm.weights)[i] : 1.0;
}

void check_weights(const NormKind& norm, std::size_t d) {
    if (!norm.weights) return;
    if (norm.weights->size() != d) throw DimensionMismatch("loss weights dimension");
    for (double w : *norm.weights) {
        if (!(w > 0.0)) throw DegenerateInput("loss weights must be strictly positive");
    }
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace

double pointwise_loss(const Vec& x, const Vec& x_ref, const NormKind& norm) {
    check_same_size(x, x_ref, "pointwise_loss");
    check_weights(norm, x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double di = x[i] - x_ref[i];
        const double wi = weight_at(norm, i);
        switch (norm.kind) {
            case NormKind::L2: acc += wi * di * di; break;
            case NormKind::L1: acc += wi * std::abs(di); break;
            case NormKind::LInf: acc = std::max(acc, wi * std::abs(di)); break;
        }
    }
    return acc;
}

Vec pointwise_loss_grad(const Vec& x, const Vec& x_ref, const NormKind& norm) {
    check_same_size(x, x_ref, "pointwise_loss_grad");
    check_weights(norm, x.size());
    Vec g(x.size(), 0.0);
    switch (norm.kind) {
        case NormKind::L2:
            for (std::size_t i = 0; i < x.size(); ++i)
                g[i] = 2.0 * weight_at(norm, i) * (x[i] - x_ref[i]);
            break;
        case NormKind::L1:
            for (std::size_t i = 0; i < x.size(); ++i)
                g[i] = weight_at(norm, i) * sign(x[i] - x_ref[i]);
            break;
        case NormKind::LInf: {
            std::size_t arg = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double v = weight_at(norm, i) * std::abs(x[i] - x_ref[i]);
                if (v > best) { // ties break to the lowest index
                    best = v;
                    arg = i;
                }
            }
            g[arg] = weight_at(norm, arg) * sign(x[arg] - x_ref[arg]);
            break;
        }
    }
    return g;
}

double total_loss(const Trajectory& pred, const CubicSpline& target, const LossConfig& cfg) {
    const int n = pred.size();
    if (n < 2) throw DegenerateInput("total_loss: trajectory too short");
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double lk = pointwise_loss(pred.states[k], target.eval(pred.time_at(k)), cfg.running);
        acc += (k == 0 || k == n - 1) ? 0.5 * lk : lk;
    }
    acc *= pred.dt;
    if (cfg.terminal) {
        acc += pointwise_loss(pred.states[n - 1], target.eval(pred.time_at(n - 1)), *cfg.terminal);
    }
    return acc;
}

} // namespace ddefit
