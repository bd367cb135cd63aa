#pragma once

#include <optional>

#include "ddefit/spline.hpp"
#include "ddefit/types.hpp"

namespace ddefit {

// Weighted pointwise norm used for the running and terminal loss terms.
// weights, when present, must be strictly positive and of length d.
struct NormKind {
    enum Kind { L1, L2, LInf };
    Kind kind = L2;
    std::optional<Vec> weights;
};

// Running term is always active; an absent terminal norm means G == 0.
struct LossConfig {
    NormKind running;
    std::optional<NormKind> terminal;
};

// L2: sum w_i (x_i - ref_i)^2; L1: sum w_i |x_i - ref_i|;
// LInf: max w_i |x_i - ref_i|.
double pointwise_loss(const Vec& x, const Vec& x_ref, const NormKind& norm);

// (Sub)gradient in x. L1 uses sign with sign(0) = 0; LInf puts the whole
// subgradient on the first attaining component.
Vec pointwise_loss_grad(const Vec& x, const Vec& x_ref, const NormKind& norm);

// Trapezoidal rule over the solve grid nodes 0, dt, ..., n_step*dt of the
// running term, plus the terminal term at the last node when configured.
// This is the grid approximation of the loss integral: deliberately not the
// exact [0, t_final] integral, since the grid overshoots t_final. The target
// spline is extrapolated past its last knot for the overshoot nodes.
double total_loss(const Trajectory& pred, const CubicSpline& target, const LossConfig& cfg);

} // namespace ddefit
