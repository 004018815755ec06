#pragma once

#include <string>

namespace stri {

// Predicted Strichartz exponent for K_{p,N} ~ N^kappa on the d-dimensional
// irrational torus: the scaling-invariant power d/2 - (d+2)/p in the sharp
// ranges, otherwise the interpolated table, with eps_loss marking entries
// that hold only with an N^eps loss.  partial_torus selects the d = 3
// improvement for theta = (1, 1, theta_3), valid for p > 14/3.
struct PredictedExponent {
    double value = 0;
    bool eps_loss = false;
    bool scaling_invariant = false;
    std::string regime;  // human-readable range label
};

PredictedExponent predicted_exponent(int d, double p, bool partial_torus = false);

// true when (d, p) is in the sharp scaling-invariant range
bool scaling_range(int d, double p, bool partial_torus = false);

}  // namespace stri
