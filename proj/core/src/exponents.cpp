#include "stri/exponents.hpp"

#include <stdexcept>

namespace stri {

bool scaling_range(int d, double p, bool partial_torus) {
    if (partial_torus && d == 3) return p > 14.0 / 3.0;
    switch (d) {
        case 2: return p > 20.0 / 3.0;
        case 3: return p > 16.0 / 3.0;
        case 4: return p > 4.0;
        default: return d >= 5 && p >= 4.0;
    }
}

PredictedExponent predicted_exponent(int d, double p, bool partial_torus) {
    if (d < 2 || !(p > 2)) throw std::invalid_argument("predicted_exponent: d >= 2, p > 2 required");
    double scaling = d / 2.0 - (d + 2.0) / p;
    if (scaling_range(d, p, partial_torus))
        return {scaling, false, true, partial_torus ? "partial-torus scaling" : "scaling-invariant"};

    if (d == 2) {
        if (p <= 3.0) return {0.0, true, false, "2 < p <= 3"};
        if (p < 4.0) return {2.0 / 3.0 - 2.0 / p, true, false, "3 < p < 4"};
        if (p == 4.0) return {1.0 / 6.0, false, false, "p = 4"};
        return {3.0 / 4.0 - 7.0 / (3.0 * p), true, false, "4 < p <= 20/3"};
    }
    if (d == 3) {
        if (p <= 8.0 / 3.0) return {0.0, true, false, "2 < p <= 8/3"};
        if (p <= 4.0) return {1.0 - 8.0 / (3.0 * p), true, false, "8/3 < p <= 4"};
        return {5.0 / 4.0 - 11.0 / (3.0 * p), true, false, "4 < p <= 16/3"};
    }
    if (d == 4) {
        if (p <= 5.0 / 2.0) return {0.0, true, false, "2 < p <= 5/2"};
        return {4.0 / 3.0 - 10.0 / (3.0 * p), true, false, "5/2 < p <= 4"};
    }
    // d >= 5
    double threshold = 2.0 * (d + 1.0) / d;
    if (p <= threshold) return {0.0, true, false, "2 < p <= 2(d+1)/d"};
    double v = (d / 4.0 - 0.5) * (2.0 * d / (d - 1.0) - 4.0 * (d + 1.0) / (p * (d - 1.0)));
    return {v, true, false, "2(d+1)/d < p < 4"};
}

}  // namespace stri
