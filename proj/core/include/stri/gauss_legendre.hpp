#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace stri {

struct QuadNode {
    double x;
    double w;
};

// Gauss-Legendre nodes/weights on [-1, 1], by Newton iteration on P_n.
const std::vector<QuadNode>& gauss_legendre(int n);

// Composite Gauss-Legendre over [a, b] sized for trigonometric integrands:
// `max_freq` is the largest |omega| in e^{2 pi i omega t} appearing in the
// integrand.  Panels are chosen so a 16-point rule resolves each.
double integrate_oscillatory(double a, double b, double max_freq,
                             const std::function<double(double)>& f);

}  // namespace stri
