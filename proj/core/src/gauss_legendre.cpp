#include "stri/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace stri {

namespace {

std::vector<QuadNode> build(int n) {
    std::vector<QuadNode> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            // recurrence for P_n(x) and P'_n(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = {-x, w};
        nodes[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    return nodes;
}

}  // namespace

const std::vector<QuadNode>& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    static std::mutex m;
    static std::map<int, std::vector<QuadNode>> cache;
    std::lock_guard<std::mutex> lk(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build(n)).first;
    return it->second;
}

double integrate_oscillatory(double a, double b, double max_freq,
                             const std::function<double(double)>& f) {
    if (b <= a) return 0.0;
    const int rule = 16;
    // ~5 nodes per oscillation keeps a 16-point panel in its spectral regime
    double periods = std::abs(max_freq) * (b - a);
    std::int64_t panels = std::max<std::int64_t>(1, static_cast<std::int64_t>(periods / 3.0) + 1);
    const auto& nodes = gauss_legendre(rule);
    double h = (b - a) / static_cast<double>(panels);
    double acc = 0.0;
    for (std::int64_t p = 0; p < panels; ++p) {
        double lo = a + static_cast<double>(p) * h;
        double mid = lo + h / 2, half = h / 2;
        double local = 0.0;
        for (const auto& nd : nodes) local += nd.w * f(mid + half * nd.x);
        acc += local * half;
    }
    return acc;
}

}  // namespace stri
