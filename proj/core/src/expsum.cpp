#include "stri/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "stri/arith.hpp"
#include "stri/fft.hpp"
#include "stri/gauss_legendre.hpp"

namespace stri {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

double pow_abs2(double abs2, double p) {
    if (p == 2.0) return abs2;
    double h = p / 2.0;
    double hi = std::round(h);
    if (h == hi && hi >= 0 && hi <= 64) {
        double r = 1.0, b = abs2;
        auto e = static_cast<std::uint64_t>(hi);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    double fl = std::floor(h);
    if (h - fl == 0.5 && fl >= 0 && fl <= 64) {  // odd integer p
        double r = std::sqrt(abs2), b = abs2;
        auto e = static_cast<std::uint64_t>(fl);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    return abs2 > 0 ? std::pow(abs2, h) : 0.0;
}

std::complex<double> weyl_sum(std::int64_t N, double t) {
    std::complex<double> s = 0;
    for (std::int64_t n = 0; n <= N; ++n) {
        double ph = static_cast<double>(n) * static_cast<double>(n) * t;
        s += std::polar(1.0, kTau * (ph - std::floor(ph)));
    }
    return s;
}

std::vector<std::complex<double>> weyl_sum_grid(std::int64_t N, std::int64_t G) {
    if (G < 1) throw std::invalid_argument("weyl_sum_grid: G >= 1 required");
    std::vector<std::complex<double>> c(static_cast<std::size_t>(G), 0.0);
    for (std::int64_t n = 0; n <= N; ++n) {
        auto r = static_cast<std::int64_t>(static_cast<__int128>(n) * n % G);
        c[static_cast<std::size_t>(r)] += 1.0;
    }
    if (G > (std::int64_t(1) << 31))
        throw std::invalid_argument("weyl_sum_grid: grid too large");
    fft::transform({static_cast<int>(G)}, c.data(), +1);
    return c;
}

std::complex<double> quad_kernel(std::int64_t N, double theta, double x, double t) {
    std::complex<double> s = 0;
    for (std::int64_t n = -N; n <= N; ++n) {
        double ph = static_cast<double>(n) * x + theta * static_cast<double>(n) * static_cast<double>(n) * t;
        s += std::polar(1.0, kTau * (ph - std::floor(ph)));
    }
    return s;
}

std::complex<double> product_kernel(const QuadraticForm& form, std::int64_t N,
                                    std::span<const double> x, double t) {
    if (static_cast<int>(x.size()) != form.dim())
        throw std::invalid_argument("product_kernel: dimension mismatch");
    std::complex<double> p = 1.0;
    for (int j = 0; j < form.dim(); ++j)
        p *= quad_kernel(N, form.theta()[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)], t);
    return p;
}

std::complex<double> regularized_kernel(std::int64_t N, double x, double t) {
    if (N < 1) throw std::invalid_argument("regularized_kernel: N >= 1 required");
    std::complex<double> s = 0;
    for (std::int64_t n = -2 * N + 1; n <= 2 * N - 1; ++n) {
        double sigma = (std::llabs(n) <= N)
                           ? 1.0
                           : static_cast<double>(2 * N - std::llabs(n)) / static_cast<double>(N);
        double ph = static_cast<double>(n) * x + static_cast<double>(n) * static_cast<double>(n) * t;
        s += sigma * std::polar(1.0, kTau * (ph - std::floor(ph)));
    }
    return s;
}

std::complex<double> regularized_kernel_fejer(std::int64_t N, double x, double t) {
    if (N < 1) throw std::invalid_argument("regularized_kernel_fejer: N >= 1 required");
    std::complex<double> acc = 0;
    for (std::int64_t k = N; k <= 2 * N - 1; ++k) {
        std::complex<double> w = 0;
        for (std::int64_t n = -k; n <= k; ++n) {
            double ph = static_cast<double>(n) * x + static_cast<double>(n) * static_cast<double>(n) * t;
            w += std::polar(1.0, kTau * (ph - std::floor(ph)));
        }
        acc += w;
    }
    return acc / static_cast<double>(N);
}

WeylBoundFit weyl_bound_check(std::int64_t N, std::int64_t sample_count, std::uint64_t seed,
                              std::int64_t x_grid) {
    if (N < 1) throw std::invalid_argument("weyl_bound_check: N >= 1 required");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    WeylBoundFit fit;
    for (std::int64_t s = 0; s < sample_count; ++s) {
        double t = unif(rng);
        RationalApprox r = dirichlet_approx(t, N);
        if (r.den > N) continue;  // Dirichlet guarantees this; belt and suspenders
        double factor = std::sqrt(static_cast<double>(r.den)) *
                        (1.0 + static_cast<double>(N) * std::sqrt(r.err)) / static_cast<double>(N);
        for (std::int64_t i = 0; i < x_grid; ++i) {
            double x = static_cast<double>(i) / static_cast<double>(x_grid);
            fit.constant = std::max(fit.constant, std::abs(regularized_kernel(N, x, t)) * factor);
        }
        ++fit.samples;
    }
    return fit;
}

double bump_eta(double u) {
    // support [1/200, 1/100]; s maps it onto (-1, 1)
    double s = (u - 0.0075) / 0.0025;
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_eta_cos_transform(double xi) {
    double maxfreq = std::abs(xi);
    auto f = [xi](double u) { return bump_eta(u) * std::cos(kTau * xi * u); };
    return 2.0 * integrate_oscillatory(0.005, 0.01, maxfreq, f);
}

double phi_bump(std::int64_t M, double t) {
    if (M < 1) throw std::invalid_argument("phi_bump: M >= 1 required");
    double total = 0;
    for (std::int64_t q = M; q < 2 * M; ++q) {
        double q2 = static_cast<double>(q) * static_cast<double>(q);
        for (std::int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            double arg = q2 * dist_to_integer(t - static_cast<double>(a) / static_cast<double>(q));
            if (arg < 0.01) total += bump_eta(arg);
        }
    }
    return total;
}

double phi_fourier(std::int64_t M, std::int64_t k) {
    if (M < 1) throw std::invalid_argument("phi_fourier: M >= 1 required");
    double total = 0;
    for (std::int64_t q = M; q < 2 * M; ++q) {
        double q2 = static_cast<double>(q) * static_cast<double>(q);
        total += ramanujan_sum(q, k) / q2 * bump_eta_cos_transform(static_cast<double>(k) / q2);
    }
    return total;
}

std::uint64_t even_moment_exact(std::int64_t N, int m) {
    if (N < 0 || m < 1) throw std::invalid_argument("even_moment_exact: N >= 0, m >= 1 required");
    auto count = static_cast<std::uint64_t>(N) + 1;
    if (m == 1) return count;  // Parseval

    unsigned __int128 total = 0;
    if (m == 2) {
        // pair-sum histogram, chunked so N up to ~10^4 stays in bounded memory
        std::int64_t top = 2 * N * N;
        const std::int64_t chunk = std::int64_t(1) << 24;
        std::vector<std::uint32_t> h;
        for (std::int64_t lo = 0; lo <= top; lo += chunk) {
            std::int64_t hi = std::min(lo + chunk, top + 1);
            h.assign(static_cast<std::size_t>(hi - lo), 0);
            for (std::int64_t a = 0; a <= N; ++a) {
                std::int64_t a2 = a * a;
                if (a2 > hi - 1) break;
                std::int64_t b = 0;
                if (a2 < lo) {
                    b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(lo - a2)));
                    while (b > 0 && b * b >= lo - a2) --b;
                    while (b * b < lo - a2) ++b;
                }
                for (; b <= N && a2 + b * b < hi; ++b) ++h[static_cast<std::size_t>(a2 + b * b - lo)];
            }
            for (std::uint32_t c : h) total += static_cast<unsigned __int128>(c) * c;
        }
    } else {
        std::int64_t top = static_cast<std::int64_t>(m) * N * N;
        if (top + 1 > (std::int64_t(1) << 27))
            throw std::invalid_argument("even_moment_exact: m N^2 exceeds the counting table");
        std::vector<std::uint64_t> h(static_cast<std::size_t>(top) + 1, 0), nx;
        for (std::int64_t a = 0; a <= N; ++a) ++h[static_cast<std::size_t>(a * a)];
        for (int j = 1; j < m; ++j) {
            nx.assign(h.size(), 0);
            for (std::int64_t v = 0; v <= static_cast<std::int64_t>(j) * N * N; ++v) {
                std::uint64_t c = h[static_cast<std::size_t>(v)];
                if (!c) continue;
                for (std::int64_t a = 0; a <= N; ++a) {
                    std::uint64_t& slot = nx[static_cast<std::size_t>(v + a * a)];
                    std::uint64_t prev = slot;
                    slot += c;
                    if (slot < prev) throw std::overflow_error("even_moment_exact: count overflow");
                }
            }
            h.swap(nx);
        }
        for (std::uint64_t c : h) total += static_cast<unsigned __int128>(c) * c;
    }
    if (total > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("even_moment_exact: moment exceeds 64-bit range");
    return static_cast<std::uint64_t>(total);
}

MomentResult moment_quadrature(std::int64_t N, double r, std::int64_t grid_points) {
    if (!(r > 0)) throw std::invalid_argument("moment_quadrature: r > 0 required");
    if (grid_points < 1) throw std::invalid_argument("moment_quadrature: grid_points >= 1 required");
    MomentResult out;
    out.N = N;
    out.r = r;
    out.under_resolved = grid_points < 64 * N * N;
    auto grid = weyl_sum_grid(N, grid_points);
    double acc = 0;
    for (const auto& z : grid) acc += pow_abs2(std::norm(z), r);
    out.value = acc / static_cast<double>(grid_points);
    out.normalized = out.value / std::pow(static_cast<double>(std::max<std::int64_t>(N, 1)), r - 2.0);
    return out;
}

}  // namespace stri
