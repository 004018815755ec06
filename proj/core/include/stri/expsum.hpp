#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "stri/quadform.hpp"

namespace stri {

// F(t) = sum_{0 <= n <= N} e^{2 pi i n^2 t}
std::complex<double> weyl_sum(std::int64_t N, double t);

// F on the uniform grid t_j = j/G, j = 0..G-1, via an FFT of the histogram
// of n^2 mod G.  Exact up to roundoff for any G.
std::vector<std::complex<double>> weyl_sum_grid(std::int64_t N, std::int64_t G);

// R_theta(x, t) = sum_{|n| <= N} e^{2 pi i (n x + theta n^2 t)}
std::complex<double> quad_kernel(std::int64_t N, double theta, double x, double t);

// product kernel over the box S_N: prod_j R_{theta_j}(x_j, t)
std::complex<double> product_kernel(const QuadraticForm& form, std::int64_t N,
                                    std::span<const double> x, double t);

// K(x, t) = sum_n sigma_n e^{2 pi i (n x + n^2 t)} with the trapezoidal
// taper sigma: 1 on [-N, N], linear down to 0 at |n| = 2N.
std::complex<double> regularized_kernel(std::int64_t N, double x, double t);
// same K through the average (1/N) sum_{k=N}^{2N-1} W_k of Weyl kernels
std::complex<double> regularized_kernel_fejer(std::int64_t N, double x, double t);

struct WeylBoundFit {
    double constant = 0;   // max of |K| q^{1/2} (1 + N ||t-a/q||^{1/2}) / N
    std::int64_t samples = 0;
};

// Empirical constant of the major-arc kernel bound, sampled at Dirichlet
// times (q <= N, ||t - a/q|| <= 1/(qN)) and an x-grid.
WeylBoundFit weyl_bound_check(std::int64_t N, std::int64_t sample_count, std::uint64_t seed,
                              std::int64_t x_grid = 96);

// the fixed smooth bump: exp(1 - 1/(1-s^2)) rescaled to [1/200, 1/100], peak 1
double bump_eta(double u);
// 2 * integral eta(u) cos(2 pi xi u) du  (the real Fourier transform used in phi_fourier)
double bump_eta_cos_transform(double xi);

// Phi(t) = sum_{M <= q < 2M} sum_{a in J_q} eta(q^2 || t - a/q ||)
double phi_bump(std::int64_t M, double t);
// closed form: Phi^(k) = sum_{M <= q < 2M} q^{-2} c_q(k) eta^(k/q^2)
double phi_fourier(std::int64_t M, std::int64_t k);

// integral over [0,1] of |F|^{2m}, exactly, as the number of solutions of
// n_1^2+...+n_m^2 = n_{m+1}^2+...+n_{2m}^2 with 0 <= n_i <= N
std::uint64_t even_moment_exact(std::int64_t N, int m);

struct MomentResult {
    std::int64_t N = 0;
    double r = 0;
    double value = 0;
    double normalized = 0;  // value / N^{r-2}
    const char* method = "quadrature";
    bool under_resolved = false;  // grid below the 64 N^2 policy
};

// uniform-grid estimate of integral |F|^r over [0,1]; exact for even r once
// grid_points > (r/2) N^2
MomentResult moment_quadrature(std::int64_t N, double r, std::int64_t grid_points);

// |f|^p accumulated from |f|^2, with integer-exponent fast paths
double pow_abs2(double abs2, double p);

}  // namespace stri
