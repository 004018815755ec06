#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stri/quadform.hpp"

namespace stri {

using Complex = std::complex<double>;

// Band-limited datum: Fourier coefficients c_n on a frequency box, in the
// box's enumeration order.
struct BandLimitedField {
    FreqBox box;
    std::vector<Complex> coeffs;

    double l2norm() const;
    BandLimitedField& normalize();  // scale to unit l2
};

BandLimitedField make_all_ones(const FreqBox& box);
BandLimitedField make_single_mode(const FreqBox& box, std::span<const std::int64_t> n0,
                                  Complex amplitude = 1.0);
BandLimitedField make_gaussian_random(const FreqBox& box, std::uint64_t seed);  // unit l2
BandLimitedField make_explicit(const FreqBox& box, std::vector<Complex> coeffs);

// Uniform periodic sampling of I x T^d.  points_per_axis is the spatial grid
// P (P >= 4N+1 under the default policy P = 4(2N+1)); the time rule is the
// closed trapezoid with time_samples points on [t0, t1] and samples
// oversampled against the fastest phase C N^2 |I| by `time_oversample`.
struct SpaceTimeGrid {
    std::int64_t points_per_axis = 1;
    double t0 = 0.0, t1 = 1.0;
    std::int64_t time_samples = 2;

    static SpaceTimeGrid standard(const QuadraticForm& form, const FreqBox& box, double t0 = 0.0,
                                  double t1 = 1.0, std::int64_t spatial_oversample = 4,
                                  std::int64_t time_oversample = 64);

    double interval() const { return t1 - t0; }
    double time(std::int64_t i) const;
    double weight(std::int64_t i) const;  // trapezoid weight, sums to |I|
};

// Streaming evaluator of u(., t_i) = sum_n c_n e^{2 pi i (n.x + Q(n) t_i)}
// on the P^d spatial grid, one time slice at a time (inverse FFT per slice).
class FlowSampler {
public:
    FlowSampler(const QuadraticForm& form, const BandLimitedField& field, const SpaceTimeGrid& grid);

    std::int64_t slices() const { return grid_.time_samples; }
    std::int64_t slice_size() const { return grid_size_; }
    const SpaceTimeGrid& grid() const { return grid_; }
    int dim() const { return d_; }

    // fills out (slice_size elements) with u(., t_i); thread-safe across i
    void evaluate(std::int64_t i, std::span<Complex> out) const;

private:
    SpaceTimeGrid grid_;
    int d_;
    std::int64_t grid_size_;
    std::vector<int> dims_;
    std::vector<Complex> coeffs_;
    std::vector<double> qvals_;
    std::vector<std::int64_t> positions_;
};

// Materialized space-time samples (small problems; guarded against blowup).
struct SpaceTimeField {
    SpaceTimeGrid grid;
    int d = 1;
    std::int64_t points_per_axis = 1;
    std::vector<std::vector<Complex>> slices;  // slices[i][spatial index]
};

SpaceTimeField propagate_eval(const QuadraticForm& form, const BandLimitedField& field,
                              const SpaceTimeGrid& grid);

// L^p(I x T^d) with unit torus volume; p = infinity returns the grid max
double spacetime_norm(const SpaceTimeField& samples, double p);
double spacetime_norm(const QuadraticForm& form, const BandLimitedField& field,
                      const SpaceTimeGrid& grid, double p, int workers = 0);

struct LevelSetProfile {
    std::vector<double> lambdas;
    std::vector<double> measures;  // space-time measure of {|u| > lambda}
};

LevelSetProfile level_set_profile(const SpaceTimeField& samples, std::vector<double> lambdas);
LevelSetProfile level_set_profile(const QuadraticForm& form, const BandLimitedField& field,
                                  const SpaceTimeGrid& grid, std::vector<double> lambdas,
                                  int workers = 0);

struct BernsteinResult {
    double ratio = 0;        // grid Linf / ((2N+1)^{d/2} l2norm)
    double grid_linf = 0;
    double refined_linf = 0;  // one-step parabolic refinement, reported separately
};

BernsteinResult bernstein_check(const QuadraticForm& form, const BandLimitedField& field,
                                const SpaceTimeGrid& grid);

// textual field format: one row per coefficient, "n_1 ... n_d re im"
void save_field(const std::filesystem::path& path, const BandLimitedField& field);
BandLimitedField load_field(const std::filesystem::path& path);

}  // namespace stri
