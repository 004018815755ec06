#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stri/field.hpp"
#include "stri/quadform.hpp"

namespace stri {

struct ExponentFit {
    std::vector<std::pair<double, double>> points;  // (N, value)
    double slope = 0;
    double intercept = 0;    // of log(value) against log(N)
    double residual = 0;     // RMS of the log-log fit
    double predicted = 0;    // NaN when no prediction applies
    double tolerance = 0;
    bool pass = false;       // |slope - predicted| <= tolerance (when both set)
};

// ordinary least squares on (log N, log value); throws on nonpositive values
ExponentFit exponent_fit(std::span<const std::pair<double, double>> points,
                         double predicted = std::numeric_limits<double>::quiet_NaN(),
                         double tolerance = std::numeric_limits<double>::quiet_NaN());

// ||e^{-it Delta} f||_{L^p(I x T^d)} / ||f||_{l^2}
double strichartz_quotient(const QuadraticForm& form, const BandLimitedField& field, double p,
                           const SpaceTimeGrid& grid, int workers = 0);

struct ExtremizerOptions {
    int iterations = 40;
    int restarts = 8;
    std::uint64_t seed = 1;
    int max_backtracks = 8;
};

struct ExtremizerResult {
    BandLimitedField field;
    double quotient = 0;
    bool converged = false;
    std::vector<double> history;  // accepted quotients, nondecreasing
};

// Nonlinear power ascent for the discretized best constant: fixed-point
// replacement c <- normalize(A*(w |u|^{p-2} u)) with backtracking halving
// toward the previous iterate on non-improvement.
ExtremizerResult extremizer_search(const QuadraticForm& form, const FreqBox& box, double p,
                                   const SpaceTimeGrid& grid, const ExtremizerOptions& opts = {});

struct KnpRow {
    std::int64_t N = 0;
    std::string family;
    std::uint64_t seed = 0;
    double quotient = 0;
};

struct KnpSweepResult {
    std::vector<KnpRow> rows;
    std::map<std::string, ExponentFit> per_family;  // family -> fit of its per-N max
    ExponentFit combined;                           // fit of max over families
};

struct KnpOptions {
    std::vector<std::string> families = {"all-ones", "gaussian-random"};  // + "extremizer"
    int random_seeds = 4;
    std::uint64_t seed_base = 1;
    std::int64_t spatial_oversample = 4;
    std::int64_t time_oversample = 64;
    bool partial_torus = false;  // use the partial-torus exponent table entry
    int workers = 0;
    ExtremizerOptions extremizer;
};

KnpSweepResult knp_sweep(const QuadraticForm& form, double p, std::span<const std::int64_t> Ns,
                         const KnpOptions& opts = {});

struct MultilinearResult {
    double lhs = 0;              // || prod_j u_j ||_{L^2(I x T^d)}
    double rhs_subcritical = 0;  // N_max^{-s} prod N_j^s prod ||phi_j||_2
    double rhs_critical = 0;     // (N_{k+1}/N_1 + 1/N_2)^delta ||phi_1|| prod_{j>=2} N_j^{s_c} ||phi_j||
    double s = 0;
    double delta = 0;
};

// admissible-midpoint default for the critical-gain exponent delta
double default_delta(int d, int k, bool partial_torus = false);

MultilinearResult multilinear_quotient(const QuadraticForm& form,
                                       std::span<const BandLimitedField> fields, double s,
                                       std::optional<double> delta = std::nullopt,
                                       std::int64_t time_oversample = 16, int workers = 0);

// Exact frequency-side L^2(I x T^d) norm of a product of propagated fields
// (pair summation over matched spatial output frequencies).  Small supports
// only: cost is quadratic in the per-frequency tuple counts.
double exact_product_l2(const QuadraticForm& form, std::span<const BandLimitedField> fields,
                        double t0 = 0.0, double t1 = 1.0);

struct StripOrthogonality {
    double lhs_sq = 0;        // || P_C u_1 u_2 ||^2
    double strip_sum_sq = 0;  // sum_l || P_{R_l} u_1 u_2 ||^2
    double ratio = 0;
    double tail_bound = 0;    // certified bound on the omitted window tail
    int strips = 0;
};

// Almost-orthogonality of the strip decomposition: u_1 lives on the cube,
// u_2 on S_{N2}; both sides are exact frequency-pair sums, with pairs beyond
// `window` in time-frequency separation dropped (their total is bounded and
// reported in tail_bound).  window <= 0 means no cut.
StripOrthogonality strip_orthogonality_check(const QuadraticForm& form, std::int64_t N1,
                                             std::int64_t N2, const FreqRegion& cube,
                                             const BandLimitedField& field_on_cube,
                                             const BandLimitedField& field2,
                                             double window = 64.0);

struct HausdorffYoungResult {
    double lhs = 0;  // || F_a ||_{L^p([-1,1])}
    double rhs = 0;  // bucketed l^{p'} sum
    double ratio = 0;
};

HausdorffYoungResult hausdorff_young_check(const QuadraticForm& form,
                                           const BandLimitedField& coeffs,
                                           std::span<const std::int64_t> a, double p);

// Space-time test function sum_{n, j} a_{n j} e^{2 pi i (n.x + j t)} on I x T^2.
struct SpaceTimeTestFn {
    FreqBox box;               // spatial frequencies
    std::int64_t time_modes = 0;  // |j| <= time_modes
    std::vector<Complex> coeffs;  // indexed (box index) * (2J+1) + (j + J)

    static SpaceTimeTestFn random(const FreqBox& box, std::int64_t time_modes, std::uint64_t seed);
    Complex coefficient(std::int64_t box_index, std::int64_t j) const;
};

struct DualKernelResult {
    double lhsum = 0;              // sum_n |g^(n, Q(n))|^2
    double bound = 0;              // ||R||_{L^{p/2}(2I x T^2)} ||f||_{p'}^2
    double identity_residual = 0;  // relative gap of the convolution identity
};

// Both sides of sum |f^(n, Q(n))|^2 = <R * 1_I f, 1_I f> on the same grid:
// the left by direct space-time summation, the right through the kernel
// convolution, plus the Hoelder bound.  d = 2 only.
DualKernelResult dual_kernel_check(const QuadraticForm& form, const SpaceTimeTestFn& f, double p,
                                   const SpaceTimeGrid& grid);

}  // namespace stri
