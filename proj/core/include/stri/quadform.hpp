#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stri {

// Weighted quadratic form Q(n) = sum_j theta_j n_j^2 with 1/C <= theta_j <= C.
// theta is stored as doubles; when every component is exactly a small
// rational p/q the form also keeps an integer representation so shell
// membership tests can run in exact arithmetic.
class QuadraticForm {
public:
    QuadraticForm(std::vector<double> theta, std::vector<std::string> tags = {});

    int dim() const { return static_cast<int>(theta_.size()); }
    const std::vector<double>& theta() const { return theta_; }
    const std::vector<std::string>& tags() const { return tags_; }
    double comparability() const { return bound_; }  // the C in 1/C <= theta_j <= C
    bool rational() const { return !weights_.empty(); }

    // eval_Q
    double operator()(std::span<const std::int64_t> n) const;

    // Q(n) * common_denominator(), exact; only valid when rational()
    std::int64_t eval_scaled(std::span<const std::int64_t> n) const;
    std::int64_t common_denominator() const { return denom_; }

    // theta-weighted dot product  a .theta. n = sum theta_j a_j n_j
    double dot(std::span<const double> a, std::span<const std::int64_t> n) const;

    double max_q(std::int64_t N) const;  // d * max(theta) * N^2 upper bound

private:
    std::vector<double> theta_;
    std::vector<std::string> tags_;
    double bound_;
    std::vector<std::int64_t> weights_;  // theta_j * denom_, when exact
    std::int64_t denom_ = 0;
};

// Frequency box S_N = { n in Z^d : |n_j| <= N }, with a fixed lexicographic
// enumeration (first coordinate slowest).
struct FreqBox {
    int d = 1;
    std::int64_t radius = 0;

    std::int64_t side() const { return 2 * radius + 1; }
    std::int64_t size() const;
    void decode(std::int64_t index, std::span<std::int64_t> n) const;
    std::int64_t index_of(std::span<const std::int64_t> n) const;
    bool contains(std::span<const std::int64_t> n) const;
};

// Dyadic annulus (Littlewood-Paley block), cube with given center, or a
// theta-weighted strip; strips produced by strip_partition also carry their
// parent cube so that they are honest subsets of it.
struct FreqRegion {
    enum class Kind { DyadicAnnulus, Cube, Strip };
    Kind kind = Kind::Cube;

    std::int64_t annulus_radius = 0;

    std::vector<std::int64_t> center;
    std::int64_t half_side = 0;

    // strip: |a .theta. n - offset| <= halfwidth, a the Euclidean-normalized
    // cube center.  Partition strips use a half-open upper edge so that bins
    // never double-count a lattice point.
    std::vector<double> normal;
    double offset = 0;
    double halfwidth = 0;
    bool upper_open = false;
    bool has_cube = false;  // strip constrained to the cube fields above

    bool contains(const QuadraticForm& form, std::span<const std::int64_t> n) const;

    static FreqRegion annulus(std::int64_t N);
    static FreqRegion cube(std::vector<std::int64_t> center, std::int64_t half_side);
};

struct ShellScan {
    std::int64_t count = 0;
    std::int64_t boundary_hits = 0;  // |Q - l| within 1e-12 of 1 (inexact mode)
};

// |A_l| = #{ n in S_N : |Q(n) - l| <= 1 } by exhaustive enumeration.
ShellScan shell_count_detail(const QuadraticForm& form, double ell, std::int64_t N);
std::int64_t shell_count(const QuadraticForm& form, double ell, std::int64_t N);

// sum over integer l in [-1, ceil(max Q)+1] of |A_l|^s
double shell_moment(const QuadraticForm& form, std::int64_t N, double s);

// Histogram |A_l| for integer l over the standard scan range; index 0 <-> l = -1.
std::vector<std::int64_t> shell_histogram(const QuadraticForm& form, std::int64_t N);

// Partition a cube into theta-weighted strips of width M (in the normalized
// projection n .theta. n0 / |n0|), normal to the cube center.  Bins are
// anchored at the minimal projection over the cube so that M larger than the
// projection spread yields a single strip.
std::vector<FreqRegion> strip_partition(const QuadraticForm& form, const FreqRegion& cube,
                                        std::int64_t M);

}  // namespace stri
