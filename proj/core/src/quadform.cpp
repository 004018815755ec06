#include "stri/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stri {

namespace {

constexpr double kMembershipTol = 1e-12;

// Exact small-rational detection: theta == p/q as a double, q <= 4096.
std::optional<std::pair<std::int64_t, std::int64_t>> as_rational(double x) {
    for (std::int64_t q = 1; q <= 4096; ++q) {
        double scaled = x * static_cast<double>(q);
        double r = std::round(scaled);
        if (scaled == r && r / static_cast<double>(q) == x) {
            std::int64_t p = static_cast<std::int64_t>(r);
            std::int64_t g = std::gcd(p, q);
            return std::make_pair(p / g, q / g);
        }
    }
    return std::nullopt;
}

}  // namespace

QuadraticForm::QuadraticForm(std::vector<double> theta, std::vector<std::string> tags)
    : theta_(std::move(theta)), tags_(std::move(tags)) {
    if (theta_.empty()) throw std::invalid_argument("QuadraticForm: dimension >= 1 required");
    double lo = theta_[0], hi = theta_[0];
    for (double t : theta_) {
        if (!(t > 0)) throw std::invalid_argument("QuadraticForm: theta_j > 0 required");
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    bound_ = std::max(hi, 1.0 / lo);
    if (!tags_.empty() && tags_.size() != theta_.size())
        throw std::invalid_argument("QuadraticForm: tag count mismatch");

    std::vector<std::pair<std::int64_t, std::int64_t>> rats;
    for (double t : theta_) {
        auto r = as_rational(t);
        if (!r) return;  // irrational mode
        rats.push_back(*r);
    }
    std::int64_t l = 1;
    for (auto& [p, q] : rats) l = std::lcm(l, q);
    denom_ = l;
    for (auto& [p, q] : rats) weights_.push_back(p * (l / q));
}

double QuadraticForm::operator()(std::span<const std::int64_t> n) const {
    if (static_cast<int>(n.size()) != dim())
        throw std::invalid_argument("eval_Q: dimension mismatch");
    double q = 0;
    for (int j = 0; j < dim(); ++j) {
        double nj = static_cast<double>(n[j]);
        q += theta_[static_cast<std::size_t>(j)] * nj * nj;
    }
    return q;
}

std::int64_t QuadraticForm::eval_scaled(std::span<const std::int64_t> n) const {
    std::int64_t q = 0;
    for (int j = 0; j < dim(); ++j) q += weights_[static_cast<std::size_t>(j)] * n[j] * n[j];
    return q;
}

double QuadraticForm::dot(std::span<const double> a, std::span<const std::int64_t> n) const {
    if (a.size() != n.size() || static_cast<int>(a.size()) != dim())
        throw std::invalid_argument("theta-dot: dimension mismatch");
    double s = 0;
    for (int j = 0; j < dim(); ++j)
        s += theta_[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(j)] *
             static_cast<double>(n[static_cast<std::size_t>(j)]);
    return s;
}

double QuadraticForm::max_q(std::int64_t N) const {
    double m = 0;
    for (double t : theta_) m += t;
    return m * static_cast<double>(N) * static_cast<double>(N);
}

std::int64_t FreqBox::size() const {
    std::int64_t s = 1;
    for (int j = 0; j < d; ++j) s *= side();
    return s;
}

void FreqBox::decode(std::int64_t index, std::span<std::int64_t> n) const {
    std::int64_t b = side();
    for (int j = d - 1; j >= 0; --j) {
        n[static_cast<std::size_t>(j)] = index % b - radius;
        index /= b;
    }
}

std::int64_t FreqBox::index_of(std::span<const std::int64_t> n) const {
    std::int64_t b = side(), idx = 0;
    for (int j = 0; j < d; ++j) {
        std::int64_t c = n[static_cast<std::size_t>(j)] + radius;
        if (c < 0 || c >= b) throw std::out_of_range("FreqBox: point outside box");
        idx = idx * b + c;
    }
    return idx;
}

bool FreqBox::contains(std::span<const std::int64_t> n) const {
    for (auto v : n)
        if (std::llabs(v) > radius) return false;
    return true;
}

FreqRegion FreqRegion::annulus(std::int64_t N) {
    FreqRegion r;
    r.kind = Kind::DyadicAnnulus;
    r.annulus_radius = N;
    return r;
}

FreqRegion FreqRegion::cube(std::vector<std::int64_t> center, std::int64_t half_side) {
    FreqRegion r;
    r.kind = Kind::Cube;
    r.center = std::move(center);
    r.half_side = half_side;
    return r;
}

bool FreqRegion::contains(const QuadraticForm& form, std::span<const std::int64_t> n) const {
    switch (kind) {
        case Kind::DyadicAnnulus: {
            std::int64_t m = 0;
            for (auto v : n) m = std::max(m, std::llabs(v));
            if (annulus_radius <= 1) return m <= annulus_radius;
            return 2 * m > annulus_radius && m <= annulus_radius;
        }
        case Kind::Cube: {
            for (std::size_t j = 0; j < center.size(); ++j)
                if (std::llabs(n[j] - center[j]) > half_side) return false;
            return true;
        }
        case Kind::Strip: {
            if (has_cube) {
                for (std::size_t j = 0; j < center.size(); ++j)
                    if (std::llabs(n[j] - center[j]) > half_side) return false;
            }
            double p = form.dot(normal, n) - offset;
            if (upper_open) return p >= -halfwidth && p < halfwidth;
            return std::abs(p) <= halfwidth;
        }
    }
    return false;
}

ShellScan shell_count_detail(const QuadraticForm& form, double ell, std::int64_t N) {
    if (N < 0) throw std::invalid_argument("shell_count: N >= 0 required");
    FreqBox box{form.dim(), N};
    ShellScan out;
    std::vector<std::int64_t> n(static_cast<std::size_t>(form.dim()));

    if (form.rational() && ell == std::floor(ell) && std::abs(ell) < 4e18 / form.common_denominator()) {
        std::int64_t L = form.common_denominator();
        std::int64_t target = static_cast<std::int64_t>(ell) * L;
        for (std::int64_t i = 0; i < box.size(); ++i) {
            box.decode(i, n);
            std::int64_t q = form.eval_scaled(n);
            if (std::llabs(q - target) <= L) ++out.count;
        }
        return out;
    }
    for (std::int64_t i = 0; i < box.size(); ++i) {
        box.decode(i, n);
        double dev = std::abs(form(n) - ell);
        if (dev <= 1.0 + kMembershipTol) ++out.count;
        if (std::abs(dev - 1.0) <= kMembershipTol) ++out.boundary_hits;
    }
    return out;
}

std::int64_t shell_count(const QuadraticForm& form, double ell, std::int64_t N) {
    return shell_count_detail(form, ell, N).count;
}

std::vector<std::int64_t> shell_histogram(const QuadraticForm& form, std::int64_t N) {
    std::int64_t lmax = static_cast<std::int64_t>(std::ceil(form.max_q(N))) + 1;
    std::vector<std::int64_t> hist(static_cast<std::size_t>(lmax + 2), 0);  // l = -1 .. lmax
    FreqBox box{form.dim(), N};
    std::vector<std::int64_t> n(static_cast<std::size_t>(form.dim()));
    for (std::int64_t i = 0; i < box.size(); ++i) {
        box.decode(i, n);
        double q = form(n);
        auto lo = static_cast<std::int64_t>(std::ceil(q - 1.0 - kMembershipTol));
        auto hi = static_cast<std::int64_t>(std::floor(q + 1.0 + kMembershipTol));
        lo = std::max<std::int64_t>(lo, -1);
        hi = std::min<std::int64_t>(hi, lmax);
        for (std::int64_t l = lo; l <= hi; ++l) ++hist[static_cast<std::size_t>(l + 1)];
    }
    return hist;
}

double shell_moment(const QuadraticForm& form, std::int64_t N, double s) {
    if (!(s >= 1) || !std::isfinite(s)) throw std::invalid_argument("shell_moment: s >= 1 required");
    auto hist = shell_histogram(form, N);
    double total = 0;
    for (std::int64_t c : hist) {
        if (c == 0) continue;
        if (s == 1.0)
            total += static_cast<double>(c);
        else if (s == 2.0)
            total += static_cast<double>(c) * static_cast<double>(c);
        else
            total += std::pow(static_cast<double>(c), s);
    }
    return total;
}

std::vector<FreqRegion> strip_partition(const QuadraticForm& form, const FreqRegion& cube,
                                        std::int64_t M) {
    if (cube.kind != FreqRegion::Kind::Cube)
        throw std::invalid_argument("strip_partition: cube region required");
    if (M < 1) throw std::invalid_argument("strip_partition: M >= 1 required");
    const auto& c = cube.center;
    double norm2 = 0;
    for (auto v : c) norm2 += static_cast<double>(v) * static_cast<double>(v);
    if (norm2 == 0) throw std::invalid_argument("strip_partition: zero cube center");
    double norm = std::sqrt(norm2);

    std::vector<double> a(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) a[j] = static_cast<double>(c[j]) / norm;

    // bins are anchored at the actual minimum of the normalized projection so
    // that the anchor is consistent, to the bit, with the membership test
    int d = form.dim();
    std::vector<std::int64_t> n(static_cast<std::size_t>(d));
    std::int64_t side = 2 * cube.half_side + 1, total = 1;
    for (int j = 0; j < d; ++j) total *= side;
    auto decode_cube = [&](std::int64_t i) {
        std::int64_t r = i;
        for (int j = d - 1; j >= 0; --j) {
            n[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)] + r % side - cube.half_side;
            r /= side;
        }
    };
    double pmin = 0, pmax = 0;
    for (std::int64_t i = 0; i < total; ++i) {
        decode_cube(i);
        double p = form.dot(a, n);
        if (i == 0) pmin = pmax = p;
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
    }

    std::int64_t bins = static_cast<std::int64_t>(std::floor((pmax - pmin) / static_cast<double>(M))) + 1;
    std::vector<char> occupied(static_cast<std::size_t>(bins), 0);
    for (std::int64_t i = 0; i < total; ++i) {
        decode_cube(i);
        double p = form.dot(a, n);
        auto b = static_cast<std::int64_t>(std::floor((p - pmin) / static_cast<double>(M)));
        b = std::clamp<std::int64_t>(b, 0, bins - 1);
        occupied[static_cast<std::size_t>(b)] = 1;
    }

    std::vector<FreqRegion> strips;
    for (std::int64_t b = 0; b < bins; ++b) {
        if (!occupied[static_cast<std::size_t>(b)]) continue;
        FreqRegion s;
        s.kind = FreqRegion::Kind::Strip;
        s.center = cube.center;
        s.half_side = cube.half_side;
        s.has_cube = true;
        s.normal = a;
        s.halfwidth = static_cast<double>(M) / 2.0;
        s.offset = pmin + (static_cast<double>(b) + 0.5) * static_cast<double>(M);
        s.upper_open = (b + 1 < bins);  // last bin keeps its top edge
        strips.push_back(std::move(s));
    }
    return strips;
}

}  // namespace stri
