#include "stri/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stri/arith.hpp"
#include "stri/expsum.hpp"

namespace stri {

std::int64_t ArcDecomposition::dirichlet_qmax() const {
    return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(N), 2.0 - eps)));
}

MinorLabel ArcDecomposition::minor_label(double t) const {
    RationalApprox r = dirichlet_approx(t, dirichlet_qmax());
    double thresh = std::pow(static_cast<double>(N), eps);
    if (static_cast<double>(r.den) <= thresh) return MinorLabel::M1;
    if (r.den > N) return MinorLabel::M2;
    return MinorLabel::Gap;
}

ArcDecomposition build_arcs(std::int64_t N, double eps) {
    if (N < 1) throw std::invalid_argument("build_arcs: N >= 1 required");
    if (!(eps > 0 && eps < 0.5)) throw std::invalid_argument("build_arcs: eps in (0, 1/2) required");
    ArcDecomposition arcs;
    arcs.N = N;
    arcs.eps = eps;
    double hw = 1.0 / (100.0 * static_cast<double>(N) * static_cast<double>(N));
    for (std::int64_t q = 1; q <= N; ++q)
        for (std::int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            arcs.majors.push_back({q, a, static_cast<double>(a) / static_cast<double>(q), hw});
        }
    arcs.major_measure = 2.0 * hw * static_cast<double>(arcs.majors.size());
    arcs.minor_measure = 1.0 - arcs.major_measure;
    return arcs;
}

ArcMoments arc_moments(std::int64_t N, double r, std::int64_t grid_points, double eps) {
    if (!(r > 0)) throw std::invalid_argument("arc_moments: r > 0 required");
    ArcDecomposition arcs = build_arcs(N, eps);
    double hw = 1.0 / (100.0 * static_cast<double>(N) * static_cast<double>(N));
    ArcMoments out;
    out.grid_points = grid_points;
    out.under_resolved = 1.0 / static_cast<double>(grid_points) > hw;

    auto grid = weyl_sum_grid(N, grid_points);
    std::vector<double> pw(static_cast<std::size_t>(grid_points));
    for (std::int64_t j = 0; j < grid_points; ++j)
        pw[static_cast<std::size_t>(j)] = pow_abs2(std::norm(grid[static_cast<std::size_t>(j)]), r);

    // fraction of each grid cell [ (j-1/2)/G, (j+1/2)/G ) covered by majors
    std::vector<double> major_frac(static_cast<std::size_t>(grid_points), 0.0);
    double G = static_cast<double>(grid_points);
    std::vector<double> per_q_integral;
    std::int64_t qmax = N;
    per_q_integral.assign(static_cast<std::size_t>(qmax) + 1, 0.0);

    for (const auto& arc : arcs.majors) {
        double lo = arc.center - arc.halfwidth, hi = arc.center + arc.halfwidth;
        auto jlo = static_cast<std::int64_t>(std::floor(lo * G - 0.5));
        auto jhi = static_cast<std::int64_t>(std::ceil(hi * G + 0.5));
        for (std::int64_t j = jlo; j <= jhi; ++j) {
            double clo = (static_cast<double>(j) - 0.5) / G;
            double chi = (static_cast<double>(j) + 0.5) / G;
            double overlap = std::min(hi, chi) - std::max(lo, clo);
            if (overlap <= 0) continue;
            std::int64_t cell = ((j % grid_points) + grid_points) % grid_points;
            double frac = overlap * G;
            major_frac[static_cast<std::size_t>(cell)] += frac;
            per_q_integral[static_cast<std::size_t>(arc.q)] += frac * pw[static_cast<std::size_t>(cell)] / G;
        }
    }

    double major = 0, total = 0;
    for (std::int64_t j = 0; j < grid_points; ++j) {
        double f = std::min(1.0, major_frac[static_cast<std::size_t>(j)]);
        total += pw[static_cast<std::size_t>(j)];
        major += f * pw[static_cast<std::size_t>(j)];
    }
    out.total = total / G;
    out.major_total = major / G;
    out.minor_total = out.total - out.major_total;

    for (std::int64_t q = 1; q <= qmax; ++q) {
        PerQRow row;
        row.q = q;
        row.phi = totient(q);
        row.measure = 2.0 * hw * static_cast<double>(row.phi);
        row.integral = per_q_integral[static_cast<std::size_t>(q)];
        out.per_q.push_back(row);
    }
    return out;
}

double major_lower_comparator(std::int64_t N, double r) {
    if (!(r > 4)) throw std::invalid_argument("major_lower_comparator: r > 4 required");
    double sum = 0;
    auto qtop = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(N))));
    for (std::int64_t q = 1; q <= qtop; q += 2)
        sum += static_cast<double>(totient(q)) * std::pow(static_cast<double>(q), -r / 2.0);
    return std::pow(static_cast<double>(N), r - 2.0) * sum;
}

}  // namespace stri
