#pragma once

#include <cstdint>
#include <vector>

namespace stri {

struct MajorArc {
    std::int64_t q = 1, a = 1;
    double center = 0;     // a/q
    double halfwidth = 0;  // 1/(100 N^2)
};

enum class MinorLabel { M1, Gap, M2 };

// Major/minor decomposition of [0,1]: majors are the arcs around a/q with
// q <= N and halfwidth 1/(100 N^2); the remaining minor set is sublabeled by
// the Dirichlet denominator at Qmax = ceil(N^{2-eps}): q <= N^eps is m1,
// q > N is m2, and the in-between band (which the asymptotic argument
// absorbs into its implicit constants) is kept separate as Gap.
struct ArcDecomposition {
    std::int64_t N = 1;
    double eps = 0.2;
    std::vector<MajorArc> majors;
    double major_measure = 0;
    double minor_measure = 0;

    std::int64_t dirichlet_qmax() const;
    MinorLabel minor_label(double t) const;
};

ArcDecomposition build_arcs(std::int64_t N, double eps = 0.2);

struct PerQRow {
    std::int64_t q = 0;
    std::int64_t phi = 0;
    double measure = 0;
    double integral = 0;  // contribution to the r-th moment
};

struct ArcMoments {
    double major_total = 0;
    double minor_total = 0;
    double total = 0;
    std::vector<PerQRow> per_q;
    std::int64_t grid_points = 0;
    bool under_resolved = false;  // grid spacing above the arc halfwidth
};

// integral of |F|^r split over major arcs and the minor complement, on the
// uniform grid with boundary cells split proportionally between the two
// sides, so major_total + minor_total equals the plain grid moment exactly.
ArcMoments arc_moments(std::int64_t N, double r, std::int64_t grid_points, double eps = 0.2);

// the Remark's major-arc comparator N^{r-2} sum_{odd q <= sqrt N} phi(q) q^{-r/2}
double major_lower_comparator(std::int64_t N, double r);

}  // namespace stri
