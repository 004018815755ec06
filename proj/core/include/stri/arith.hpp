#pragma once

#include <complex>
#include <cstdint>

namespace stri {

// distance of x to the nearest integer
double dist_to_integer(double x);

std::int64_t totient(std::int64_t q);
std::int64_t mobius(std::int64_t q);

// Ramanujan sum c_q(k) = sum_{a in J_q} e^{-2 pi i a k / q}, J_q the reduced
// residues mod q.  Computed as the literal exponential sum; the imaginary
// part must cancel to < 1e-9 or an internal-consistency error is raised.
double ramanujan_sum(std::int64_t q, std::int64_t k);

// Gauss sum S(q, a) = sum_{n=1..q} e^{2 pi i n^2 a / q}, gcd(a, q) = 1
std::complex<double> gauss_sum(std::int64_t q, std::int64_t a);

// number of divisors of k strictly below M; d(0, M) = M - 1
std::int64_t divisor_count(std::int64_t k, std::int64_t M);

// #{ 0 <= k <= N : d(k, M) > D }
std::int64_t divisor_tail_count(std::int64_t N, std::int64_t M, double D);

struct RationalApprox {
    std::int64_t num = 1;  // 1 <= num <= den
    std::int64_t den = 1;
    double err = 0;  // || t - num/den ||
    bool coprime = true;
};

// Dirichlet approximation: q <= qmax and ||t - a/q|| <= 1/(q qmax), via the
// continued-fraction convergents with a final intermediate-fraction sweep
// (an intermediate fraction is only accepted when it keeps the guarantee).
RationalApprox dirichlet_approx(double t, std::int64_t qmax);

struct ArcLabel {
    bool major = false;
    std::int64_t q = 0, a = 0;  // set when major
};

// Major iff some a/q with q <= N, gcd(a,q)=1 lies within 1/(100 N^2) of t.
// Smallest q, then smallest a, wins (arcs are pairwise disjoint, so the
// tie-break only matters at machine precision).
ArcLabel classify_arc(double t, std::int64_t N);

}  // namespace stri
