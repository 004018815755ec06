#include "stri/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace stri {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

double dist_to_integer(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

std::int64_t totient(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("totient: q >= 1 required");
    std::int64_t result = q, m = q;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        result -= result / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::int64_t mobius(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("mobius: q >= 1 required");
    std::int64_t m = q;
    int factors = 0;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) return 0;  // squareful
        ++factors;
    }
    if (m > 1) ++factors;
    return (factors % 2) ? -1 : 1;
}

double ramanujan_sum(std::int64_t q, std::int64_t k) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum: q >= 1 required");
    std::int64_t kr = ((k % q) + q) % q;
    std::complex<double> s = 0;
    for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(a) * kr) % q);
        s += std::polar(1.0, -kTau * static_cast<double>(r) / static_cast<double>(q));
    }
    if (std::abs(s.imag()) > 1e-9)
        throw std::runtime_error("ramanujan_sum: imaginary residue above tolerance");
    return s.real();
}

std::complex<double> gauss_sum(std::int64_t q, std::int64_t a) {
    if (q < 1) throw std::invalid_argument("gauss_sum: q >= 1 required");
    std::int64_t ar = ((a % q) + q) % q;
    if (std::gcd(ar == 0 ? q : ar, q) != 1)
        throw std::invalid_argument("gauss_sum: gcd(a, q) = 1 required");
    std::complex<double> s = 0;
    for (std::int64_t n = 1; n <= q; ++n) {
        std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(n) * n % q) * ar % q);
        s += std::polar(1.0, kTau * static_cast<double>(r) / static_cast<double>(q));
    }
    return s;
}

std::int64_t divisor_count(std::int64_t k, std::int64_t M) {
    if (M < 1) throw std::invalid_argument("divisor_count: M >= 1 required");
    if (k == 0) return M - 1;
    std::int64_t ka = std::llabs(k), count = 0;
    for (std::int64_t d = 1; d < M && d <= ka; ++d)
        if (ka % d == 0) ++count;
    return count;
}

std::int64_t divisor_tail_count(std::int64_t N, std::int64_t M, double D) {
    if (N < 1 || M < 1) throw std::invalid_argument("divisor_tail_count: N, M >= 1 required");
    // sieve d(k, M) for 0 <= k <= N
    std::vector<std::int64_t> dc(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t d = 1; d < M; ++d)
        for (std::int64_t k = d; k <= N; k += d) ++dc[static_cast<std::size_t>(k)];
    dc[0] = M - 1;
    std::int64_t count = 0;
    for (std::int64_t k = 0; k <= N; ++k)
        if (static_cast<double>(dc[static_cast<std::size_t>(k)]) > D) ++count;
    return count;
}

RationalApprox dirichlet_approx(double t, std::int64_t qmax) {
    if (qmax < 1) throw std::invalid_argument("dirichlet_approx: qmax >= 1 required");
    t -= std::floor(t);

    auto err_of = [&](std::int64_t p, std::int64_t q) {
        return dist_to_integer(t - static_cast<double>(p) / static_cast<double>(q));
    };

    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    std::int64_t bp = 0, bq = 1;
    double x = t;
    for (int it = 0; it < 64; ++it) {
        auto a = static_cast<std::int64_t>(std::floor(x));
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) {
            if (q1 > 0) {
                // largest intermediate fraction (p0 + m p1)/(q0 + m q1) with q <= qmax;
                // accept only when it beats the convergent and keeps the guarantee
                std::int64_t m = (qmax - q0) / q1;
                std::int64_t ps = p0 + m * p1, qs = q0 + m * q1;
                if (qs >= 1 && err_of(ps, qs) < err_of(bp, bq) &&
                    err_of(ps, qs) <= 1.0 / (static_cast<double>(qs) * static_cast<double>(qmax))) {
                    bp = ps;
                    bq = qs;
                }
            }
            break;
        }
        bp = p2;
        bq = q2;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double fr = x - static_cast<double>(a);
        if (fr < 1e-15) break;
        x = 1.0 / fr;
    }
    std::int64_t g = std::gcd(std::llabs(bp), bq);
    if (g > 1) {
        bp /= g;
        bq /= g;
    }
    if (bp == 0) {
        bp = 1;  // 0/1 and 1/1 coincide mod 1; keep 1 <= a <= q
        bq = 1;
    }
    return {bp, bq, err_of(bp, bq), true};
}

ArcLabel classify_arc(double t, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("classify_arc: N >= 1 required");
    t -= std::floor(t);
    double hw = 1.0 / (100.0 * static_cast<double>(N) * static_cast<double>(N));
    for (std::int64_t q = 1; q <= N; ++q) {
        auto a0 = static_cast<std::int64_t>(std::llround(t * static_cast<double>(q)));
        for (std::int64_t a = std::max<std::int64_t>(1, a0 - 1); a <= std::min(q, a0 + 1); ++a) {
            if (std::gcd(a, q) != 1) continue;
            if (dist_to_integer(t - static_cast<double>(a) / static_cast<double>(q)) <= hw)
                return {true, q, a};
        }
    }
    return {false, 0, 0};
}

}  // namespace stri
