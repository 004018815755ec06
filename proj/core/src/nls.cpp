#include "stri/nls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "stri/expsum.hpp"
#include "stri/fft.hpp"

namespace stri {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

double critical_index(int d, int k) {
    if (d < 1 || k < 1) throw std::invalid_argument("critical_index: d, k >= 1 required");
    return d / 2.0 - 1.0 / k;
}

bool NLSProblem::phase_guard_ok() const {
    return dt * kTau * form.comparability() * static_cast<double>(N) * static_cast<double>(N) <= 0.5;
}

SplitStepSolver::SplitStepSolver(const NLSProblem& problem)
    : prob_(problem), box_{problem.form.dim(), problem.N} {
    if (prob_.k < 1) throw std::invalid_argument("SplitStepSolver: k >= 1 required");
    if (prob_.pad_factor < 2) throw std::invalid_argument("SplitStepSolver: pad_factor >= 2 required");
    pad_ = fft::next_smooth(prob_.pad_factor * box_.side());
    quad_ = fft::next_smooth((2 * prob_.k + 2) * prob_.N + 2);  // exact |u|^{2k+2} quadrature
    qvals_.resize(static_cast<std::size_t>(box_.size()));
    std::vector<std::int64_t> n(static_cast<std::size_t>(box_.d));
    for (std::int64_t i = 0; i < box_.size(); ++i) {
        box_.decode(i, n);
        qvals_[static_cast<std::size_t>(i)] = prob_.form(n);
    }
}

namespace {

// scatter box coefficients onto a P^d grid, inverse transform to samples
void to_grid(const FreqBox& box, const std::vector<Complex>& coeffs, std::int64_t P,
             std::vector<Complex>& grid, std::vector<int>& dims) {
    dims.assign(static_cast<std::size_t>(box.d), static_cast<int>(P));
    std::int64_t sz = 1;
    for (int j = 0; j < box.d; ++j) sz *= P;
    grid.assign(static_cast<std::size_t>(sz), Complex(0, 0));
    std::vector<std::int64_t> n(static_cast<std::size_t>(box.d));
    for (std::int64_t i = 0; i < box.size(); ++i) {
        box.decode(i, n);
        std::int64_t pos = 0;
        for (int j = 0; j < box.d; ++j) pos = pos * P + ((n[static_cast<std::size_t>(j)] % P + P) % P);
        grid[static_cast<std::size_t>(pos)] = coeffs[static_cast<std::size_t>(i)];
    }
    fft::transform(dims, grid.data(), +1);
}

// forward transform and gather back to the box (dealiasing projection)
void from_grid(const FreqBox& box, std::vector<Complex>& grid, std::int64_t P,
               std::vector<int>& dims, std::vector<Complex>& coeffs) {
    fft::transform(dims, grid.data(), -1);
    std::int64_t sz = 1;
    for (int j = 0; j < box.d; ++j) sz *= P;
    double inv = 1.0 / static_cast<double>(sz);
    std::vector<std::int64_t> n(static_cast<std::size_t>(box.d));
    for (std::int64_t i = 0; i < box.size(); ++i) {
        box.decode(i, n);
        std::int64_t pos = 0;
        for (int j = 0; j < box.d; ++j) pos = pos * P + ((n[static_cast<std::size_t>(j)] % P + P) % P);
        coeffs[static_cast<std::size_t>(i)] = grid[static_cast<std::size_t>(pos)] * inv;
    }
}

}  // namespace

void SplitStepSolver::step(BandLimitedField& state, double dt) const {
    if (state.box.d != box_.d || state.box.radius != box_.radius)
        throw std::invalid_argument("SplitStepSolver: state box mismatch");

    std::vector<Complex> grid;
    std::vector<int> dims;
    auto nonlinear_half = [&]() {
        to_grid(box_, state.coeffs, pad_, grid, dims);
        double mu = static_cast<double>(prob_.mu);
        for (auto& z : grid) {
            double a2k = pow_abs2(std::norm(z), 2.0 * prob_.k);
            z *= std::polar(1.0, -mu * a2k * dt / 2.0);
        }
        from_grid(box_, grid, pad_, dims, state.coeffs);
    };

    nonlinear_half();
    for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
        double ph = qvals_[i] * dt;
        state.coeffs[i] *= std::polar(1.0, kTau * (ph - std::floor(ph)));
    }
    nonlinear_half();

    double m = 0;
    for (const auto& c : state.coeffs) m += std::norm(c);
    if (!std::isfinite(m)) throw std::runtime_error("SplitStepSolver: state blew up (NaN/overflow)");
}

void SplitStepSolver::advance(BandLimitedField& state, std::int64_t steps) const {
    advance(state, steps, prob_.dt);
}

void SplitStepSolver::advance(BandLimitedField& state, std::int64_t steps, double dt) const {
    for (std::int64_t s = 0; s < steps; ++s) step(state, dt);
}

Invariants SplitStepSolver::invariants(const BandLimitedField& state) const {
    Invariants inv;
    double kinetic = 0;
    for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
        double a2 = std::norm(state.coeffs[i]);
        inv.mass += a2;
        kinetic += qvals_[i] * a2;
    }
    std::vector<Complex> grid;
    std::vector<int> dims;
    to_grid(box_, state.coeffs, quad_, grid, dims);
    double pot = 0;
    for (const auto& z : grid) pot += pow_abs2(std::norm(z), 2.0 * (prob_.k + 1));
    pot /= static_cast<double>(grid.size());
    inv.hamiltonian = kTau * kinetic - static_cast<double>(prob_.mu) / (prob_.k + 1.0) * pot;
    return inv;
}

double sobolev_norm(const BandLimitedField& field, double s) {
    double acc = 0;
    std::vector<std::int64_t> n(static_cast<std::size_t>(field.box.d));
    for (std::int64_t i = 0; i < field.box.size(); ++i) {
        field.box.decode(i, n);
        double n2 = 0;
        for (auto v : n) n2 += static_cast<double>(v) * static_cast<double>(v);
        acc += std::pow(1.0 + n2, s) * std::norm(field.coeffs[static_cast<std::size_t>(i)]);
    }
    return std::sqrt(acc);
}

std::vector<ProbeRow> wellposedness_probe(const NLSProblem& problem,
                                          const std::vector<double>& s_list, double delta,
                                          const std::vector<std::uint64_t>& seeds,
                                          double amplitude) {
    if (!(delta > 0)) throw std::invalid_argument("wellposedness_probe: delta > 0 required");
    SplitStepSolver solver(problem);
    FreqBox box{problem.form.dim(), problem.N};
    auto steps = static_cast<std::int64_t>(std::llround(problem.T / problem.dt));
    std::vector<ProbeRow> rows;
    for (double s : s_list) {
        for (std::uint64_t seed : seeds) {
            BandLimitedField u0 = make_gaussian_random(box, seed);
            for (auto& c : u0.coeffs) c *= amplitude;
            BandLimitedField phi = make_gaussian_random(box, seed + 0x9e3779b97f4a7c15ULL);
            double hs = sobolev_norm(phi, s);
            for (auto& c : phi.coeffs) c /= hs;

            BandLimitedField a = u0, b = u0;
            for (std::size_t i = 0; i < b.coeffs.size(); ++i) b.coeffs[i] += delta * phi.coeffs[i];

            double worst = 0;
            BandLimitedField diff = a;
            for (std::int64_t st = 0; st < steps; ++st) {
                solver.step(a);
                solver.step(b);
                for (std::size_t i = 0; i < diff.coeffs.size(); ++i)
                    diff.coeffs[i] = b.coeffs[i] - a.coeffs[i];
                worst = std::max(worst, sobolev_norm(diff, s) / delta);
            }
            rows.push_back({s, seed, worst});
        }
    }
    return rows;
}

}  // namespace stri
