#pragma once

#include <cstdint>
#include <vector>

#include "stri/field.hpp"
#include "stri/quadform.hpp"

namespace stri {

// critical Sobolev index s_c = d/2 - 1/k for the |u|^{2k} u nonlinearity
double critical_index(int d, int k);

struct NLSProblem {
    QuadraticForm form;
    int k = 1;        // nonlinearity power in |u|^{2k} u
    int mu = 1;       // sign of the nonlinearity
    std::int64_t N = 1;
    double dt = 1e-3;
    double T = 1.0;
    int pad_factor = 2;  // zero-padding of the nonlinear substep grid

    // linear-phase resolution guard dt (2 pi C N^2) <= 0.5; advisory, since
    // the linear substep applies exact phases
    bool phase_guard_ok() const;
};

struct Invariants {
    double mass = 0;
    double hamiltonian = 0;  // 2 pi sum Q(n)|c_n|^2 - mu/(k+1) int |u|^{2k+2}
};

// Strang split-step: half nonlinear (physical space, zero-padded), full
// linear phase in frequency, half nonlinear.  Throws on NaN/overflow.
class SplitStepSolver {
public:
    SplitStepSolver(const NLSProblem& problem);

    const NLSProblem& problem() const { return prob_; }
    void step(BandLimitedField& state) const { step(state, prob_.dt); }
    void step(BandLimitedField& state, double dt) const;
    void advance(BandLimitedField& state, std::int64_t steps) const;
    void advance(BandLimitedField& state, std::int64_t steps, double dt) const;

    Invariants invariants(const BandLimitedField& state) const;

private:
    NLSProblem prob_;
    FreqBox box_;
    std::int64_t pad_, quad_;  // padded grid and exact-quadrature grid sizes
    std::vector<double> qvals_;
};

struct ProbeRow {
    double s = 0;
    std::uint64_t seed = 0;
    double ratio = 0;  // sup_{t <= T} ||difference||_{H^s} / delta
};

// Lipschitz probe around random data: solve from u0 and u0 + delta*phi with
// ||phi||_{H^s} = 1, report the growth ratio.  A report, not an assertion.
std::vector<ProbeRow> wellposedness_probe(const NLSProblem& problem,
                                          const std::vector<double>& s_list, double delta,
                                          const std::vector<std::uint64_t>& seeds,
                                          double amplitude = 1e-1);

double sobolev_norm(const BandLimitedField& field, double s);

}  // namespace stri
