#include "stri/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "stri/expsum.hpp"
#include "stri/fft.hpp"
#include "stri/parallel.hpp"

namespace stri {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
constexpr std::int64_t kMaterializeLimit = std::int64_t(1) << 27;  // complex doubles
}  // namespace

double BandLimitedField::l2norm() const {
    double s = 0;
    for (const auto& c : coeffs) s += std::norm(c);
    return std::sqrt(s);
}

BandLimitedField& BandLimitedField::normalize() {
    double n = l2norm();
    if (n == 0) throw std::invalid_argument("normalize: zero field");
    for (auto& c : coeffs) c /= n;
    return *this;
}

BandLimitedField make_all_ones(const FreqBox& box) {
    BandLimitedField f{box, std::vector<Complex>(static_cast<std::size_t>(box.size()))};
    double amp = std::pow(static_cast<double>(box.side()), -box.d / 2.0);
    for (auto& c : f.coeffs) c = amp;
    return f;
}

BandLimitedField make_single_mode(const FreqBox& box, std::span<const std::int64_t> n0,
                                  Complex amplitude) {
    BandLimitedField f{box, std::vector<Complex>(static_cast<std::size_t>(box.size()), 0.0)};
    f.coeffs[static_cast<std::size_t>(box.index_of(n0))] = amplitude;
    return f;
}

BandLimitedField make_gaussian_random(const FreqBox& box, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    BandLimitedField f{box, std::vector<Complex>(static_cast<std::size_t>(box.size()))};
    for (auto& c : f.coeffs) {
        double re = g(rng), im = g(rng);
        c = Complex(re, im);
    }
    f.normalize();
    return f;
}

BandLimitedField make_explicit(const FreqBox& box, std::vector<Complex> coeffs) {
    if (static_cast<std::int64_t>(coeffs.size()) != box.size())
        throw std::invalid_argument("make_explicit: coefficient length mismatch");
    return {box, std::move(coeffs)};
}

SpaceTimeGrid SpaceTimeGrid::standard(const QuadraticForm& form, const FreqBox& box, double t0,
                                      double t1, std::int64_t spatial_oversample,
                                      std::int64_t time_oversample) {
    if (!(t1 > t0)) throw std::invalid_argument("SpaceTimeGrid: empty time interval");
    SpaceTimeGrid g;
    g.t0 = t0;
    g.t1 = t1;
    std::int64_t pmin = std::max<std::int64_t>(spatial_oversample * box.side(), 4 * box.radius + 1);
    g.points_per_axis = fft::next_smooth(pmin);
    double fastest = form.comparability() * static_cast<double>(box.radius) *
                     static_cast<double>(box.radius) * (t1 - t0);
    g.time_samples = std::max<std::int64_t>(
        65, time_oversample * static_cast<std::int64_t>(std::ceil(std::max(fastest, 1.0))) + 1);
    return g;
}

double SpaceTimeGrid::time(std::int64_t i) const {
    return t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(time_samples - 1);
}

double SpaceTimeGrid::weight(std::int64_t i) const {
    double h = (t1 - t0) / static_cast<double>(time_samples - 1);
    return (i == 0 || i == time_samples - 1) ? h / 2 : h;
}

FlowSampler::FlowSampler(const QuadraticForm& form, const BandLimitedField& field,
                         const SpaceTimeGrid& grid)
    : grid_(grid), d_(field.box.d) {
    if (form.dim() != d_) throw std::invalid_argument("FlowSampler: form/field dimension mismatch");
    std::int64_t P = grid.points_per_axis;
    if (P < field.box.side())
        throw std::invalid_argument("FlowSampler: grid too coarse for the frequency box");
    if (grid.time_samples < 2) throw std::invalid_argument("FlowSampler: need >= 2 time samples");
    dims_.assign(static_cast<std::size_t>(d_), static_cast<int>(P));
    grid_size_ = 1;
    for (int j = 0; j < d_; ++j) grid_size_ *= P;
    if (grid_size_ > kMaterializeLimit) throw std::invalid_argument("FlowSampler: spatial grid too large");

    std::vector<std::int64_t> n(static_cast<std::size_t>(d_));
    for (std::int64_t i = 0; i < field.box.size(); ++i) {
        const Complex& c = field.coeffs[static_cast<std::size_t>(i)];
        if (c == Complex(0.0, 0.0)) continue;
        field.box.decode(i, n);
        std::int64_t pos = 0;
        for (int j = 0; j < d_; ++j) pos = pos * P + ((n[static_cast<std::size_t>(j)] % P + P) % P);
        coeffs_.push_back(c);
        qvals_.push_back(form(n));
        positions_.push_back(pos);
    }
}

void FlowSampler::evaluate(std::int64_t i, std::span<Complex> out) const {
    if (static_cast<std::int64_t>(out.size()) != grid_size_)
        throw std::invalid_argument("FlowSampler: bad output size");
    std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
    double t = grid_.time(i);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        double ph = qvals_[k] * t;
        out[static_cast<std::size_t>(positions_[k])] +=
            coeffs_[k] * std::polar(1.0, kTau * (ph - std::floor(ph)));
    }
    fft::transform(dims_, out.data(), +1);
}

SpaceTimeField propagate_eval(const QuadraticForm& form, const BandLimitedField& field,
                              const SpaceTimeGrid& grid) {
    FlowSampler sampler(form, field, grid);
    if (sampler.slice_size() * grid.time_samples > kMaterializeLimit)
        throw std::invalid_argument("propagate_eval: grid too large to materialize; stream instead");
    SpaceTimeField out;
    out.grid = grid;
    out.d = sampler.dim();
    out.points_per_axis = grid.points_per_axis;
    out.slices.resize(static_cast<std::size_t>(grid.time_samples));
    for (std::int64_t i = 0; i < grid.time_samples; ++i) {
        out.slices[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(sampler.slice_size()));
        sampler.evaluate(i, out.slices[static_cast<std::size_t>(i)]);
    }
    return out;
}

namespace {

double norm_from_slices(const SpaceTimeGrid& grid, std::int64_t slice_size, double p,
                        const std::function<const Complex*(std::int64_t)>& slice_at) {
    if (p < 1) throw std::invalid_argument("spacetime_norm: p >= 1 required");
    if (std::isinf(p)) {
        double m = 0;
        for (std::int64_t i = 0; i < grid.time_samples; ++i) {
            const Complex* s = slice_at(i);
            for (std::int64_t g = 0; g < slice_size; ++g) m = std::max(m, std::abs(s[g]));
        }
        return m;
    }
    double acc = 0;
    for (std::int64_t i = 0; i < grid.time_samples; ++i) {
        const Complex* s = slice_at(i);
        double local = 0;
        for (std::int64_t g = 0; g < slice_size; ++g) local += pow_abs2(std::norm(s[g]), p);
        acc += grid.weight(i) * local / static_cast<double>(slice_size);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace

double spacetime_norm(const SpaceTimeField& samples, double p) {
    std::int64_t sz = static_cast<std::int64_t>(samples.slices.empty() ? 0 : samples.slices[0].size());
    return norm_from_slices(samples.grid, sz, p,
                            [&](std::int64_t i) { return samples.slices[static_cast<std::size_t>(i)].data(); });
}

double spacetime_norm(const QuadraticForm& form, const BandLimitedField& field,
                      const SpaceTimeGrid& grid, double p, int workers) {
    FlowSampler sampler(form, field, grid);
    if (p < 1) throw std::invalid_argument("spacetime_norm: p >= 1 required");
    std::int64_t sz = sampler.slice_size();
    bool inf = std::isinf(p);
    auto chunk = [&](std::int64_t, std::int64_t b, std::int64_t e) {
        std::vector<Complex> buf(static_cast<std::size_t>(sz));
        double acc = 0;
        for (std::int64_t i = b; i < e; ++i) {
            sampler.evaluate(i, buf);
            double local = 0;
            if (inf) {
                for (const auto& z : buf) local = std::max(local, std::abs(z));
                acc = std::max(acc, local);
            } else {
                for (const auto& z : buf) local += pow_abs2(std::norm(z), p);
                acc += grid.weight(i) * local / static_cast<double>(sz);
            }
        }
        return acc;
    };
    double total = chunked_reduce<double>(
        grid.time_samples, chunk,
        [&](double a, double b) { return inf ? std::max(a, b) : a + b; }, 0.0, workers);
    return inf ? total : std::pow(total, 1.0 / p);
}

LevelSetProfile level_set_profile(const SpaceTimeField& samples, std::vector<double> lambdas) {
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] > lambdas[i - 1]))
            throw std::invalid_argument("level_set_profile: lambdas must increase");
    LevelSetProfile out{std::move(lambdas), std::vector<double>(0)};
    out.measures.assign(out.lambdas.size(), 0.0);
    std::int64_t sz = static_cast<std::int64_t>(samples.slices.empty() ? 0 : samples.slices[0].size());
    for (std::int64_t i = 0; i < samples.grid.time_samples; ++i) {
        const auto& s = samples.slices[static_cast<std::size_t>(i)];
        double w = samples.grid.weight(i) / static_cast<double>(sz);
        for (std::int64_t g = 0; g < sz; ++g) {
            double a2 = std::norm(s[static_cast<std::size_t>(g)]);
            for (std::size_t l = 0; l < out.lambdas.size(); ++l) {
                if (a2 > out.lambdas[l] * out.lambdas[l])
                    out.measures[l] += w;
                else
                    break;  // lambdas increase
            }
        }
    }
    return out;
}

LevelSetProfile level_set_profile(const QuadraticForm& form, const BandLimitedField& field,
                                  const SpaceTimeGrid& grid, std::vector<double> lambdas,
                                  int workers) {
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] > lambdas[i - 1]))
            throw std::invalid_argument("level_set_profile: lambdas must increase");
    FlowSampler sampler(form, field, grid);
    std::int64_t sz = sampler.slice_size();
    std::size_t L = lambdas.size();
    auto chunk = [&](std::int64_t, std::int64_t b, std::int64_t e) {
        std::vector<Complex> buf(static_cast<std::size_t>(sz));
        std::vector<double> acc(L, 0.0);
        for (std::int64_t i = b; i < e; ++i) {
            sampler.evaluate(i, buf);
            double w = grid.weight(i) / static_cast<double>(sz);
            for (const auto& z : buf) {
                double a2 = std::norm(z);
                for (std::size_t l = 0; l < L; ++l) {
                    if (a2 > lambdas[l] * lambdas[l])
                        acc[l] += w;
                    else
                        break;
                }
            }
        }
        return acc;
    };
    auto combine = [&](std::vector<double> a, const std::vector<double>& b) {
        for (std::size_t l = 0; l < L; ++l) a[l] += b[l];
        return a;
    };
    auto measures = chunked_reduce<std::vector<double>>(grid.time_samples, chunk, combine,
                                                        std::vector<double>(L, 0.0), workers);
    return {std::move(lambdas), std::move(measures)};
}

BernsteinResult bernstein_check(const QuadraticForm& form, const BandLimitedField& field,
                                const SpaceTimeGrid& grid) {
    FlowSampler sampler(form, field, grid);
    std::int64_t sz = sampler.slice_size();
    std::int64_t P = grid.points_per_axis;
    int d = sampler.dim();
    std::vector<Complex> buf(static_cast<std::size_t>(sz));
    double best = 0, refined = 0;
    for (std::int64_t i = 0; i < grid.time_samples; ++i) {
        sampler.evaluate(i, buf);
        std::int64_t arg = 0;
        double loc = 0;
        for (std::int64_t g = 0; g < sz; ++g) {
            double a = std::norm(buf[static_cast<std::size_t>(g)]);
            if (a > loc) {
                loc = a;
                arg = g;
            }
        }
        loc = std::sqrt(loc);
        if (loc <= best) continue;
        best = loc;
        // one-step parabolic refinement of |u|^2 along each axis
        double r2 = loc * loc;
        std::int64_t stride = 1;
        std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
        {
            std::int64_t r = arg;
            for (int j = d - 1; j >= 0; --j) {
                idx[static_cast<std::size_t>(j)] = r % P;
                r /= P;
            }
        }
        double gain = 1.0;
        stride = 1;
        for (int j = d - 1; j >= 0; --j) {
            std::int64_t lo = arg + ((idx[static_cast<std::size_t>(j)] + P - 1) % P - idx[static_cast<std::size_t>(j)]) * stride;
            std::int64_t hi = arg + ((idx[static_cast<std::size_t>(j)] + 1) % P - idx[static_cast<std::size_t>(j)]) * stride;
            double ym = std::norm(buf[static_cast<std::size_t>(lo)]);
            double y0 = r2;
            double yp = std::norm(buf[static_cast<std::size_t>(hi)]);
            double denom = ym - 2 * y0 + yp;
            if (denom < 0) {
                double delta = 0.5 * (ym - yp) / denom;
                double peak = y0 - 0.25 * (ym - yp) * delta;
                if (peak > y0) gain *= peak / y0;
            }
            stride *= P;
        }
        refined = std::max(refined, std::sqrt(r2 * gain));
    }
    double cap = std::pow(static_cast<double>(field.box.side()), d / 2.0) * field.l2norm();
    return {best / cap, best, std::max(refined, best)};
}

void save_field(const std::filesystem::path& path, const BandLimitedField& field) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_field: cannot open " + path.string());
    out << "# stri-field v1 d=" << field.box.d << " N=" << field.box.radius << "\n";
    out.precision(17);
    std::vector<std::int64_t> n(static_cast<std::size_t>(field.box.d));
    for (std::int64_t i = 0; i < field.box.size(); ++i) {
        field.box.decode(i, n);
        for (auto v : n) out << v << ' ';
        out << field.coeffs[static_cast<std::size_t>(i)].real() << ' '
            << field.coeffs[static_cast<std::size_t>(i)].imag() << "\n";
    }
}

BandLimitedField load_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_field: cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    int d = 0;
    std::int64_t N = -1;
    if (std::sscanf(header.c_str(), "# stri-field v1 d=%d N=%lld", &d,
                    reinterpret_cast<long long*>(&N)) != 2 ||
        d < 1 || N < 0)
        throw std::runtime_error("load_field: bad header in " + path.string());
    FreqBox box{d, N};
    BandLimitedField f{box, std::vector<Complex>(static_cast<std::size_t>(box.size()), 0.0)};
    std::vector<std::int64_t> n(static_cast<std::size_t>(d));
    double re = 0, im = 0;
    while (in) {
        for (int j = 0; j < d; ++j)
            if (!(in >> n[static_cast<std::size_t>(j)])) return f;
        if (!(in >> re >> im)) throw std::runtime_error("load_field: truncated row");
        f.coeffs[static_cast<std::size_t>(box.index_of(n))] = Complex(re, im);
    }
    return f;
}

}  // namespace stri
