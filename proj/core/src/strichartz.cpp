#include "stri/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "stri/expsum.hpp"
#include "stri/exponents.hpp"
#include "stri/fft.hpp"
#include "stri/gauss_legendre.hpp"
#include "stri/parallel.hpp"

namespace stri {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;

// integral over [t0, t1] of e^{2 pi i omega t}
Complex interval_phase_integral(double omega, double t0, double t1) {
    double len = t1 - t0;
    if (std::abs(omega) * len < 1e-9) {
        // series around omega = 0 keeps full precision for near-resonant pairs
        double x = kTau * omega;
        Complex head(len, x * len * (t0 + t1) / 2.0);
        return head;
    }
    Complex lead = std::polar(1.0, kTau * omega * t0);
    Complex swing = std::polar(1.0, kTau * omega * len) - 1.0;
    return lead * swing / Complex(0.0, kTau * omega);
}

}  // namespace

ExponentFit exponent_fit(std::span<const std::pair<double, double>> points, double predicted,
                         double tolerance) {
    if (points.size() < 3) throw std::invalid_argument("exponent_fit: need >= 3 points");
    ExponentFit fit;
    fit.points.assign(points.begin(), points.end());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [N, v] : points) {
        if (!(v > 0) || !(N > 0)) throw std::invalid_argument("exponent_fit: positive values required");
        double x = std::log(N), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(points.size());
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("exponent_fit: degenerate abscissae");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (const auto& [N, v] : points) {
        double r = std::log(v) - (fit.slope * std::log(N) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.predicted = predicted;
    fit.tolerance = tolerance;
    fit.pass = std::isfinite(predicted) && std::isfinite(tolerance) &&
               std::abs(fit.slope - predicted) <= tolerance;
    return fit;
}

double strichartz_quotient(const QuadraticForm& form, const BandLimitedField& field, double p,
                           const SpaceTimeGrid& grid, int workers) {
    double l2 = field.l2norm();
    if (l2 == 0) throw std::invalid_argument("strichartz_quotient: zero field");
    return spacetime_norm(form, field, grid, p, workers) / l2;
}

namespace {

// one ascent pass: b = A*(w |u|^{p-2} u), computed slice by slice
std::vector<Complex> ascent_direction(const QuadraticForm& form, const BandLimitedField& field,
                                      const SpaceTimeGrid& grid, double p) {
    FlowSampler sampler(form, field, grid);
    std::int64_t P = grid.points_per_axis, sz = sampler.slice_size();
    int d = field.box.d;
    std::vector<int> dims(static_cast<std::size_t>(d), static_cast<int>(P));
    std::vector<Complex> buf(static_cast<std::size_t>(sz));
    std::vector<Complex> acc(field.coeffs.size(), 0.0);

    std::vector<std::int64_t> n(static_cast<std::size_t>(d));
    std::vector<std::int64_t> positions(field.coeffs.size());
    std::vector<double> qvals(field.coeffs.size());
    for (std::int64_t i = 0; i < field.box.size(); ++i) {
        field.box.decode(i, n);
        std::int64_t pos = 0;
        for (int j = 0; j < d; ++j) pos = pos * P + ((n[static_cast<std::size_t>(j)] % P + P) % P);
        positions[static_cast<std::size_t>(i)] = pos;
        qvals[static_cast<std::size_t>(i)] = form(n);
    }

    for (std::int64_t i = 0; i < grid.time_samples; ++i) {
        sampler.evaluate(i, buf);
        for (auto& z : buf) {
            double a2 = std::norm(z);
            z *= (a2 > 0) ? pow_abs2(a2, p - 2.0) : 0.0;  // |u|^{p-2} u
        }
        fft::transform(dims, buf.data(), -1);
        double t = grid.time(i);
        double w = grid.weight(i) / static_cast<double>(sz);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            double ph = qvals[k] * t;
            acc[k] += w * buf[static_cast<std::size_t>(positions[k])] *
                      std::polar(1.0, -kTau * (ph - std::floor(ph)));
        }
    }
    return acc;
}

}  // namespace

ExtremizerResult extremizer_search(const QuadraticForm& form, const FreqBox& box, double p,
                                   const SpaceTimeGrid& grid, const ExtremizerOptions& opts) {
    if (p < 2) throw std::invalid_argument("extremizer_search: p >= 2 required");
    ExtremizerResult best;
    best.quotient = -1;

    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        BandLimitedField c = (restart == 0) ? make_all_ones(box)
                                            : make_gaussian_random(box, opts.seed + static_cast<std::uint64_t>(restart));
        double q = strichartz_quotient(form, c, p, grid);
        std::vector<double> history{q};
        bool converged = false;

        for (int it = 0; it < opts.iterations; ++it) {
            auto dir = ascent_direction(form, c, grid, p);
            BandLimitedField cand = make_explicit(box, std::move(dir));
            if (cand.l2norm() == 0) break;
            cand.normalize();
            double qc = strichartz_quotient(form, cand, p, grid);
            int halvings = 0;
            while (qc <= q && halvings < opts.max_backtracks) {
                for (std::size_t k = 0; k < cand.coeffs.size(); ++k)
                    cand.coeffs[k] = 0.5 * (cand.coeffs[k] + c.coeffs[k]);
                cand.normalize();
                qc = strichartz_quotient(form, cand, p, grid);
                ++halvings;
            }
            if (qc <= q) {
                converged = true;  // stationary to within the backtrack budget
                break;
            }
            c = std::move(cand);
            q = qc;
            history.push_back(q);
        }
        if (q > best.quotient) {
            best.field = std::move(c);
            best.quotient = q;
            best.converged = converged;
            best.history = std::move(history);
        }
    }
    return best;
}

KnpSweepResult knp_sweep(const QuadraticForm& form, double p, std::span<const std::int64_t> Ns,
                         const KnpOptions& opts) {
    if (Ns.size() < 3) throw std::invalid_argument("knp_sweep: need >= 3 values of N");
    KnpSweepResult out;
    std::map<std::string, std::vector<std::pair<double, double>>> family_points;
    std::vector<std::pair<double, double>> combined_points;

    for (std::int64_t N : Ns) {
        FreqBox box{form.dim(), N};
        SpaceTimeGrid grid = SpaceTimeGrid::standard(form, box, 0.0, 1.0, opts.spatial_oversample,
                                                     opts.time_oversample);
        double cell_max = 0;
        for (const auto& family : opts.families) {
            double value = 0;
            if (family == "all-ones") {
                value = strichartz_quotient(form, make_all_ones(box), p, grid, opts.workers);
                out.rows.push_back({N, family, 0, value});
            } else if (family == "gaussian-random") {
                for (int s = 0; s < opts.random_seeds; ++s) {
                    std::uint64_t seed = opts.seed_base + static_cast<std::uint64_t>(s);
                    double q = strichartz_quotient(form, make_gaussian_random(box, seed), p, grid,
                                                   opts.workers);
                    out.rows.push_back({N, family, seed, q});
                    value = std::max(value, q);
                }
            } else if (family == "extremizer") {
                ExtremizerOptions eo = opts.extremizer;
                eo.seed = opts.seed_base;
                auto res = extremizer_search(form, box, p, grid, eo);
                value = res.quotient;
                out.rows.push_back({N, family, eo.seed, value});
            } else {
                throw std::invalid_argument("knp_sweep: unknown family " + family);
            }
            family_points[family].push_back({static_cast<double>(N), value});
            cell_max = std::max(cell_max, value);
        }
        combined_points.push_back({static_cast<double>(N), cell_max});
    }

    auto pred = predicted_exponent(form.dim(), p, opts.partial_torus);
    for (auto& [family, pts] : family_points)
        out.per_family[family] = exponent_fit(pts, pred.value);
    out.combined = exponent_fit(combined_points, pred.value);
    return out;
}

double default_delta(int d, int k, bool partial_torus) {
    // midpoint of the admissible p-interval, then half the resulting
    // delta bound; clamped away from zero
    double plo, phi, coeff;
    if (partial_torus && d == 3) {
        plo = 14.0 / 3.0;
        phi = 20.0 * k / (3.0 * k + 2.0);
        coeff = 7.0 / 3.0;
    } else if (d == 2) {
        plo = 20.0 / 3.0;
        phi = 8.0 * k / (k + 1.0);
        coeff = 10.0 / 3.0;
    } else if (d == 3) {
        plo = 16.0 / 3.0;
        phi = 20.0 * k / (3.0 * k + 2.0);
        coeff = 8.0 / 3.0;
    } else {
        plo = 4.0;
        phi = 4.0 * k * (d + 2.0) / (d * k + 2.0);
        coeff = 2.0;
    }
    double p = (phi > plo) ? 0.5 * (plo + phi) : plo * 1.05;
    double bound = 0.5 - coeff / p;
    return std::max(bound / 2.0, 0.01);
}

MultilinearResult multilinear_quotient(const QuadraticForm& form,
                                       std::span<const BandLimitedField> fields, double s,
                                       std::optional<double> delta, std::int64_t time_oversample,
                                       int workers) {
    if (fields.size() < 2) throw std::invalid_argument("multilinear_quotient: need >= 2 fields");
    int d = form.dim();
    std::int64_t radius_sum = 0;
    double q_span = 0;
    double theta_sum = 0;
    for (double t : form.theta()) theta_sum += t;
    for (std::size_t j = 0; j < fields.size(); ++j) {
        if (fields[j].box.d != d) throw std::invalid_argument("multilinear_quotient: dimension mismatch");
        if (j > 0 && fields[j].box.radius > fields[j - 1].box.radius)
            throw std::invalid_argument("multilinear_quotient: supports must be nonincreasing");
        radius_sum += fields[j].box.radius;
        q_span += theta_sum * static_cast<double>(fields[j].box.radius) *
                  static_cast<double>(fields[j].box.radius);
    }

    SpaceTimeGrid grid;
    grid.t0 = 0.0;
    grid.t1 = 1.0;
    grid.points_per_axis = fft::next_smooth(2 * radius_sum + 2);
    grid.time_samples = std::max<std::int64_t>(
        65, time_oversample * static_cast<std::int64_t>(std::ceil(std::max(2.0 * q_span, 1.0))) + 1);

    std::vector<FlowSampler> samplers;
    samplers.reserve(fields.size());
    for (const auto& f : fields) samplers.emplace_back(form, f, grid);
    std::int64_t sz = samplers[0].slice_size();

    auto chunk = [&](std::int64_t, std::int64_t b, std::int64_t e) {
        std::vector<Complex> prod(static_cast<std::size_t>(sz)), buf(static_cast<std::size_t>(sz));
        double acc = 0;
        for (std::int64_t i = b; i < e; ++i) {
            samplers[0].evaluate(i, prod);
            for (std::size_t j = 1; j < samplers.size(); ++j) {
                samplers[j].evaluate(i, buf);
                for (std::int64_t g = 0; g < sz; ++g)
                    prod[static_cast<std::size_t>(g)] *= buf[static_cast<std::size_t>(g)];
            }
            double local = 0;
            for (const auto& z : prod) local += std::norm(z);
            acc += grid.weight(i) * local / static_cast<double>(sz);
        }
        return acc;
    };
    double lhs2 = chunked_reduce<double>(grid.time_samples, chunk,
                                         [](double a, double b) { return a + b; }, 0.0, workers);

    MultilinearResult out;
    out.lhs = std::sqrt(lhs2);
    out.s = s;
    int k = static_cast<int>(fields.size()) - 1;
    out.delta = delta.value_or(default_delta(d, k));

    double prod_norms = 1, prod_ns = 1;
    for (const auto& f : fields) {
        prod_norms *= f.l2norm();
        prod_ns *= std::pow(static_cast<double>(std::max<std::int64_t>(f.box.radius, 1)), s);
    }
    double nmax = static_cast<double>(std::max<std::int64_t>(fields[0].box.radius, 1));
    out.rhs_subcritical = std::pow(nmax, -s) * prod_ns * prod_norms;

    double sc = d / 2.0 - 1.0 / k;
    double n1 = static_cast<double>(std::max<std::int64_t>(fields[0].box.radius, 1));
    double n2 = static_cast<double>(std::max<std::int64_t>(fields[1].box.radius, 1));
    double nk1 = static_cast<double>(std::max<std::int64_t>(fields.back().box.radius, 1));
    double gain = std::pow(nk1 / n1 + 1.0 / n2, out.delta);
    double tail = 1;
    for (std::size_t j = 1; j < fields.size(); ++j)
        tail *= std::pow(static_cast<double>(std::max<std::int64_t>(fields[j].box.radius, 1)), sc) *
                fields[j].l2norm();
    out.rhs_critical = gain * fields[0].l2norm() * tail;
    return out;
}

double exact_product_l2(const QuadraticForm& form, std::span<const BandLimitedField> fields,
                        double t0, double t1) {
    if (fields.empty()) throw std::invalid_argument("exact_product_l2: no fields");
    int d = form.dim();
    struct Tuple {
        std::vector<std::int64_t> m;
        double omega;
        Complex c;
    };
    std::vector<Tuple> tuples;
    {
        std::vector<std::int64_t> n(static_cast<std::size_t>(d));
        const auto& f0 = fields[0];
        for (std::int64_t i = 0; i < f0.box.size(); ++i) {
            if (f0.coeffs[static_cast<std::size_t>(i)] == Complex(0, 0)) continue;
            f0.box.decode(i, n);
            tuples.push_back({{n.begin(), n.end()}, form(n), f0.coeffs[static_cast<std::size_t>(i)]});
        }
    }
    for (std::size_t j = 1; j < fields.size(); ++j) {
        const auto& f = fields[j];
        std::vector<Tuple> next;
        std::vector<std::int64_t> n(static_cast<std::size_t>(d));
        for (const auto& t : tuples) {
            for (std::int64_t i = 0; i < f.box.size(); ++i) {
                const Complex& c = f.coeffs[static_cast<std::size_t>(i)];
                if (c == Complex(0, 0)) continue;
                f.box.decode(i, n);
                Tuple nt = t;
                for (int jj = 0; jj < d; ++jj) nt.m[static_cast<std::size_t>(jj)] += n[static_cast<std::size_t>(jj)];
                nt.omega += form(n);
                nt.c *= c;
                next.push_back(std::move(nt));
                if (next.size() > 5'000'000)
                    throw std::invalid_argument("exact_product_l2: support too large for the exact oracle");
            }
        }
        tuples.swap(next);
    }
    // group by output frequency m
    std::unordered_map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        std::string key;
        key.reserve(tuples[i].m.size() * 8);
        for (auto v : tuples[i].m) key.append(reinterpret_cast<const char*>(&v), sizeof(v));
        groups[key].push_back(i);
    }
    long double total = 0;
    std::uint64_t pair_budget = 400'000'000;
    for (auto& [key, idx] : groups) {
        std::uint64_t pairs = static_cast<std::uint64_t>(idx.size()) * idx.size();
        if (pairs > pair_budget) throw std::invalid_argument("exact_product_l2: pair budget exceeded");
        pair_budget -= pairs;
        for (std::size_t u = 0; u < idx.size(); ++u) {
            const auto& tu = tuples[idx[u]];
            total += std::norm(tu.c) * (t1 - t0);
            for (std::size_t v = u + 1; v < idx.size(); ++v) {
                const auto& tv = tuples[idx[v]];
                Complex e = interval_phase_integral(tu.omega - tv.omega, t0, t1);
                total += 2.0 * std::real(tu.c * std::conj(tv.c) * e);
            }
        }
    }
    return std::sqrt(static_cast<double>(total));
}

StripOrthogonality strip_orthogonality_check(const QuadraticForm& form, std::int64_t N1,
                                             std::int64_t N2, const FreqRegion& cube,
                                             const BandLimitedField& field_on_cube,
                                             const BandLimitedField& field2, double window) {
    if (cube.kind != FreqRegion::Kind::Cube)
        throw std::invalid_argument("strip_orthogonality_check: cube region required");
    int d = form.dim();
    if (field_on_cube.box.d != d || field2.box.d != d)
        throw std::invalid_argument("strip_orthogonality_check: dimension mismatch");
    if (field_on_cube.box.radius != cube.half_side)
        throw std::invalid_argument("strip_orthogonality_check: cube field must match the cube side");
    bool degenerate = true;
    for (auto v : cube.center) degenerate = degenerate && v == 0;
    if (degenerate) throw std::invalid_argument("strip_orthogonality_check: degenerate cube center");

    std::int64_t M = std::max<std::int64_t>((N2 * N2 + N1 - 1) / N1, 1);
    auto strips = strip_partition(form, cube, M);

    // strip index per cube offset, through the public membership predicate
    std::vector<std::int64_t> n(static_cast<std::size_t>(d));
    std::vector<int> strip_of(static_cast<std::size_t>(field_on_cube.box.size()), -1);
    for (std::int64_t i = 0; i < field_on_cube.box.size(); ++i) {
        field_on_cube.box.decode(i, n);
        for (int j = 0; j < d; ++j) n[static_cast<std::size_t>(j)] += cube.center[static_cast<std::size_t>(j)];
        for (std::size_t sidx = 0; sidx < strips.size(); ++sidx) {
            if (strips[sidx].contains(form, n)) {
                strip_of[static_cast<std::size_t>(i)] = static_cast<int>(sidx);
                break;
            }
        }
        if (strip_of[static_cast<std::size_t>(i)] < 0)
            throw std::runtime_error("strip_orthogonality_check: partition does not cover the cube");
    }

    // tuples (m = n + n2) grouped over the sumset box around the cube center
    std::int64_t sum_radius = cube.half_side + field2.box.radius;
    FreqBox sumbox{d, sum_radius};
    struct Tup {
        double omega;
        float re, im;
        int strip;
    };
    std::vector<std::vector<Tup>> groups(static_cast<std::size_t>(sumbox.size()));
    std::vector<std::int64_t> n2v(static_cast<std::size_t>(d)), mv(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < field_on_cube.box.size(); ++i) {
        Complex c1 = field_on_cube.coeffs[static_cast<std::size_t>(i)];
        if (c1 == Complex(0, 0)) continue;
        field_on_cube.box.decode(i, n);
        for (int j = 0; j < d; ++j) n[static_cast<std::size_t>(j)] += cube.center[static_cast<std::size_t>(j)];
        double q1 = form(n);
        int sidx = strip_of[static_cast<std::size_t>(i)];
        for (std::int64_t i2 = 0; i2 < field2.box.size(); ++i2) {
            Complex c2 = field2.coeffs[static_cast<std::size_t>(i2)];
            if (c2 == Complex(0, 0)) continue;
            field2.box.decode(i2, n2v);
            for (int j = 0; j < d; ++j)
                mv[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>(j)] -
                                                  cube.center[static_cast<std::size_t>(j)] +
                                                  n2v[static_cast<std::size_t>(j)];
            Complex c = c1 * c2;
            groups[static_cast<std::size_t>(sumbox.index_of(mv))].push_back(
                {q1 + form(n2v), static_cast<float>(c.real()), static_cast<float>(c.imag()),
                 sidx});
        }
    }

    const double t0 = 0.0, t1 = 1.0;
    long double full = 0, same = 0, tail_mass = 0;
    for (auto& g : groups) {
        if (g.empty()) continue;
        std::sort(g.begin(), g.end(), [](const Tup& a, const Tup& b) { return a.omega < b.omega; });
        std::size_t ng = g.size();
        std::vector<double> zr(ng), zi(ng);
        long double l1 = 0, l2 = 0;
        for (std::size_t i = 0; i < ng; ++i) {
            double fr = g[i].omega - std::floor(g[i].omega);
            zr[i] = std::cos(kTau * fr);
            zi[i] = std::sin(kTau * fr);
            double a = std::hypot(static_cast<double>(g[i].re), static_cast<double>(g[i].im));
            l1 += a;
            l2 += a * a;
        }
        full += l2 * (t1 - t0);
        same += l2 * (t1 - t0);
        tail_mass += l1 * l1 - l2;
        std::size_t lo = 0;
        for (std::size_t i = 1; i < ng; ++i) {
            if (window > 0)
                while (g[i].omega - g[lo].omega > window) ++lo;
            for (std::size_t j = lo; j < i; ++j) {
                double dom = g[i].omega - g[j].omega;
                double cre = static_cast<double>(g[i].re) * g[j].re + static_cast<double>(g[i].im) * g[j].im;
                double cim = static_cast<double>(g[i].im) * g[j].re - static_cast<double>(g[i].re) * g[j].im;
                double ere, eim;
                if (dom < 1e-9) {
                    ere = t1 - t0;
                    eim = kTau * dom * (t1 - t0) * (t0 + t1) / 2.0;
                } else {
                    // E = (z_i conj(z_j) - 1) / (2 pi i dom), z = e^{2 pi i omega}
                    double wr = zr[i] * zr[j] + zi[i] * zi[j];
                    double wi = zi[i] * zr[j] - zr[i] * zi[j];
                    double denom = kTau * dom;
                    ere = wi / denom;
                    eim = -(wr - 1.0) / denom;
                }
                double contrib = 2.0 * (cre * ere - cim * eim);
                full += contrib;
                if (g[i].strip == g[j].strip) same += contrib;
            }
        }
    }

    StripOrthogonality out;
    out.lhs_sq = static_cast<double>(full);
    out.strip_sum_sq = static_cast<double>(same);
    out.ratio = out.lhs_sq / out.strip_sum_sq;
    out.tail_bound = (window > 0) ? static_cast<double>(tail_mass) / (std::numbers::pi * window) : 0.0;
    out.strips = static_cast<int>(strips.size());
    return out;
}

HausdorffYoungResult hausdorff_young_check(const QuadraticForm& form,
                                           const BandLimitedField& coeffs,
                                           std::span<const std::int64_t> a, double p) {
    if (!(p >= 2)) throw std::invalid_argument("hausdorff_young_check: p >= 2 required");
    int d = form.dim();
    if (static_cast<int>(a.size()) != d)
        throw std::invalid_argument("hausdorff_young_check: dimension mismatch");

    struct Mode {
        double omega;
        Complex c;
    };
    std::vector<Mode> modes;
    std::vector<std::int64_t> n(static_cast<std::size_t>(d)), m(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < coeffs.box.size(); ++i) {
        Complex cn = coeffs.coeffs[static_cast<std::size_t>(i)];
        if (cn == Complex(0, 0)) continue;
        coeffs.box.decode(i, n);
        bool inside = true;
        for (int j = 0; j < d; ++j) {
            m[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] - n[static_cast<std::size_t>(j)];
            inside = inside && std::llabs(m[static_cast<std::size_t>(j)]) <= coeffs.box.radius;
        }
        if (!inside) continue;
        Complex cm = coeffs.coeffs[static_cast<std::size_t>(coeffs.box.index_of(m))];
        if (cm == Complex(0, 0)) continue;
        modes.push_back({form(n) + form(m), cn * cm});
    }
    HausdorffYoungResult out;
    if (modes.empty()) return out;

    double lo = modes[0].omega, hi = modes[0].omega;
    for (const auto& md : modes) {
        lo = std::min(lo, md.omega);
        hi = std::max(hi, md.omega);
    }
    double span = hi - lo;
    auto eval = [&](double t) {
        Complex f = 0;
        for (const auto& md : modes) {
            double ph = md.omega * t;
            f += md.c * std::polar(1.0, kTau * (ph - std::floor(ph)));
        }
        return pow_abs2(std::norm(f), p);
    };
    double integral = integrate_oscillatory(-1.0, 1.0, std::max(1.0, span * p / 2.0), eval);
    out.lhs = std::pow(integral, 1.0 / p);

    // exact bucketing: omega - k in (-1/2, 1/2]
    std::unordered_map<std::int64_t, double> buckets;
    for (const auto& md : modes)
        buckets[static_cast<std::int64_t>(std::ceil(md.omega - 0.5))] += std::abs(md.c);
    double pprime = p / (p - 1.0);
    double rhs = 0;
    for (const auto& [k, v] : buckets) rhs += std::pow(v, pprime);
    out.rhs = std::pow(rhs, 1.0 / pprime);
    out.ratio = out.lhs / out.rhs;
    return out;
}

SpaceTimeTestFn SpaceTimeTestFn::random(const FreqBox& box, std::int64_t time_modes,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    SpaceTimeTestFn f;
    f.box = box;
    f.time_modes = time_modes;
    f.coeffs.resize(static_cast<std::size_t>(box.size() * (2 * time_modes + 1)));
    double s2 = 0;
    for (auto& c : f.coeffs) {
        c = Complex(g(rng), g(rng));
        s2 += std::norm(c);
    }
    for (auto& c : f.coeffs) c /= std::sqrt(s2);
    return f;
}

Complex SpaceTimeTestFn::coefficient(std::int64_t box_index, std::int64_t j) const {
    return coeffs[static_cast<std::size_t>(box_index * (2 * time_modes + 1) + (j + time_modes))];
}

DualKernelResult dual_kernel_check(const QuadraticForm& form, const SpaceTimeTestFn& f, double p,
                                   const SpaceTimeGrid& grid) {
    if (form.dim() != 2) throw std::invalid_argument("dual_kernel_check: d = 2 required");
    if (!(p > 12)) throw std::invalid_argument("dual_kernel_check: p > 12 required");
    const FreqBox& box = f.box;
    std::int64_t N = box.radius;
    std::int64_t P = grid.points_per_axis;
    if (P < box.side()) throw std::invalid_argument("dual_kernel_check: grid too coarse");
    std::int64_t T = grid.time_samples;
    std::int64_t sz = P * P;
    std::vector<int> dims{static_cast<int>(P), static_cast<int>(P)};

    // sample g = 1_I f on the grid, slice by slice
    std::vector<std::vector<Complex>> slices(static_cast<std::size_t>(T));
    std::vector<std::int64_t> n(2);
    for (std::int64_t i = 0; i < T; ++i) {
        auto& s = slices[static_cast<std::size_t>(i)];
        s.assign(static_cast<std::size_t>(sz), Complex(0, 0));
        double t = grid.time(i);
        for (std::int64_t bi = 0; bi < box.size(); ++bi) {
            box.decode(bi, n);
            Complex amp = 0;
            for (std::int64_t j = -f.time_modes; j <= f.time_modes; ++j)
                amp += f.coefficient(bi, j) * std::polar(1.0, kTau * static_cast<double>(j) * t);
            std::int64_t pos = ((n[0] % P + P) % P) * P + ((n[1] % P + P) % P);
            s[static_cast<std::size_t>(pos)] += amp;
        }
        fft::transform(dims, s.data(), +1);
    }

    // left side: direct space-time Fourier evaluation of g^(n, Q(n))
    std::vector<Complex> ghat(static_cast<std::size_t>(box.size()), 0.0);
    {
        std::vector<Complex> xphase1(static_cast<std::size_t>(P)), xphase2(static_cast<std::size_t>(P));
        for (std::int64_t bi = 0; bi < box.size(); ++bi) {
            box.decode(bi, n);
            for (std::int64_t g = 0; g < P; ++g) {
                double frac = static_cast<double>(g) / static_cast<double>(P);
                xphase1[static_cast<std::size_t>(g)] =
                    std::polar(1.0, -kTau * static_cast<double>(n[0]) * frac);
                xphase2[static_cast<std::size_t>(g)] =
                    std::polar(1.0, -kTau * static_cast<double>(n[1]) * frac);
            }
            double q = form(n);
            Complex acc = 0;
            for (std::int64_t i = 0; i < T; ++i) {
                const auto& s = slices[static_cast<std::size_t>(i)];
                Complex spatial = 0;
                for (std::int64_t x1 = 0; x1 < P; ++x1) {
                    Complex row = 0;
                    const Complex* base = s.data() + x1 * P;
                    for (std::int64_t x2 = 0; x2 < P; ++x2)
                        row += base[x2] * xphase2[static_cast<std::size_t>(x2)];
                    spatial += row * xphase1[static_cast<std::size_t>(x1)];
                }
                double t = grid.time(i), ph = q * t;
                acc += grid.weight(i) * spatial / static_cast<double>(sz) *
                       std::polar(1.0, -kTau * (ph - std::floor(ph)));
            }
            ghat[static_cast<std::size_t>(bi)] = acc;
        }
    }
    double lhsum = 0;
    for (const auto& z : ghat) lhsum += std::norm(z);

    // right side: <R * g, g> through the kernel convolution (spatial FFT,
    // literal quadrature sum over the time shift)
    double rhsum = 0;
    {
        // spatial spectra of the slices
        std::vector<std::vector<Complex>> spec(static_cast<std::size_t>(T));
        for (std::int64_t i = 0; i < T; ++i) {
            spec[static_cast<std::size_t>(i)] = slices[static_cast<std::size_t>(i)];
            fft::transform(dims, spec[static_cast<std::size_t>(i)].data(), -1);
            for (auto& z : spec[static_cast<std::size_t>(i)]) z /= static_cast<double>(sz);
        }
        std::vector<double> qvals(static_cast<std::size_t>(box.size()));
        std::vector<std::int64_t> pos(static_cast<std::size_t>(box.size()));
        for (std::int64_t bi = 0; bi < box.size(); ++bi) {
            box.decode(bi, n);
            qvals[static_cast<std::size_t>(bi)] = form(n);
            pos[static_cast<std::size_t>(bi)] = ((n[0] % P + P) % P) * P + ((n[1] % P + P) % P);
        }
        Complex inner = 0;
        std::vector<Complex> conv(static_cast<std::size_t>(sz));
        for (std::int64_t i = 0; i < T; ++i) {
            std::fill(conv.begin(), conv.end(), Complex(0, 0));
            double ti = grid.time(i);
            for (std::int64_t bi = 0; bi < box.size(); ++bi) {
                Complex h = 0;
                double q = qvals[static_cast<std::size_t>(bi)];
                for (std::int64_t sdx = 0; sdx < T; ++sdx) {
                    double ph = q * (ti - grid.time(sdx));
                    h += grid.weight(sdx) * spec[static_cast<std::size_t>(sdx)][static_cast<std::size_t>(pos[static_cast<std::size_t>(bi)])] *
                         std::polar(1.0, kTau * (ph - std::floor(ph)));
                }
                conv[static_cast<std::size_t>(pos[static_cast<std::size_t>(bi)])] = h;
            }
            fft::transform(dims, conv.data(), +1);
            const auto& s = slices[static_cast<std::size_t>(i)];
            Complex loc = 0;
            for (std::int64_t g = 0; g < sz; ++g)
                loc += conv[static_cast<std::size_t>(g)] * std::conj(s[static_cast<std::size_t>(g)]);
            inner += grid.weight(i) * loc / static_cast<double>(sz);
        }
        rhsum = inner.real();
    }

    DualKernelResult out;
    out.lhsum = lhsum;
    out.identity_residual = std::abs(lhsum - rhsum) / std::max({lhsum, rhsum, 1e-300});

    // Hoelder bound ||R||_{L^{p/2}(2I x T^2)} ||f||_{p'}^2 with the product
    // kernel integrated over the time-difference interval
    {
        double half = p / 2.0;
        std::int64_t Px = fft::next_smooth(static_cast<std::int64_t>(std::ceil(half)) * 2 * N + 2);
        double theta1 = form.theta()[0], theta2 = form.theta()[1];
        auto kernel_slice = [&](double t) {
            double i1 = 0, i2 = 0;
            for (std::int64_t g = 0; g < Px; ++g) {
                double x = static_cast<double>(g) / static_cast<double>(Px);
                i1 += pow_abs2(std::norm(quad_kernel(N, theta1, x, t)), half);
                i2 += pow_abs2(std::norm(quad_kernel(N, theta2, x, t)), half);
            }
            return (i1 / static_cast<double>(Px)) * (i2 / static_cast<double>(Px));
        };
        double maxfreq = half * form.comparability() * static_cast<double>(N) * static_cast<double>(N);
        double len = grid.interval();
        double rint = integrate_oscillatory(-len, len, maxfreq, kernel_slice);
        double rnorm = std::pow(rint, 1.0 / half);

        double pprime = p / (p - 1.0);
        double facc = 0;
        for (std::int64_t i = 0; i < T; ++i) {
            const auto& s = slices[static_cast<std::size_t>(i)];
            double local = 0;
            for (const auto& z : s) local += pow_abs2(std::norm(z), pprime);
            facc += grid.weight(i) * local / static_cast<double>(sz);
        }
        double fnorm = std::pow(facc, 1.0 / pprime);
        out.bound = rnorm * fnorm * fnorm;
    }
    return out;
}

}  // namespace stri
