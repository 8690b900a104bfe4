#include "gnp/charfn.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "gnp/numeric.hpp"
#include "gnp/parallel.hpp"
#include "gnp/triangle.hpp"

namespace gnp {

namespace {

constexpr double kPi = std::numbers::pi;

bool within(double t, double lo, double hi) {
    const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    return t >= lo - slack && t <= hi + slack;
}

double point_of(const LatticePmf& pmf, std::int64_t k, const std::optional<Normalization>& norm) {
    const double x = pmf.value(k);
    return norm ? (x - norm->mu) / norm->sigma : x;
}

template <class Integrand>
QuadratureResult trapezoid(double lo, double hi, std::size_t intervals, double tolerance, Integrand&& g) {
    if (intervals < 2 || intervals % 2 != 0) throw std::invalid_argument("quadrature needs an even interval count");
    const double dt = (hi - lo) / static_cast<double>(intervals);
    std::vector<double> vals(intervals + 1);
    for_each_block(intervals + 1, worker_count(), [&](unsigned, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t j = b; j < e; ++j) vals[j] = g(lo + dt * static_cast<double>(j));
    });
    CompensatedSum fine;
    CompensatedSum coarse;
    for (std::size_t j = 0; j <= intervals; ++j) {
        const double w = (j == 0 || j == intervals) ? 0.5 : 1.0;
        fine.add(w * vals[j]);
        if (j % 2 == 0) coarse.add(w * vals[j]);
    }
    const double f = fine.value() * dt;
    const double c = coarse.value() * 2.0 * dt;
    return {f, c, std::abs(f - c) < tolerance};
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {lo};
    std::vector<double> ts(points);
    const double dt = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t j = 0; j < points; ++j) ts[j] = lo + dt * static_cast<double>(j);
    ts.back() = hi;
    return ts;
}

Complex chf_at(const LatticePmf& pmf, double t, const std::optional<Normalization>& norm) {
    CompensatedSum re;
    CompensatedSum im;
    for (const auto& [k, pr] : pmf.probs) {
        const double a = t * point_of(pmf, k, norm);
        re.add(pr * std::cos(a));
        im.add(pr * std::sin(a));
    }
    return {re.value(), im.value()};
}

ChfGrid chf_from_pmf(const LatticePmf& pmf, std::span<const double> ts, const std::optional<Normalization>& norm) {
    ChfGrid out{std::vector<double>(ts.begin(), ts.end()), std::vector<Complex>(ts.size())};
    for_each_block(ts.size(), worker_count(), [&](unsigned, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t j = b; j < e; ++j) out.values[j] = ts[j] == 0.0 ? Complex{1.0, 0.0} : chf_at(pmf, ts[j], norm);
    });
    return out;
}

double lattice_spacing(const LatticePmf& pmf, const std::optional<Normalization>& norm) {
    return norm ? pmf.spacing / norm->sigma : pmf.spacing;
}

QuadratureResult invert_lattice(const ChfGrid& chf, double x, double h, double tolerance) {
    if (!(h > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    const std::size_t points = chf.ts.size();
    if (points < 3 || chf.values.size() != points) throw std::invalid_argument("chf grid too small");
    const std::size_t intervals = points - 1;
    if (intervals % 2 != 0) throw std::invalid_argument("inversion grid needs an even interval count");
    const double half = kPi / h;
    const double scale = std::max(1.0, half);
    if (std::abs(chf.ts.front() + half) > 1e-9 * scale || std::abs(chf.ts.back() - half) > 1e-9 * scale) {
        throw std::invalid_argument("inversion grid must span [-pi/h, pi/h]");
    }
    const double dt = (chf.ts.back() - chf.ts.front()) / static_cast<double>(intervals);
    for (std::size_t j = 1; j < points; ++j) {
        if (std::abs(chf.ts[j] - chf.ts[j - 1] - dt) > 1e-6 * dt) throw std::invalid_argument("inversion grid must be uniform");
    }
    CompensatedSum fine;
    CompensatedSum coarse;
    for (std::size_t j = 0; j < points; ++j) {
        const double w = (j == 0 || j == intervals) ? 0.5 : 1.0;
        // real part of e^{-itx} phi(t)
        const double a = chf.ts[j] * x;
        const double v = chf.values[j].real() * std::cos(a) + chf.values[j].imag() * std::sin(a);
        fine.add(w * v);
        if (j % 2 == 0) coarse.add(w * v);
    }
    const double pref = h / (2.0 * kPi);
    const double f = pref * fine.value() * dt;
    const double c = pref * coarse.value() * 2.0 * dt;
    return {f, c, std::abs(f - c) < tolerance};
}

double pointwise_gap_bound(double gap_integral, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    const double t = kPi / h;
    return h * (gap_integral + std::exp(-t * t / 2.0) / (std::sqrt(2.0 * kPi) * t));
}

QuadratureResult chf_gap_integral(const LatticePmf& pmf, const Normalization& norm, double tmax,
                                  std::size_t intervals, double tolerance) {
    auto r = trapezoid(0.0, tmax, intervals, tolerance, [&](double t) {
        return std::abs(chf_at(pmf, t, norm) - std::exp(-t * t / 2.0));
    });
    r.value *= 2.0;
    r.coarse *= 2.0;
    r.resolved = std::abs(r.value - r.coarse) < tolerance;
    return r;
}

QuadratureResult smoothing_integral(const LatticePmf& pmf, const Normalization& norm, double cutoff,
                                    std::size_t intervals, double tolerance) {
    const double mean_z = (pmf.mean() - norm.mu) / norm.sigma;
    auto r = trapezoid(0.0, cutoff, intervals, tolerance, [&](double t) {
        // (phi_Z(t) - e^{-t^2/2}) / t -> i E[Z] as t -> 0
        if (t == 0.0) return std::abs(mean_z);
        return std::abs((chf_at(pmf, t, norm) - std::exp(-t * t / 2.0)) / t);
    });
    r.value *= 2.0;
    r.coarse *= 2.0;
    r.resolved = std::abs(r.value - r.coarse) < tolerance;
    return r;
}

double smoothing_bound(double gap_over_t_integral, double cutoff) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("smoothing cutoff must be positive");
    return gap_over_t_integral / kPi + 24.0 / (kPi * std::sqrt(2.0 * kPi) * cutoff);
}

BernoulliChfBound bernoulli_chf_bound(double p, double t) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bias must lie in (0,1)");
    const double spq = std::sqrt(p * (1.0 - p));
    if (!(std::abs(t) < spq * kPi)) throw std::invalid_argument("t outside |t| < sqrt(p(1-p)) pi");
    const double s = std::sin(t / (2.0 * spq));
    return {std::sqrt(1.0 - 4.0 * p * (1.0 - p) * s * s), 1.0 - 2.0 * t * t / (kPi * kPi)};
}

BerryEsseenTerm berry_esseen_term(std::uint32_t n, double p, double t) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bias must lie in (0,1)");
    const double q = 1.0 - p;
    const double l_n = (p * p + q * q) / std::sqrt(binomial(n, 2) * p * q);
    const double at = std::abs(t);
    const double t_max = 1.0 / (4.0 * l_n);
    return {l_n, 16.0 * l_n * at * at * at * std::exp(-t * t / 3.0), t_max, at <= t_max};
}

double hypercontractive_threshold(unsigned k, double lambda) {
    if (k == 0) throw std::invalid_argument("degree must be positive");
    if (!(lambda > 0.0 && lambda <= 0.5)) throw std::invalid_argument("lambda = min(p,1-p) must lie in (0, 1/2]");
    return std::pow(std::sqrt(2.0 * std::numbers::e / lambda), k);
}

double hypercontractive_tail(unsigned k, double lambda, double t) {
    if (t < hypercontractive_threshold(k, lambda)) throw std::invalid_argument("t below the tail bound's threshold");
    return std::pow(lambda, k) * std::exp(-(k / (2.0 * std::numbers::e)) * lambda * std::pow(t, 2.0 / k));
}

Regime parse_regime(const std::string& name) {
    if (name == "small") return Regime::small;
    if (name == "mid") return Regime::mid;
    if (name == "large") return Regime::large;
    if (name == "huge") return Regime::huge;
    throw std::invalid_argument("unknown regime '" + name + "'");
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::small: return "small";
        case Regime::mid: return "mid";
        case Regime::large: return "large";
        case Regime::huge: return "huge";
    }
    return "?";
}

RegimeWindow regime_window(Regime r, std::uint32_t n, double p, const ShapeParams& params) {
    const double nn = n;
    const double e = params.eps;
    switch (r) {
        case Regime::small: return {0.0, berry_esseen_term(n, p, 0.0).t_max};
        case Regime::mid: return {std::pow(nn, e), std::pow(nn, 0.5 + e / 4.0)};
        case Regime::large: return {std::pow(nn, 0.5 + e), std::pow(nn, 1.0 - e)};
        case Regime::huge: {
            const double sigma = params.sigma > 0.0 ? params.sigma : triangle_moments(n, p).sigma;
            return {std::pow(nn, 0.5 + e), kPi * sigma};
        }
    }
    throw std::logic_error("bad regime");
}

double theorem_bound_shape(std::uint32_t n, double p, double t, Regime r, const ShapeParams& params) {
    const auto w = regime_window(r, n, p, params);
    const double at = std::abs(t);
    const bool ok = r == Regime::mid ? (at > w.lo && within(at, w.lo, w.hi)) : within(at, w.lo, w.hi);
    if (!ok) throw std::invalid_argument("t outside the " + regime_name(r) + " regime window");
    const double nn = n;
    const double c = params.constant;
    switch (r) {
        case Regime::small: return c * small_t_shape(n, t);
        case Regime::mid: return c / (std::sqrt(nn) * std::pow(at, 1.0 - params.eps));
        case Regime::large: return c / (at * std::pow(nn, 1.0 - params.eps));
        case Regime::huge: return c * std::pow(at, -50.0);
    }
    throw std::logic_error("bad regime");
}

double small_t_shape(std::uint32_t n, double t) {
    if (n == 0) throw std::invalid_argument("need n >= 1");
    const double at = std::abs(t);
    const double nn = n;
    return at * at * at * std::exp(-t * t / 3.0) / nn + at / std::sqrt(nn);
}

void write_chf_csv(std::ostream& os, const ChfGrid& chf) {
    const auto old_precision = os.precision();
    os << "# schema=gnp.chf/1\n";
    os << "t,re,im,modulus,normal_chf,gap\n";
    os << std::setprecision(17);
    for (std::size_t j = 0; j < chf.ts.size(); ++j) {
        const double t = chf.ts[j];
        const Complex v = chf.values[j];
        const double g = std::exp(-t * t / 2.0);
        os << t << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << ',' << g << ','
           << std::abs(v - g) << '\n';
    }
    os.precision(old_precision);
}

}  // namespace gnp
