#include "gnp/distribution.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "gnp/numeric.hpp"
#include "gnp/parallel.hpp"
#include "gnp/triangle.hpp"

namespace gnp {

namespace {

constexpr double kWilsonZ = 1.959963984540054;

void check_enumerable(std::uint32_t n) {
    if (pair_count(n) > kMaxEnumerationSlots) {
        throw std::invalid_argument("exact enumeration needs C(n,2) <= 30 (n <= 8)");
    }
}

void check_bias(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bias must lie in (0,1)");
}

// p^e (1-p)^(m-e) for e = 0..m
std::vector<double> edge_count_weights(std::uint64_t m, double p) {
    std::vector<double> w(m + 1);
    for (std::uint64_t e = 0; e <= m; ++e) {
        w[e] = std::pow(p, static_cast<double>(e)) * std::pow(1.0 - p, static_cast<double>(m - e));
    }
    return w;
}

BinError bin_error(std::uint64_t count, std::uint64_t samples) {
    const double nn = static_cast<double>(samples);
    const double ph = static_cast<double>(count) / nn;
    const double z2 = kWilsonZ * kWilsonZ;
    const double centre = (ph + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
    const double half = kWilsonZ / (1.0 + z2 / nn) * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
    return {count, std::sqrt(ph * (1.0 - ph) / nn), std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace

std::string statistic_name(const Statistic& s) {
    if (std::holds_alternative<TriangleStatistic>(s)) return "triangle";
    return std::get<BaseFunction>(s).name;
}

double evaluate_statistic(const Statistic& s, const Graph& g) {
    if (std::holds_alternative<TriangleStatistic>(s)) return static_cast<double>(triangle_count(g));
    return evaluate_graph_statistic(std::get<BaseFunction>(s), g);
}

double statistic_mean(const Statistic& s, std::uint32_t n, double p) {
    if (std::holds_alternative<TriangleStatistic>(s)) return triangle_moments(n, p).mu;
    return GraphStatistic(std::get<BaseFunction>(s), p).mean(n);
}

double statistic_variance(const Statistic& s, std::uint32_t n, double p) {
    if (std::holds_alternative<TriangleStatistic>(s)) return triangle_moments(n, p).sigma2;
    return GraphStatistic(std::get<BaseFunction>(s), p).variance(n).sigma2;
}

double LatticePmf::probability(std::int64_t index) const {
    auto it = probs.find(index);
    return it == probs.end() ? 0.0 : it->second;
}

double LatticePmf::total() const {
    CompensatedSum acc;
    for (const auto& [k, pr] : probs) acc.add(pr);
    return acc.value();
}

double LatticePmf::mean() const {
    CompensatedSum acc;
    for (const auto& [k, pr] : probs) acc.add(pr * value(k));
    return acc.value();
}

double LatticePmf::variance() const {
    const double mu = mean();
    CompensatedSum acc;
    for (const auto& [k, pr] : probs) {
        const double d = value(k) - mu;
        acc.add(pr * d * d);
    }
    return acc.value();
}

double ValuePmf::total() const {
    CompensatedSum acc;
    for (const auto& [v, pr] : atoms) acc.add(pr);
    return acc.value();
}

double ValuePmf::mean() const {
    CompensatedSum acc;
    for (const auto& [v, pr] : atoms) acc.add(pr * v);
    return acc.value();
}

double ValuePmf::variance() const {
    const double mu = mean();
    CompensatedSum acc;
    for (const auto& [v, pr] : atoms) acc.add(pr * (v - mu) * (v - mu));
    return acc.value();
}

LatticePmf to_lattice(const ValuePmf& pmf) {
    if (pmf.atoms.empty()) throw std::invalid_argument("empty distribution");
    std::vector<std::pair<std::int64_t, double>> ints;
    for (const auto& [v, pr] : pmf.atoms) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) {
            throw std::invalid_argument("statistic is not integer valued; no lattice form");
        }
        ints.emplace_back(static_cast<std::int64_t>(r), pr);
    }
    const std::int64_t lo = ints.front().first;
    std::int64_t g = 0;
    for (const auto& [v, pr] : ints) g = std::gcd(g, v - lo);
    if (g == 0) g = 1;
    LatticePmf out;
    out.offset = static_cast<double>(lo);
    out.spacing = static_cast<double>(g);
    for (const auto& [v, pr] : ints) out.probs[(v - lo) / g] += pr;
    return out;
}

LatticePmf exact_triangle_pmf(std::uint32_t n, double p) {
    check_bias(p);
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    check_enumerable(n);
    const std::uint64_t m = pair_count(n);
    const std::uint64_t max_t = n >= 3 ? binomial_exact(n, 3) : 0;
    const std::uint64_t stride = m + 1;

    std::vector<std::pair<Vertex, Vertex>> ends(m);
    for (std::uint64_t e = 0; e < m; ++e) ends[e] = edge_endpoints(n, static_cast<EdgeId>(e));

    const std::uint64_t total = std::uint64_t{1} << m;
    const unsigned blocks = worker_count();
    std::vector<std::vector<std::uint64_t>> block_counts(blocks);

    // Visit graphs in reflected Gray-code order; consecutive graphs differ in one edge, whose
    // toggle changes the triangle count by the number of common neighbours of its endpoints.
    for_each_block(total, blocks, [&](unsigned b, std::uint64_t begin, std::uint64_t end) {
        auto& counts = block_counts[b];
        counts.assign((max_t + 1) * stride, 0);
        if (begin == end) return;
        std::array<std::uint32_t, 32> adj{};
        std::uint64_t code = begin ^ (begin >> 1);
        std::uint64_t tri = 0;
        std::uint64_t edges = 0;
        for (std::uint64_t e = 0; e < m; ++e) {
            if (!((code >> e) & 1u)) continue;
            auto [i, j] = ends[e];
            tri += static_cast<std::uint64_t>(std::popcount(adj[i] & adj[j]));
            adj[i] |= 1u << j;
            adj[j] |= 1u << i;
            ++edges;
        }
        ++counts[tri * stride + edges];
        for (std::uint64_t r = begin + 1; r < end; ++r) {
            const auto e = static_cast<unsigned>(std::countr_zero(r));
            auto [i, j] = ends[e];
            const auto common = static_cast<std::uint64_t>(std::popcount(adj[i] & adj[j]));
            if ((adj[i] >> j) & 1u) {
                tri -= common;
                --edges;
            } else {
                tri += common;
                ++edges;
            }
            adj[i] ^= 1u << j;
            adj[j] ^= 1u << i;
            ++counts[tri * stride + edges];
        }
    });

    std::vector<std::uint64_t> counts((max_t + 1) * stride, 0);
    for (const auto& bc : block_counts) {
        for (std::size_t i = 0; i < bc.size(); ++i) counts[i] += bc[i];
    }
    const auto w = edge_count_weights(m, p);
    LatticePmf out;
    for (std::uint64_t t = 0; t <= max_t; ++t) {
        CompensatedSum acc;
        bool any = false;
        for (std::uint64_t e = 0; e <= m; ++e) {
            const std::uint64_t c = counts[t * stride + e];
            if (c == 0) continue;
            any = true;
            acc.add(static_cast<double>(c) * w[e]);
        }
        if (any) out.probs[static_cast<std::int64_t>(t)] = acc.value();
    }
    return out;
}

ValuePmf exact_distribution(const Statistic& s, std::uint32_t n, double p) {
    check_bias(p);
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    check_enumerable(n);
    if (std::holds_alternative<TriangleStatistic>(s)) {
        ValuePmf out;
        for (const auto& [k, pr] : exact_triangle_pmf(n, p).probs) out.atoms[static_cast<double>(k)] = pr;
        return out;
    }
    const auto& f = std::get<BaseFunction>(s);
    if (f.k > n) throw std::invalid_argument("graph statistic needs k <= n");
    const std::uint64_t m = pair_count(n);
    const auto w = edge_count_weights(m, p);
    std::map<double, std::vector<std::uint64_t>> by_value;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
        const double v = evaluate_graph_statistic(f, Graph::from_mask(n, x));
        auto& row = by_value[v];
        if (row.empty()) row.assign(m + 1, 0);
        ++row[static_cast<std::size_t>(std::popcount(x))];
    }
    ValuePmf out;
    for (const auto& [v, row] : by_value) {
        CompensatedSum acc;
        for (std::uint64_t e = 0; e <= m; ++e) {
            if (row[e] != 0) acc.add(static_cast<double>(row[e]) * w[e]);
        }
        out.atoms[v] = acc.value();
    }
    return out;
}

LatticePmf exact_pmf(const Statistic& s, std::uint32_t n, double p) {
    if (std::holds_alternative<TriangleStatistic>(s)) return exact_triangle_pmf(n, p);
    return to_lattice(exact_distribution(s, n, p));
}

LatticePmf mc_pmf(const Statistic& s, std::uint32_t n, std::uint64_t samples, const Sampler& sampler) {
    if (samples == 0) throw std::invalid_argument("need at least one sample");
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    if (const auto* f = std::get_if<BaseFunction>(&s)) {
        for (double v : f->table) {
            if (v != std::round(v)) throw std::invalid_argument("Monte Carlo pmf needs an integer-valued statistic");
        }
        if (f->k > n) throw std::invalid_argument("graph statistic needs k <= n");
    }
    const unsigned blocks = worker_count();
    std::vector<std::map<std::int64_t, std::uint64_t>> block_counts(blocks);
    for_each_block(samples, blocks, [&](unsigned b, std::uint64_t begin, std::uint64_t end) {
        auto& counts = block_counts[b];
        for (std::uint64_t i = begin; i < end; ++i) {
            const double v = evaluate_statistic(s, sample_gnp(sampler, n, i));
            ++counts[static_cast<std::int64_t>(std::round(v))];
        }
    });
    std::map<std::int64_t, std::uint64_t> counts;
    for (const auto& bc : block_counts) {
        for (const auto& [v, c] : bc) counts[v] += c;
    }
    LatticePmf out;
    out.samples = samples;
    for (const auto& [v, c] : counts) {
        out.probs[v] = static_cast<double>(c) / static_cast<double>(samples);
        out.errors[v] = bin_error(c, samples);
    }
    return out;
}

double DiscreteNormalRef::density(double x) const noexcept {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

DiscreteNormalRef discrete_normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normal reference needs sigma > 0");
    return {mu, sigma};
}

DistanceReport distance_report(const LatticePmf& pmf, const DiscreteNormalRef& ref) {
    if (pmf.probs.empty()) throw std::invalid_argument("empty pmf");
    const double h = pmf.spacing;
    const double radius = 12.0 * ref.sigma;
    const auto lo_ref = static_cast<std::int64_t>(std::floor((ref.mu - radius - pmf.offset) / h));
    const auto hi_ref = static_cast<std::int64_t>(std::ceil((ref.mu + radius - pmf.offset) / h));
    const std::int64_t first = std::min(pmf.probs.begin()->first, lo_ref);
    const std::int64_t last = std::max(pmf.probs.rbegin()->first, hi_ref);

    double linf = 0.0;
    double kol = 0.0;
    CompensatedSum l1;
    CompensatedSum cdf;
    for (std::int64_t k = first; k <= last; ++k) {
        const double x = pmf.value(k);
        const double pr = pmf.probability(k);
        const double gap = std::abs(pr - h * ref.density(x));
        linf = std::max(linf, gap);
        l1.add(gap);
        const double phi = normal_cdf((x - ref.mu) / ref.sigma);
        const double before = cdf.value();
        cdf.add(pr);
        kol = std::max({kol, std::abs(before - phi), std::abs(cdf.value() - phi)});
    }
    return {linf, l1.value(), kol, first, last};
}

double l1_from_pointwise_bound(double delta, double eps, double a, double h) {
    if (!(a > 0.0)) throw std::invalid_argument("truncation radius A must be positive");
    return 2.0 * a * delta + eps + h / (std::sqrt(2.0 * std::numbers::pi) * a) * std::exp(-a * a / 2.0);
}

double expected_sampling_l1(const LatticePmf& truth, std::uint64_t samples) {
    const double nn = static_cast<double>(samples);
    CompensatedSum acc;
    for (const auto& [k, pr] : truth.probs) acc.add(std::sqrt(2.0 * pr * (1.0 - pr) / (std::numbers::pi * nn)));
    return acc.value();
}

double wilson_noise_floor(const LatticePmf& pmf) {
    double w = 0.0;
    for (const auto& [k, e] : pmf.errors) w = std::max(w, (e.wilson_hi - e.wilson_lo) / 2.0);
    return w;
}

void write_pmf_csv(std::ostream& os, const LatticePmf& pmf, const DiscreteNormalRef& ref) {
    const auto old_precision = os.precision();
    os << "# schema=gnp.pmf/1\n";
    os << "k,prob,ref_density,abs_gap\n";
    os << std::setprecision(17);
    if (!pmf.probs.empty()) {
        for (std::int64_t k = pmf.probs.begin()->first; k <= pmf.probs.rbegin()->first; ++k) {
            const double x = pmf.value(k);
            const double pr = pmf.probability(k);
            const double d = pmf.spacing * ref.density(x);
            os << x << ',' << pr << ',' << d << ',' << std::abs(pr - d) << '\n';
        }
    }
    os.precision(old_precision);
}

}  // namespace gnp
