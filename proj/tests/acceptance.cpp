// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Optional arguments select criteria by number, e.g. `acceptance 3 12`.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gnp/charfn.hpp"
#include "gnp/distribution.hpp"
#include "gnp/fourier.hpp"
#include "gnp/graph.hpp"
#include "gnp/graph_statistic.hpp"
#include "gnp/numeric.hpp"
#include "gnp/restriction.hpp"
#include "gnp/sampler.hpp"
#include "gnp/triangle.hpp"
#include "support.hpp"

using namespace gnp;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass;
    std::string detail;
};

class Detail {
public:
    template <class T>
    Detail& operator()(const std::string& key, const T& value) {
        if (!first_) os_ << ' ';
        first_ = false;
        os_ << key << '=' << value;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_{[] {
        std::ostringstream o;
        o.precision(6);
        return o;
    }()};
    bool first_ = true;
};

// exact pmfs are shared between criteria; n = 8 costs about a second each time
const LatticePmf& exact_cached(std::uint32_t n, double p) {
    static std::map<std::pair<std::uint32_t, double>, LatticePmf> cache;
    auto it = cache.find({n, p});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, p), exact_triangle_pmf(n, p)).first;
    return it->second;
}

Normalization normalization(std::uint32_t n, double p) {
    const auto m = triangle_moments(n, p);
    return {m.mu, m.sigma};
}

DistanceReport distances(std::uint32_t n, double p) {
    const auto m = triangle_moments(n, p);
    return distance_report(exact_cached(n, p), discrete_normal(m.mu, m.sigma));
}

std::vector<double> triangle_table(std::uint32_t n) { return testing_support::triangle_table(n); }

Outcome spectrum_equivalence() {
    double worst = 0.0;
    std::size_t compared = 0;
    for (std::uint32_t n : {3u, 4u, 5u}) {
        const auto table = triangle_table(n);
        for (double p : {0.3, 0.5, 0.7}) {
            const auto closed = closed_triangle_spectrum(n, p);
            const auto brute = brute_force_coefficients(table, p);
            for (std::uint64_t s = 0; s < brute.size(); ++s) {
                worst = std::max(worst, std::abs(closed.coefficient(EdgeSet::from_mask(s)) - brute[s]));
                ++compared;
            }
        }
    }
    return {worst < 1e-10, Detail()("coefficients", compared)("max_abs_diff", worst).str()};
}

Outcome parseval_variance_check() {
    double worst_closed = 0.0;
    double worst_parseval = 0.0;
    for (std::uint32_t n = 3; n <= 7; ++n) {
        for (double p : {0.3, 0.5, 0.7}) {
            const double var = exact_cached(n, p).variance();
            worst_closed = std::max(worst_closed, std::abs(var - triangle_moments(n, p).sigma2));
            worst_parseval = std::max(worst_parseval, std::abs(var - parseval_variance(closed_triangle_spectrum(n, p))));
        }
    }
    return {worst_closed < 1e-9 && worst_parseval < 1e-9,
            Detail()("max_diff_closed_form", worst_closed)("max_diff_parseval", worst_parseval).str()};
}

Outcome asymptotic_sigma() {
    bool pass = true;
    Detail d;
    for (double p : {0.3, 0.5}) {
        const double ratio = triangle_moments(200, p).asymptotic_ratio;
        pass = pass && ratio >= 0.95 && ratio <= 1.05;
        d("ratio_p" + std::to_string(p).substr(0, 3), ratio);
    }
    d("required", "[0.95,1.05]");
    return {pass, d.str()};
}

Outcome inversion_round_trip() {
    const auto& pmf = exact_cached(5, 0.5);
    const double h = pmf.spacing;
    const std::size_t intervals = std::size_t{1} << 16;
    const auto chf = chf_from_pmf(pmf, uniform_grid(-kPi / h, kPi / h, intervals + 1));
    double worst = 0.0;
    bool resolved = true;
    const std::int64_t lo = pmf.probs.begin()->first;
    const std::int64_t hi = pmf.probs.rbegin()->first;
    for (std::int64_t k = lo; k <= hi; ++k) {
        const auto r = invert_lattice(chf, pmf.value(k), h);
        worst = std::max(worst, std::abs(r.value - pmf.probability(k)));
        resolved = resolved && r.resolved;
    }
    return {worst < 1e-8, Detail()("points", intervals + 1)("atoms", hi - lo + 1)("max_abs_err", worst)(
                              "resolved", resolved)
                              .str()};
}

Outcome bernoulli_lemma() {
    std::size_t violations = 0;
    std::size_t evaluated = 0;
    double worst_margin = 1e300;
    for (int i = 1; i <= 9; ++i) {
        const double p = i / 10.0;
        const double window = std::sqrt(p * (1 - p)) * kPi;
        for (int j = 0; j < 10000; ++j) {
            const double t = window * j / 10000.0;
            const auto b = bernoulli_chf_bound(p, t);
            ++evaluated;
            worst_margin = std::min(worst_margin, b.bound - b.exact_modulus);
            if (b.exact_modulus > b.bound) ++violations;
        }
    }
    return {violations == 0, Detail()("evaluated", evaluated)("violations", violations)("min_margin", worst_margin).str()};
}

Outcome llt_trend() {
    Detail d;
    double previous = 1e300;
    bool pass = true;
    for (std::uint32_t n : {5u, 6u, 7u, 8u}) {
        const double v = triangle_moments(n, 0.5).sigma * distances(n, 0.5).linf;
        pass = pass && v < previous;
        previous = v;
        d("sigma_linf_n" + std::to_string(n), v);
    }
    return {pass, d.str()};
}

Outcome l1_trend() {
    Detail d;
    double previous = 1e300;
    bool pass = true;
    for (std::uint32_t n : {5u, 6u, 7u, 8u}) {
        const double v = distances(n, 0.5).l1;
        pass = pass && v < previous;
        previous = v;
        d("l1_n" + std::to_string(n), v);
    }
    const double ratio = distances(8, 0.5).l1 / distances(5, 0.5).l1;
    const double limit = std::pow(5.0 / 8.0, 0.25);
    d("ratio", ratio)("limit", limit);
    return {pass && ratio < limit, d.str()};
}

Outcome small_t_shape_check() {
    const auto ts = uniform_grid(0.0, 3.0, 3001);
    auto gaps = [&](std::uint32_t n) {
        const auto& pmf = exact_cached(n, 0.5);
        const auto norm = normalization(n, 0.5);
        std::vector<double> g;
        for (double t : ts) g.push_back(std::abs(chf_at(pmf, t, norm) - std::exp(-t * t / 2)));
        return g;
    };
    const auto g5 = gaps(5);
    double fitted = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) fitted = std::max(fitted, g5[i] / small_t_shape(5, ts[i]));
    Detail d;
    d("fitted_C", fitted);
    bool pass = true;
    for (std::uint32_t n : {6u, 7u}) {
        const auto g = gaps(n);
        double worst = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double allowed = fitted * small_t_shape(n, ts[i]);
            if (g[i] > allowed) pass = false;
            if (ts[i] > 0) worst = std::max(worst, g[i] / small_t_shape(n, ts[i]));
        }
        d("max_ratio_n" + std::to_string(n), worst);
    }
    return {pass, d.str()};
}

Outcome restriction_identity() {
    testing_support::Gen gen(909);
    const std::uint32_t n = 5;
    const auto table = triangle_table(n);
    const double ps[] = {0.3, 0.5, 0.7};
    double worst = 0.0;
    std::size_t compared = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const double p = ps[rep % 3];
        const auto ambient = closed_triangle_spectrum(n, p);
        const std::size_t size = 1 + gen.below(10);
        auto perm = gen.permutation(10);
        perm.resize(size);
        const EdgeSet h(std::vector<EdgeId>(perm.begin(), perm.end()));
        const Graph beta = gen.graph(n, p);
        const auto brute = brute_force_coefficients(restrict_function(table, h.to_mask(), beta.to_mask()), p);
        const auto local = to_local_coordinates(restricted_spectrum(ambient, h, beta, p), h);
        for (std::uint64_t s = 0; s < brute.size(); ++s) {
            worst = std::max(worst, std::abs(local.coefficient(EdgeSet::from_mask(s)) - brute[s]));
            ++compared;
        }
    }
    return {worst < 1e-10, Detail()("pairs", 100)("coefficients", compared)("max_abs_diff", worst).str()};
}

Outcome unbiasedness() {
    const auto a = event_A_check(6, 0.5, make_regular_bipartite(6, 2), 100000, Sampler(0.5, 2024));
    bool pass = true;
    double worst_z = 0.0;
    double worst_var = 0.0;
    for (const auto& e : a.edges) {
        const double z = std::abs(e.mean.value - e.ambient) / e.mean.std_error;
        worst_z = std::max(worst_z, z);
        worst_var = std::max(worst_var, e.variance.value);
        pass = pass && z <= 3.0 && e.variance.value <= a.variance_bound + 3.0 * e.variance.std_error;
    }
    return {pass, Detail()("edges", a.edges.size())("max_mean_z", worst_z)("max_var", worst_var)("var_bound",
                                                                                                   a.variance_bound)
                      .str()};
}

Outcome graph_statistics() {
    Detail d;
    // (a) triangle base function counts each triangle 3! times
    testing_support::Gen gen(77);
    const auto tri = builtin_base_function("triangle");
    std::size_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const Graph g = gen.graph(7, gen.uniform(0.05, 0.95));
        if (evaluate_graph_statistic(tri, g) != 6.0 * static_cast<double>(triangle_count(g))) ++mismatches;
    }
    d("count_mismatches", mismatches);

    // (b) subgraph variance against the exhaustive distribution
    std::vector<double> values(8);
    for (double& v : values) v = gen.uniform(-1.0, 1.0);
    const BaseFunction f(3, values, "random-k3");
    const double closed = subgraph_variance(f, 6, 0.3).sigma2;
    const double exhaustive = exact_distribution(Statistic{f}, 6, 0.3).variance();
    const double var_diff = std::abs(closed - exhaustive);
    d("variance_diff", var_diff);

    // (c) bisection for the zero of the induced-P2 edge coefficient
    const auto p2 = builtin_base_function("path2-induced");
    auto he = [&](double p) { return h_coefficient(p2, {{0, 1}}, p); };
    double lo = 0.4;
    double hi = 0.9;
    const bool bracketed = he(lo) * he(hi) < 0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (he(lo) * he(mid) <= 0 ? hi : lo) = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double root_err = std::abs(root - 2.0 / 3.0);
    d("root", root)("root_err", root_err);
    return {mismatches == 0 && var_diff < 1e-8 && bracketed && root_err < 1e-6, d.str()};
}

Outcome smoothing_clt() {
    const auto& pmf = exact_cached(8, 0.5);
    const auto norm = normalization(8, 0.5);
    const double cutoff = std::sqrt(8.0);
    const auto integral = smoothing_integral(pmf, norm, cutoff, std::size_t{1} << 16);
    const double bound = smoothing_bound(integral.value, cutoff);
    const double kolmogorov = distances(8, 0.5).kolmogorov;
    return {kolmogorov <= bound, Detail()("kolmogorov", kolmogorov)("smoothing_bound", bound)(
                                     "integral", integral.value)("resolved", integral.resolved)
                                     .str()};
}

Outcome mc_consistency() {
    const std::uint64_t samples = 1000000;
    const auto& exact = exact_cached(6, 0.5);
    const auto mc = mc_pmf(TriangleStatistic{}, 6, samples, Sampler(0.5, 13));
    std::set<std::int64_t> keys;
    for (const auto& [k, v] : exact.probs) keys.insert(k);
    for (const auto& [k, v] : mc.probs) keys.insert(k);
    CompensatedSum l1;
    for (std::int64_t k : keys) l1.add(std::abs(exact.probability(k) - mc.probability(k)));
    const double predicted = expected_sampling_l1(exact, samples);
    return {l1.value() <= 3.0 * predicted,
            Detail()("l1", l1.value())("predicted_noise", predicted)("limit", 3.0 * predicted).str()};
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "spectrum equivalence", spectrum_equivalence},
        {2, "parseval and variance", parseval_variance_check},
        {3, "asymptotic sigma", asymptotic_sigma},
        {4, "inversion round trip", inversion_round_trip},
        {5, "bernoulli chf bound", bernoulli_lemma},
        {6, "llt sup trend", llt_trend},
        {7, "l1 trend", l1_trend},
        {8, "small-t bound shape", small_t_shape_check},
        {9, "restriction identity", restriction_identity},
        {10, "revelation unbiasedness", unbiasedness},
        {11, "graph statistics", graph_statistics},
        {12, "smoothing and clt", smoothing_clt},
        {13, "monte carlo consistency", mc_consistency},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%s AC%02d %-24s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
