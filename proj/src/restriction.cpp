#include "gnp/restriction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gnp/numeric.hpp"
#include "gnp/parallel.hpp"
#include "gnp/triangle.hpp"

namespace gnp {

namespace {

// Ambient entries grouped by their H-part: hat Z_beta(S) = sum over the group of S of c * chi_T(beta).
struct Term {
    std::vector<EdgeId> outside;
    double c;
};

struct RestrictionPlan {
    std::map<EdgeSet, std::vector<Term>> groups;

    RestrictionPlan(const FourierSpectrum& ambient, const EdgeSet& h) {
        for (const auto& [s, c] : ambient.entries) {
            std::vector<EdgeId> inside;
            Term term{{}, c};
            for (EdgeId e : s) (h.contains(e) ? inside : term.outside).push_back(e);
            groups[EdgeSet(std::move(inside))].push_back(std::move(term));
        }
    }

    static double evaluate(const std::vector<Term>& terms, const Graph& beta, const BiasedBasis& chi) {
        CompensatedSum acc;
        for (const auto& term : terms) {
            double v = term.c;
            for (EdgeId e : term.outside) v *= chi(beta.has_edge(e));
            acc.add(v);
        }
        return acc.value();
    }
};

void check_h(const EdgeSet& h, std::uint64_t m) {
    if (!h.empty() && h.ids().back() >= m) throw std::invalid_argument("H has an edge outside the ambient universe");
}

void check_beta(const Graph& beta, std::uint64_t m) {
    if (beta.slot_count() != m) throw std::invalid_argument("beta must assign every ambient edge slot");
}

EdgeSet edge_set_of(const Graph& g) { return EdgeSet(g.edges()); }

std::uint32_t max_degree(const Graph& g) {
    std::uint32_t k = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) k = std::max(k, g.degree(v));
    return k;
}

double lambda_of(double p) { return std::min(p, 1.0 - p); }

// Mean and standard error of the mean, variance and its standard error, from streamed moments.
struct Moments {
    CompensatedSum s1, s2, s3, s4;
    std::uint64_t count = 0;

    void add(double x) {
        const double x2 = x * x;
        s1.add(x);
        s2.add(x2);
        s3.add(x2 * x);
        s4.add(x2 * x2);
        ++count;
    }

    void merge(const Moments& o) {
        s1.merge(o.s1);
        s2.merge(o.s2);
        s3.merge(o.s3);
        s4.merge(o.s4);
        count += o.count;
    }

    Estimate mean() const {
        const double nn = static_cast<double>(count);
        const double m = s1.value() / nn;
        const double var = std::max(0.0, s2.value() / nn - m * m);
        return {m, count > 1 ? std::sqrt(var / (nn - 1.0)) : 0.0};
    }

    Estimate variance() const {
        const double nn = static_cast<double>(count);
        const double m = s1.value() / nn;
        const double e2 = s2.value() / nn;
        const double e3 = s3.value() / nn;
        const double e4 = s4.value() / nn;
        const double var = std::max(0.0, e2 - m * m);
        const double unbiased = count > 1 ? var * nn / (nn - 1.0) : 0.0;
        const double m4 = e4 - 4.0 * m * e3 + 6.0 * m * m * e2 - 3.0 * m * m * m * m;
        const double se = count > 1 ? std::sqrt(std::max(0.0, m4 - var * var) / nn) : 0.0;
        return {unbiased, se};
    }
};

}  // namespace

std::uint64_t subset_mask(const EdgeSet& edges) { return edges.to_mask(); }

FourierSpectrum restricted_spectrum(const FourierSpectrum& ambient, const EdgeSet& h, const Graph& beta, double p) {
    check_h(h, ambient.m);
    check_beta(beta, ambient.m);
    const BiasedBasis chi(p);
    FourierSpectrum out{ambient.vertex_count, ambient.m, {}};
    const RestrictionPlan plan(ambient, h);
    for (const auto& [s, terms] : plan.groups) out.set(s, RestrictionPlan::evaluate(terms, beta, chi));
    return out;
}

Revelation reveal(const FourierSpectrum& ambient, const EdgeSet& h, const Graph& beta, double p) {
    return {h, beta, restricted_spectrum(ambient, h, beta, p)};
}

double restricted_coefficient(const FourierSpectrum& ambient, const EdgeSet& h, const Graph& beta, const EdgeSet& s,
                              double p) {
    check_h(h, ambient.m);
    check_beta(beta, ambient.m);
    for (EdgeId e : s) {
        if (!h.contains(e)) throw std::invalid_argument("S must be a subset of H");
    }
    const BiasedBasis chi(p);
    CompensatedSum acc;
    for (const auto& [key, c] : ambient.entries) {
        bool matches = true;
        double v = c;
        std::size_t inside = 0;
        for (EdgeId e : key) {
            if (h.contains(e)) {
                if (!s.contains(e)) {
                    matches = false;
                    break;
                }
                ++inside;
            } else {
                v *= chi(beta.has_edge(e));
            }
        }
        if (matches && inside == s.size()) acc.add(v);
    }
    return acc.value();
}

FourierSpectrum to_local_coordinates(const FourierSpectrum& spec, const EdgeSet& h) {
    FourierSpectrum out{0, h.size(), {}};
    for (const auto& [s, c] : spec.entries) {
        std::vector<EdgeId> local;
        for (EdgeId e : s) {
            const auto it = std::lower_bound(h.begin(), h.end(), e);
            if (it == h.end() || *it != e) throw std::invalid_argument("subset is not inside H");
            local.push_back(static_cast<EdgeId>(it - h.begin()));
        }
        out.set(EdgeSet(std::move(local)), c);
    }
    return out;
}

EventACheck event_A_check(std::uint32_t n, double p, const Graph& h, std::uint64_t trials, const Sampler& sampler,
                          double threshold) {
    if (trials == 0) throw std::invalid_argument("need at least one trial");
    if (h.vertex_count() != n) throw std::invalid_argument("H must live on the same n vertices");
    if (p != sampler.p) throw std::invalid_argument("sampler bias differs from p");
    const auto moments = triangle_moments(n, p);
    const FourierSpectrum ambient = z_spectrum(n, p);
    const EdgeSet hs = edge_set_of(h);
    const RestrictionPlan plan(ambient, hs);
    const BiasedBasis chi(p);

    EventACheck out{};
    out.n = n;
    out.p = p;
    out.trials = trials;
    out.threshold = threshold > 0.0 ? threshold : std::sqrt(3.0) * std::pow(n, 0.6) / moments.sigma;
    const double lam = lambda_of(p);
    out.bound = static_cast<double>(n) * n * lam * lam * std::exp(-lam * std::pow(n, 0.01));
    out.noise_floor = 5.0 / static_cast<double>(trials);
    out.variance_bound = 3.0 * (n - 2.0) / moments.sigma2;

    struct EdgeTerms {
        EdgeId e;
        double ambient;
        const std::vector<Term>* terms;
    };
    std::vector<EdgeTerms> edges;
    for (EdgeId e : hs) {
        const auto it = plan.groups.find(EdgeSet{e});
        static const std::vector<Term> none;
        edges.push_back({e, ambient.coefficient(EdgeSet{e}), it == plan.groups.end() ? &none : &it->second});
    }

    const unsigned blocks = worker_count();
    std::vector<std::vector<Moments>> block_moments(blocks, std::vector<Moments>(edges.size()));
    std::vector<std::uint64_t> block_failures(blocks, 0);
    for_each_block(trials, blocks, [&](unsigned b, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const Graph beta = sample_gnp(sampler, n, i);
            bool failed = false;
            for (std::size_t j = 0; j < edges.size(); ++j) {
                const double v = RestrictionPlan::evaluate(*edges[j].terms, beta, chi);
                block_moments[b][j].add(v);
                if (!(std::abs(v - edges[j].ambient) < out.threshold)) failed = true;
            }
            if (failed) ++block_failures[b];
        }
    });

    std::uint64_t failures = 0;
    for (unsigned b = 0; b < blocks; ++b) failures += block_failures[b];
    out.failure_rate = static_cast<double>(failures) / static_cast<double>(trials);
    for (std::size_t j = 0; j < edges.size(); ++j) {
        Moments total;
        for (unsigned b = 0; b < blocks; ++b) total.merge(block_moments[b][j]);
        CompensatedSum exact;
        for (const auto& term : *edges[j].terms) {
            if (!term.outside.empty()) exact.add(term.c * term.c);
        }
        out.edges.push_back({edges[j].e, edges[j].ambient, total.mean(), total.variance(), exact.value()});
    }
    out.pass = out.failure_rate <= std::max(out.bound, out.noise_floor);
    return out;
}

EventBCheck event_B_check(const BaseFunction& f, std::uint32_t n, double p, const Graph& h, std::uint64_t trials,
                          const Sampler& sampler) {
    if (trials == 0) throw std::invalid_argument("need at least one trial");
    if (f.k > 4) throw std::invalid_argument("event B check supports k <= 4");
    if (f.k > n) throw std::invalid_argument("k must not exceed n");
    if (h.vertex_count() != n) throw std::invalid_argument("H must live on the same n vertices");
    if (p != sampler.p) throw std::invalid_argument("sampler bias differs from p");
    const GraphStatistic stat(f, p);
    const double sigma = std::sqrt(stat.variance(n).sigma2);
    if (!(sigma > 0.0)) throw std::invalid_argument("statistic has zero variance");
    FourierSpectrum ambient = stat.spectrum(n);
    ambient.set(EdgeSet{}, 0.0);
    for (auto& [s, c] : ambient.entries) c /= sigma;

    const EdgeSet hs = edge_set_of(h);
    const RestrictionPlan plan(ambient, hs);
    const BiasedBasis chi(p);
    const double k = f.k;

    EventBCheck out{};
    out.n = n;
    out.p = p;
    out.trials = trials;
    out.constant = stat.h_table().h_star * std::exp2(pair_count(f.k)) + 1.0;
    out.bound = std::pow(n, k) * std::exp(-std::pow(n, 2.0 / (k * k)));
    out.noise_floor = 5.0 / static_cast<double>(trials);

    // Subsets of H with no ambient weight have hat Z_beta(S) = 0 and never fail.
    struct Group {
        double limit;
        const std::vector<Term>* terms;
    };
    std::vector<Group> groups;
    for (const auto& [s, terms] : plan.groups) {
        if (s.size() < 2) continue;
        const double support = static_cast<double>(s.support_size(n));
        groups.push_back({out.constant * std::pow(n, k - support) / sigma, &terms});
    }
    out.subsets_checked = groups.size();

    const unsigned blocks = worker_count();
    std::vector<std::uint64_t> block_failures(blocks, 0);
    std::vector<double> block_ratio(blocks, 0.0);
    for_each_block(trials, blocks, [&](unsigned b, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const Graph beta = sample_gnp(sampler, n, i);
            bool failed = false;
            for (const auto& g : groups) {
                const double v = std::abs(RestrictionPlan::evaluate(*g.terms, beta, chi));
                block_ratio[b] = std::max(block_ratio[b], v / g.limit);
                if (v > g.limit) failed = true;
            }
            if (failed) ++block_failures[b];
        }
    });
    std::uint64_t failures = 0;
    for (unsigned b = 0; b < blocks; ++b) {
        failures += block_failures[b];
        out.max_ratio = std::max(out.max_ratio, block_ratio[b]);
    }
    out.failure_rate = static_cast<double>(failures) / static_cast<double>(trials);
    out.pass = out.failure_rate <= std::max(out.bound, out.noise_floor);
    return out;
}

RevealedChf revealed_chf_estimate(std::uint32_t n, double p, const Graph& h, double t, std::uint64_t trials,
                                  const Sampler& sampler) {
    if (trials == 0) throw std::invalid_argument("need at least one trial");
    if (h.vertex_count() != n) throw std::invalid_argument("H must live on the same n vertices");
    if (p != sampler.p) throw std::invalid_argument("sampler bias differs from p");
    const std::vector<EdgeId> hs = h.edges();
    if (hs.size() > kMaxInnerCoordinates) throw std::invalid_argument("H has more than 24 edges");
    const auto moments = triangle_moments(n, p);
    const double mu = moments.mu;
    const double sigma = moments.sigma;
    const unsigned width = static_cast<unsigned>(hs.size());
    const std::uint64_t points = std::uint64_t{1} << width;
    const std::vector<double> weights = biased_weights(width, p);

    RevealedChf out{};
    out.n = n;
    out.p = p;
    out.t = t;
    out.k = max_degree(h);
    out.trials = trials;
    const double kk = out.k;
    const double nn = n;
    const double decay = std::exp(-kk * t * t * nn * nn * nn / (4.0 * std::numbers::pi * std::numbers::pi * moments.sigma2));
    out.bound_pair_term = decay + 4.0 * std::abs(t) * nn * binomial(out.k, 2) / moments.sigma2;
    out.bound_sqrt_term = decay + 2.0 * kk * std::abs(t) * std::sqrt(nn) / sigma;
    out.t_max = sigma * std::numbers::pi * std::sqrt(p * (1.0 - p)) / (2.0 * nn);
    out.in_window = std::abs(t) <= out.t_max * (1.0 + 1e-12);

    const unsigned blocks = worker_count();
    std::vector<Moments> mod(blocks), re(blocks), im(blocks);
    for_each_block(trials, blocks, [&](unsigned b, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::pair<Vertex, Vertex>> ends;
        for (EdgeId e : hs) ends.push_back(edge_endpoints(n, e));
        for (std::uint64_t i = begin; i < end; ++i) {
            Graph g = sample_gnp(sampler, n, i);
            for (EdgeId e : hs) g.set_edge(e, false);
            std::int64_t tri = static_cast<std::int64_t>(triangle_count(g));
            // Gray-code walk over the H assignments; flipping (u,v) changes T by their common neighbours.
            CompensatedSum sr, si;
            std::uint64_t alpha = 0;
            for (std::uint64_t step = 0; step < points; ++step) {
                if (step > 0) {
                    const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
                    const auto [u, v] = ends[bit];
                    std::int64_t common = 0;
                    for (Vertex w = 0; w < n; ++w) {
                        if (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) ++common;
                    }
                    const EdgeId e = hs[bit];
                    tri += g.has_edge(e) ? -common : common;
                    g.flip_edge(e);
                    alpha ^= std::uint64_t{1} << bit;
                }
                const double z = (static_cast<double>(tri) - mu) / sigma;
                sr.add(weights[alpha] * std::cos(t * z));
                si.add(weights[alpha] * std::sin(t * z));
            }
            const std::complex<double> inner(sr.value(), si.value());
            mod[b].add(std::abs(inner));
            re[b].add(inner.real());
            im[b].add(inner.imag());
        }
    });
    for (unsigned b = 1; b < blocks; ++b) {
        mod[0].merge(mod[b]);
        re[0].merge(re[b]);
        im[0].merge(im[b]);
    }
    out.modulus = mod[0].mean();
    const auto mr = re[0].mean();
    const auto mi = im[0].mean();
    out.mean = {mr.value, mi.value};
    out.mean_std_error = std::max(mr.std_error, mi.std_error);
    return out;
}

ClaimReport to_claim_report(const EventACheck& c, const std::string& h_descriptor) {
    return {"A", c.n, c.p, h_descriptor, c.trials, c.failure_rate, c.bound, c.noise_floor, c.pass};
}

ClaimReport to_claim_report(const EventBCheck& c, const std::string& h_descriptor) {
    return {"B", c.n, c.p, h_descriptor, c.trials, c.failure_rate, c.bound, c.noise_floor, c.pass};
}

ClaimReport to_claim_report(const RevealedChf& c, const std::string& h_descriptor) {
    const double noise = 3.0 * c.modulus.std_error;
    return {"chf", c.n, c.p, h_descriptor, c.trials, c.modulus.value, c.bound_pair_term, noise,
            c.modulus.value <= c.bound_pair_term + noise};
}

}  // namespace gnp
