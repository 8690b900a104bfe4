#pragma once

#include <cstdint>
#include <vector>

#include "gnp/graph.hpp"
#include "gnp/sampler.hpp"

namespace testing_support {

// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : stream_(seed, 0) {}

    double uniform() { return stream_.uniform(); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }
    bool coin(double p = 0.5) { return stream_.bernoulli(p); }

    std::vector<double> table(unsigned m, double lo = -1.0, double hi = 1.0) {
        std::vector<double> t(std::size_t{1} << m);
        for (double& v : t) v = uniform(lo, hi);
        return t;
    }

    gnp::Graph graph(std::uint32_t n, double p = 0.5) { return gnp::sample_gnp(stream_, p, n); }

    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> perm(n);
        for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
        for (std::uint32_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[below(i)]);
        return perm;
    }

private:
    gnp::EdgeStream stream_;
};

inline gnp::Graph relabel(const gnp::Graph& g, const std::vector<std::uint32_t>& perm) {
    gnp::Graph out(g.vertex_count());
    for (gnp::EdgeId e : g.edges()) {
        auto [i, j] = gnp::edge_endpoints(g.vertex_count(), e);
        out.add_edge(perm[i], perm[j]);
    }
    return out;
}

inline std::uint64_t brute_force_triangles(const gnp::Graph& g) {
    const std::uint32_t n = g.vertex_count();
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                if (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) ++count;
    return count;
}

inline std::vector<double> triangle_table(std::uint32_t n) {
    const unsigned m = static_cast<unsigned>(gnp::pair_count(n));
    std::vector<double> t(std::size_t{1} << m);
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = static_cast<double>(brute_force_triangles(gnp::Graph::from_mask(n, x)));
    return t;
}

inline bool is_bipartite(const gnp::Graph& g) {
    const std::uint32_t n = g.vertex_count();
    std::vector<int> colour(n, -1);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        std::vector<std::uint32_t> stack{s};
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v = 0; v < n; ++v) {
                if (v == u || !g.has_edge(u, v)) continue;
                if (colour[v] < 0) {
                    colour[v] = 1 - colour[u];
                    stack.push_back(v);
                } else if (colour[v] == colour[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace testing_support
