#include "gnp/sampler.hpp"

#include <stdexcept>

namespace gnp {

namespace {

void check_bias(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("edge probability must lie in (0,1)");
}

}  // namespace

Sampler::Sampler(double p_, std::uint64_t seed_) : p(p_), seed(seed_) { check_bias(p); }

Graph sample_gnp(EdgeStream& stream, double p, std::uint32_t n) {
    check_bias(p);
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    Graph g(n);
    const std::uint64_t m = g.slot_count();
    for (std::uint64_t e = 0; e < m; ++e) {
        if (stream.bernoulli(p)) g.set_edge(static_cast<EdgeId>(e));
    }
    return g;
}

Graph sample_gnp(const Sampler& sampler, std::uint32_t n, std::uint64_t sample_index) {
    auto stream = sampler.stream(sample_index);
    return sample_gnp(stream, sampler.p, n);
}

}  // namespace gnp
