#include "gnp/triangle.hpp"

#include <cmath>
#include <stdexcept>

#include "gnp/numeric.hpp"

namespace gnp {

namespace {

void check(std::uint32_t n, double p) {
    if (n < 3) throw std::invalid_argument("triangle statistic needs n >= 3");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bias must lie in (0,1)");
}

}  // namespace

TriangleCoefficients triangle_coefficients(std::uint32_t n, double p) {
    check(n, p);
    const double q = 1.0 - p;
    return {
        .empty = p * p * p * binomial(n, 3),
        .edge = (n - 2.0) * p * p * std::sqrt(p * q),
        .incident_pair = p * p * q,
        .triangle = std::pow(p * q, 1.5),
    };
}

TriangleMoments triangle_moments(std::uint32_t n, double p) {
    check(n, p);
    const double q = 1.0 - p;
    const double c2 = binomial(n, 2);
    const double c3 = binomial(n, 3);
    const double nm2 = n - 2.0;
    const double sigma2 = c2 * nm2 * nm2 * std::pow(p, 5) * q + 3.0 * c3 * std::pow(p, 4) * q * q +
                          c3 * std::pow(p, 3) * std::pow(q, 3);
    const double sigma = std::sqrt(sigma2);
    const double nn = n;
    const double scale = std::pow(p, 2.5) * std::sqrt(q) / 2.0 * nn * nn;
    return {n, p, p * p * p * c3, sigma2, sigma, sigma / scale};
}

FourierSpectrum closed_triangle_spectrum(std::uint32_t n, double p) {
    check(n, p);
    if (n > kMaxMaterializedTriangleN) {
        throw std::invalid_argument("triangle spectrum too large to materialize; use closed-form summaries");
    }
    const auto c = triangle_coefficients(n, p);
    FourierSpectrum spec;
    spec.vertex_count = n;
    spec.m = pair_count(n);
    spec.set(EdgeSet{}, c.empty);
    for (std::uint64_t e = 0; e < spec.m; ++e) spec.set(EdgeSet{static_cast<EdgeId>(e)}, c.edge);
    // every incident pair lies in exactly one triangle
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            const EdgeId ab = edge_index(n, a, b);
            for (Vertex d = b + 1; d < n; ++d) {
                const EdgeId ad = edge_index(n, a, d);
                const EdgeId bd = edge_index(n, b, d);
                spec.set(EdgeSet{ab, ad}, c.incident_pair);
                spec.set(EdgeSet{ab, bd}, c.incident_pair);
                spec.set(EdgeSet{ad, bd}, c.incident_pair);
                spec.set(EdgeSet{ab, ad, bd}, c.triangle);
            }
        }
    }
    return spec;
}

FourierSpectrum z_spectrum(std::uint32_t n, double p) {
    auto spec = closed_triangle_spectrum(n, p);
    const double sigma = triangle_moments(n, p).sigma;
    spec.entries.erase(EdgeSet{});
    for (auto& [s, c] : spec.entries) c /= sigma;
    return spec;
}

ZWeights z_weights(std::uint32_t n, double p) {
    const auto c = triangle_coefficients(n, p);
    const auto m = triangle_moments(n, p);
    const double c3 = binomial(n, 3);
    return {
        .w1 = binomial(n, 2) * c.edge * c.edge / m.sigma2,
        .w2 = 3.0 * c3 * c.incident_pair * c.incident_pair / m.sigma2,
        .w3 = c3 * c.triangle * c.triangle / m.sigma2,
    };
}

XYDecomposition xy_decomposition(std::uint32_t n, double p) {
    const auto c = triangle_coefficients(n, p);
    const auto m = triangle_moments(n, p);
    const double pairs = binomial(n, 2);
    const double c3 = binomial(n, 3);
    const double q = 1.0 / std::sqrt(pairs);
    const double z_edge = c.edge / m.sigma;
    const double d = z_edge - q;
    const double higher = (3.0 * c3 * c.incident_pair * c.incident_pair + c3 * c.triangle * c.triangle) / m.sigma2;
    return {q, z_edge, pairs * q * q, pairs * d * d + higher};
}

}  // namespace gnp
