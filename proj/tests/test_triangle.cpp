#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gnp/distribution.hpp"
#include "gnp/fourier.hpp"
#include "gnp/numeric.hpp"
#include "gnp/triangle.hpp"
#include "support.hpp"

using namespace gnp;

TEST_CASE("closed-form coefficients at n = 3, p = 1/2") {
    const auto s = closed_triangle_spectrum(3, 0.5);
    CHECK(s.coefficient(EdgeSet{}) == doctest::Approx(0.125));
    CHECK(s.coefficient(EdgeSet{1}) == doctest::Approx(0.125));
    CHECK(s.coefficient(EdgeSet{0, 2}) == doctest::Approx(0.125));
    CHECK(s.coefficient(EdgeSet{0, 1, 2}) == doctest::Approx(0.125));
    CHECK(s.size() == 8);
}

TEST_CASE("closed-form spectrum matches brute force at n = 5") {
    for (double p : {0.3, 0.5}) {
        const auto brute = brute_force_transform(testing_support::triangle_table(5), p, 5);
        const auto closed = closed_triangle_spectrum(5, p);
        CHECK(brute.size() == closed.size());
        double worst = 0.0;
        for (const auto& [s, c] : brute.entries) worst = std::max(worst, std::abs(closed.coefficient(s) - c));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("spectrum entry counts") {
    for (std::uint32_t n = 3; n <= 9; ++n) {
        const double pairs = binomial(n, 2);
        const double triples = binomial(n, 3);
        CHECK(closed_triangle_spectrum(n, 0.4).size() == static_cast<std::size_t>(1 + pairs + 4 * triples));
    }
}

TEST_CASE("moments at n = 3") {
    const auto m = triangle_moments(3, 0.5);
    CHECK(m.mu == doctest::Approx(0.125));
    CHECK(m.sigma2 == doctest::Approx(0.109375).epsilon(1e-14));
    for (double p : {0.1, 0.42, 0.9}) CHECK(triangle_moments(3, p).sigma2 == doctest::Approx(p * p * p * (1 - p * p * p)));
}

TEST_CASE("asymptotic sigma ratio tends to sqrt 2") {
    // sigma^2 ~ C(n,2) n^2 p^5 (1-p) ~ n^4 p^5 (1-p) / 2, so sigma / (p^(5/2) (1-p)^(1/2) n^2 / 2) -> sqrt 2.
    for (double p : {0.3, 0.5}) {
        CHECK(std::abs(triangle_moments(100000, p).asymptotic_ratio - std::sqrt(2.0)) < 1e-4);
        const double r = triangle_moments(200, p).asymptotic_ratio;
        CHECK(r > 1.38);
        CHECK(r < 1.42);
    }
}

TEST_CASE("variance formula equals parseval of the closed spectrum") {
    for (std::uint32_t n = 3; n <= 12; ++n) {
        for (double p : {0.2, 0.5, 0.7}) {
            const double a = triangle_moments(n, p).sigma2;
            CHECK(std::abs(parseval_variance(closed_triangle_spectrum(n, p)) - a) < 1e-10 * a);
        }
    }
}

TEST_CASE("moments agree with the exact pmf for n = 3..7") {
    for (std::uint32_t n = 3; n <= 7; ++n) {
        for (double p : {0.3, 0.5, 0.7}) {
            const auto pmf = exact_triangle_pmf(n, p);
            const auto m = triangle_moments(n, p);
            CHECK(std::abs(pmf.mean() - m.mu) < 1e-9);
            CHECK(std::abs(pmf.variance() - m.sigma2) < 1e-9);
        }
    }
}

TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS(closed_triangle_spectrum(2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(triangle_moments(2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(z_spectrum(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(xy_decomposition(2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(triangle_moments(5, 1.0), std::invalid_argument);
}

TEST_CASE("normalized spectrum") {
    for (std::uint32_t n : {3u, 5u, 9u}) {
        const auto z = z_spectrum(n, 0.5);
        CHECK(z.coefficient(EdgeSet{}) == 0.0);
        CHECK(std::abs(parseval_variance(z) - 1.0) < 1e-12);
    }
}

TEST_CASE("weight-1 mass approaches 1 at rate 1/n") {
    for (double p : {0.3, 0.5}) {
        const double base = 100.0 * (1.0 - z_weights(100, p).w1);
        for (std::uint32_t n : {1000u, 10000u}) {
            const double scaled = n * (1.0 - z_weights(n, p).w1);
            CHECK(scaled / base >= 0.5);
            CHECK(scaled / base <= 2.0);
        }
        const auto w = z_weights(50, p);
        CHECK(w.w1 + w.w2 + w.w3 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("X + Y decomposition") {
    for (std::uint32_t n : {3u, 10u, 1000u}) {
        for (double p : {0.3, 0.5}) CHECK(xy_decomposition(n, p).var_x == doctest::Approx(1.0).epsilon(1e-14));
    }
    // var(Y) assembled from the brute-force spectrum at n = 5
    const auto d = xy_decomposition(5, 0.5);
    const double sigma = triangle_moments(5, 0.5).sigma;
    const auto brute = brute_force_transform(testing_support::triangle_table(5), 0.5, 5);
    double var_y = 0.0;
    for (const auto& [s, c] : brute.entries) {
        if (s.empty()) continue;
        const double z = c / sigma;
        var_y += s.size() == 1 ? (z - d.q) * (z - d.q) : z * z;
    }
    CHECK(std::abs(var_y - d.var_y) < 1e-12);

    double lo = 1e300;
    double hi = 0.0;
    for (std::uint32_t n : {10u, 100u, 1000u}) {
        const double scaled = n * xy_decomposition(n, 0.5).var_y;
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    CHECK(hi / lo <= 4.0);
}

TEST_CASE("edge coefficient approaches Q at rate 1/n^2") {
    for (double p : {0.3, 0.5}) {
        const auto at = [p](std::uint32_t n) {
            const auto d = xy_decomposition(n, p);
            return static_cast<double>(n) * n * std::abs(d.z_edge - d.q);
        };
        const double k = at(10);
        for (std::uint32_t n : {100u, 1000u, 10000u}) {
            CHECK(at(n) <= 2.0 * k);
            CHECK(at(n) >= 0.5 * k);
        }
    }
}
