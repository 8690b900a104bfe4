#include "gnp/numeric.hpp"

namespace gnp {

double falling_factorial(std::int64_t n, std::int64_t k) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::int64_t i = 0; i < k; ++i) r *= static_cast<double>(n - i);
    return r;
}

double binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r < 9.0e15 ? std::round(r) : r;
}

std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n-k+i) is divisible by i at every step
        r = r / i * (n - k + i) + r % i * (n - k + i) / i;
    }
    return r;
}

}  // namespace gnp
