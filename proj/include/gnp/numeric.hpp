#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gnp {

/// Neumaier-compensated accumulator. Order of `add` calls fixes the result bit-for-bit.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// (n)_k = n (n-1) ... (n-k+1), with (n)_0 = 1. Zero when k > n.
double falling_factorial(std::int64_t n, std::int64_t k);

/// Binomial coefficient as a double via a multiplicative loop.
double binomial(std::int64_t n, std::int64_t k);

/// Exact binomial coefficient; callers keep it below 2^64.
std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k);

inline double normal_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace gnp
