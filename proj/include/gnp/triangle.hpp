#pragma once

#include <cstdint>

#include "gnp/fourier.hpp"

namespace gnp {

/// Largest n for which the triangle spectrum is materialized entry by entry.
inline constexpr std::uint32_t kMaxMaterializedTriangleN = 200;

/// Nonzero values of the triangle-count spectrum, by shape of S.
struct TriangleCoefficients {
    double empty;          // p^3 C(n,3)
    double edge;           // (n-2) p^2 sqrt(p(1-p))
    double incident_pair;  // p^2 (1-p), e1 ~ e2
    double triangle;       // (p(1-p))^(3/2)
};

struct TriangleMoments {
    std::uint32_t n;
    double p;
    double mu;
    double sigma2;
    double sigma;
    /// sigma / (p^(5/2) (1-p)^(1/2) n^2 / 2)
    double asymptotic_ratio;
};

TriangleCoefficients triangle_coefficients(std::uint32_t n, double p);
TriangleMoments triangle_moments(std::uint32_t n, double p);

FourierSpectrum closed_triangle_spectrum(std::uint32_t n, double p);

/// Spectrum of Z = (T - mu) / sigma.
FourierSpectrum z_spectrum(std::uint32_t n, double p);

/// Degree weights of Z from closed forms, valid for any n (nothing is materialized).
struct ZWeights {
    double w1;
    double w2;
    double w3;
};
ZWeights z_weights(std::uint32_t n, double p);

/// Z = X + Y with X = Q sum_e chi_e, Q = C(n,2)^(-1/2).
struct XYDecomposition {
    double q;
    double z_edge;  // hat Z(e)
    double var_x;   // C(n,2) Q^2
    double var_y;
};
XYDecomposition xy_decomposition(std::uint32_t n, double p);

}  // namespace gnp
