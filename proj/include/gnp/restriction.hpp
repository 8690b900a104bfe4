#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gnp/fourier.hpp"
#include "gnp/graph.hpp"
#include "gnp/graph_statistic.hpp"
#include "gnp/sampler.hpp"

namespace gnp {

/// Z restricted to the edges of H once the edges outside H are fixed to beta.
/// Spectrum keys are subsets of H in ambient edge ids.
struct Revelation {
    EdgeSet h;
    Graph beta;
    FourierSpectrum restricted_spectrum;
};

/// hat Z_beta(S) = sum_{T in H^c} chi_T(beta) hat Z(S cup T), for every S in H at once.
FourierSpectrum restricted_spectrum(const FourierSpectrum& ambient, const EdgeSet& h, const Graph& beta, double p);

Revelation reveal(const FourierSpectrum& ambient, const EdgeSet& h, const Graph& beta, double p);

/// Single coefficient of the above; S must lie inside H.
double restricted_coefficient(const FourierSpectrum& ambient, const EdgeSet& h, const Graph& beta,
                              const EdgeSet& s, double p);

/// Re-keys subsets of H by position of each edge within H, matching restrict_function's bit order.
FourierSpectrum to_local_coordinates(const FourierSpectrum& spec, const EdgeSet& h);

std::uint64_t subset_mask(const EdgeSet& edges);

/// Value of a sample statistic with mean and standard error.
struct Estimate {
    double value;
    double std_error;
};

struct EdgeDeviation {
    EdgeId edge;
    double ambient;         // hat Z(e)
    Estimate mean;          // of hat Z_beta(e)
    Estimate variance;      // of hat Z_beta(e)
    double exact_variance;  // sum_{T != empty} hat Z(e cup T)^2
};

struct EventACheck {
    std::uint32_t n;
    double p;
    std::uint64_t trials;
    double threshold;  // sqrt(3) n^0.6 / sigma
    double failure_rate;
    double bound;        // n^2 lambda^2 e^{-lambda n^0.01}
    double noise_floor;  // 5 / trials
    double variance_bound;  // 3 (n - 2) / sigma^2
    std::vector<EdgeDeviation> edges;
    bool pass;
};

/// Event A for the triangle statistic Z: every e in H keeps |hat Z_beta(e) - hat Z(e)| below threshold.
/// A threshold override of 0 uses the default.
EventACheck event_A_check(std::uint32_t n, double p, const Graph& h, std::uint64_t trials, const Sampler& sampler,
                          double threshold = 0.0);

struct EventBCheck {
    std::uint32_t n;
    double p;
    std::uint64_t trials;
    double constant;     // h* 2^C(k,2) + 1
    std::size_t subsets_checked;  // S in H with |S| >= 2 that can carry weight
    double failure_rate;
    double bound;        // n^k e^{-n^(2/k^2)}
    double noise_floor;
    double max_ratio;    // max over trials and S of |hat Z_beta(S)| sigma / (C n^(k-s))
    bool pass;
};

/// Event B for the normalized statistic (F_f - E F_f) / sigma: every S in H with |S| >= 2 has
/// |hat Z_beta(S)| <= C n^(k - |supp S|) / sigma.
EventBCheck event_B_check(const BaseFunction& f, std::uint32_t n, double p, const Graph& h, std::uint64_t trials,
                          const Sampler& sampler);

inline constexpr unsigned kMaxInnerCoordinates = 24;

struct RevealedChf {
    std::uint32_t n;
    double p;
    double t;
    std::uint32_t k;  // max degree of H
    std::uint64_t trials;
    Estimate modulus;            // E_beta |E_alpha e^{itZ_beta}|
    std::complex<double> mean;   // E_beta E_alpha e^{itZ_beta}
    double mean_std_error;       // of each component
    double bound_pair_term;      // e^{-k t^2 n^3 / (4 pi^2 sigma^2)} + 4 |t| n C(k,2) / sigma^2
    double bound_sqrt_term;      // e^{-k t^2 n^3 / (4 pi^2 sigma^2)} + 2 k |t| sqrt(n) / sigma
    double t_max;                // sigma pi sqrt(p(1-p)) / (2n)
    bool in_window;
};

/// Monte Carlo over beta with the inner expectation over the 2^|H| edge assignments of H done exactly.
RevealedChf revealed_chf_estimate(std::uint32_t n, double p, const Graph& h, double t, std::uint64_t trials,
                                  const Sampler& sampler);

/// One claim check in reportable form.
struct ClaimReport {
    std::string claim_id;
    std::uint32_t n;
    double p;
    std::string h_descriptor;
    std::uint64_t trials;
    double measured;
    double bound;
    double noise_floor;
    bool pass;
};

ClaimReport to_claim_report(const EventACheck& c, const std::string& h_descriptor);
ClaimReport to_claim_report(const EventBCheck& c, const std::string& h_descriptor);
ClaimReport to_claim_report(const RevealedChf& c, const std::string& h_descriptor);

}  // namespace gnp
