#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>

#include "gnp/graph_statistic.hpp"
#include "gnp/sampler.hpp"

namespace gnp {

/// Exhaustive enumeration is limited to 2^30 graphs.
inline constexpr std::uint64_t kMaxEnumerationSlots = 30;

struct TriangleStatistic {};

/// What gets tabulated over G(n,p): the triangle count or a graph statistic F_f.
using Statistic = std::variant<TriangleStatistic, BaseFunction>;

std::string statistic_name(const Statistic& s);
double evaluate_statistic(const Statistic& s, const Graph& g);
/// Triangle count or its F_f mean/variance from closed forms.
double statistic_mean(const Statistic& s, std::uint32_t n, double p);
double statistic_variance(const Statistic& s, std::uint32_t n, double p);

struct BinError {
    std::uint64_t count;
    double std_error;
    double wilson_lo;
    double wilson_hi;
};

/// Probability mass on the lattice offset + spacing * Z, keyed by lattice index.
struct LatticePmf {
    double offset = 0.0;
    double spacing = 1.0;
    std::map<std::int64_t, double> probs;
    /// Monte Carlo only: sample count and per-bin errors (empty in exact mode).
    std::uint64_t samples = 0;
    std::map<std::int64_t, BinError> errors;

    double value(std::int64_t index) const noexcept { return offset + spacing * static_cast<double>(index); }
    double probability(std::int64_t index) const;
    double total() const;
    double mean() const;
    double variance() const;
    bool exact() const noexcept { return samples == 0; }
};

/// Distribution of a real-valued statistic, atoms keyed by value.
struct ValuePmf {
    std::map<double, double> atoms;

    double total() const;
    double mean() const;
    double variance() const;
};

/// Lattice form of an integer-valued distribution: offset = min value, spacing = gcd of gaps.
LatticePmf to_lattice(const ValuePmf& pmf);

/// Exact pmf of the triangle count by Gray-code enumeration of all 2^C(n,2) graphs, counting
/// (triangles, edges) pairs exactly before weighting.
LatticePmf exact_triangle_pmf(std::uint32_t n, double p);

ValuePmf exact_distribution(const Statistic& s, std::uint32_t n, double p);
LatticePmf exact_pmf(const Statistic& s, std::uint32_t n, double p);

/// Empirical pmf from samples 0..samples-1 of the sampler; requires an integer-valued statistic.
LatticePmf mc_pmf(const Statistic& s, std::uint32_t n, std::uint64_t samples, const Sampler& sampler);

struct DiscreteNormalRef {
    double mu;
    double sigma;

    double density(double x) const noexcept;
};

DiscreteNormalRef discrete_normal(double mu, double sigma);

struct DistanceReport {
    double linf;
    double l1;
    double kolmogorov;
    std::int64_t first_index;
    std::int64_t last_index;
};

/// Gaps against spacing * density on the lattice, summed over the support widened to mu +- 12 sigma.
DistanceReport distance_report(const LatticePmf& pmf, const DiscreteNormalRef& ref);

/// 2 A delta + eps + h / (sqrt(2 pi) A) exp(-A^2 / 2).
double l1_from_pointwise_bound(double delta, double eps, double a, double h);

/// Expected l1 error of an N-sample empirical pmf: sum_k sqrt(2 p_k (1 - p_k) / (pi N)).
double expected_sampling_l1(const LatticePmf& truth, std::uint64_t samples);

/// Largest Wilson half-width over the bins of an empirical pmf.
double wilson_noise_floor(const LatticePmf& pmf);

/// pmf CSV columns: k, prob, ref_density, abs_gap.
void write_pmf_csv(std::ostream& os, const LatticePmf& pmf, const DiscreteNormalRef& ref);

}  // namespace gnp
