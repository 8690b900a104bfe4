#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gnp/graph.hpp"

namespace gnp {

inline constexpr unsigned kMaxDenseCoordinates = 30;

/// Coefficients with magnitude below this are dropped from transformed sparse spectra.
inline constexpr double kSpectrumDropThreshold = 1e-13;

/// chi_e on one coordinate: mean 0, variance 1 under the p-biased measure.
struct BiasedBasis {
    double p;
    double value_on_one;   // +sqrt((1-p)/p)
    double value_on_zero;  // -sqrt(p/(1-p))

    explicit BiasedBasis(double p);

    double operator()(bool bit) const noexcept { return bit ? value_on_one : value_on_zero; }
};

/// Subset of edge slots, kept sorted and duplicate free.
class EdgeSet {
public:
    EdgeSet() = default;
    EdgeSet(std::initializer_list<EdgeId> ids);
    explicit EdgeSet(std::vector<EdgeId> ids);

    static EdgeSet from_mask(std::uint64_t mask);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    bool contains(EdgeId e) const noexcept;
    const std::vector<EdgeId>& ids() const noexcept { return ids_; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }

    /// Needs every id < 64.
    std::uint64_t to_mask() const;

    /// Big-endian hexadecimal bit mask, "0x0" for the empty set.
    std::string to_hex() const;

    /// Number of distinct vertices touched, edges read as pairs of [n].
    std::size_t support_size(std::uint32_t n) const;

    friend auto operator<=>(const EdgeSet&, const EdgeSet&) = default;

private:
    std::vector<EdgeId> ids_;
};

/// Sparse Fourier coefficients over subsets of m edge slots. `vertex_count` is the n with
/// m = C(n,2) when the coordinates are graph edges, 0 otherwise.
struct FourierSpectrum {
    std::uint32_t vertex_count = 0;
    std::uint64_t m = 0;
    std::map<EdgeSet, double> entries;

    double coefficient(const EdgeSet& s) const;
    /// Stores c, erasing the entry instead when c == 0.
    void set(const EdgeSet& s, double c);
    void add(const EdgeSet& s, double c);
    std::size_t size() const noexcept { return entries.size(); }
};

double chi_eval(const EdgeSet& s, const Graph& g, double p);

/// Product weight p^|x| (1-p)^(m-|x|) of every point of {0,1}^m.
std::vector<double> biased_weights(unsigned m, double p);

/// E_p[f] by weighted enumeration with compensated summation.
double expectation(std::span<const double> table, double p);

/// Dense coefficient vector (index = subset mask), each entry summed over all 2^m points.
std::vector<double> brute_force_coefficients(std::span<const double> table, double p);

/// Sparse spectrum from brute_force_coefficients, small entries dropped.
FourierSpectrum brute_force_transform(std::span<const double> table, double p, std::uint32_t vertex_count = 0);

/// Same coefficients by the O(m 2^m) coordinate-wise butterfly.
std::vector<double> fast_coefficients(std::span<const double> table, double p);

/// Value table sum_S c(S) chi_S(x) from a dense coefficient vector, by butterfly.
std::vector<double> fast_reconstruct(std::span<const double> coefficients, double p);

/// sum_S c(S) chi_S(x) at one point x (bits as edge mask).
double reconstruct_at(const FourierSpectrum& spec, std::uint64_t x, double p);

FourierSpectrum to_sparse(std::span<const double> coefficients, double p, std::uint32_t vertex_count = 0);

/// Sum of squared coefficients over nonempty subsets.
double parseval_variance(const FourierSpectrum& spec);

struct WeightProfile {
    std::map<std::size_t, double> by_degree;   // j -> W^j
    std::map<std::size_t, double> by_support;  // |supp(S)| -> mass, graph spectra only
};

WeightProfile weight_profile(const FourierSpectrum& spec);

/// Value table of f restricted to the coordinates in `h` (ascending order becomes bit order);
/// the remaining coordinates are fixed to the bits of `beta`.
std::vector<double> restrict_function(std::span<const double> table, std::uint64_t h, std::uint64_t beta);

/// CSV columns: subset (hex mask), support_size, degree, coefficient.
void write_spectrum_csv(std::ostream& os, const FourierSpectrum& spec);

unsigned table_coordinates(std::size_t table_size);

}  // namespace gnp
