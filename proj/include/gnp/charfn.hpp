#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnp/distribution.hpp"

namespace gnp {

using Complex = std::complex<double>;

/// Characteristic function sampled on an ascending t-grid.
struct ChfGrid {
    std::vector<double> ts;
    std::vector<Complex> values;
};

/// Recentering/rescaling x -> (x - mu) / sigma applied before transforming.
struct Normalization {
    double mu;
    double sigma;
};

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

Complex chf_at(const LatticePmf& pmf, double t, const std::optional<Normalization>& norm = std::nullopt);
ChfGrid chf_from_pmf(const LatticePmf& pmf, std::span<const double> ts,
                     const std::optional<Normalization>& norm = std::nullopt);

/// Lattice of the (possibly normalized) pmf: spacing and the lattice point of each index.
double lattice_spacing(const LatticePmf& pmf, const std::optional<Normalization>& norm = std::nullopt);

struct QuadratureResult {
    double value;
    double coarse;  // same rule on every other grid point
    bool resolved;  // |value - coarse| < tolerance
};

/// Trapezoid value of (h / 2 pi) int_{-pi/h}^{pi/h} e^{-itx} phi(t) dt. The grid must be uniform over
/// exactly that window with an even number of intervals.
QuadratureResult invert_lattice(const ChfGrid& chf, double x, double h, double tolerance = 1e-9);

/// h (gap_integral + e^{-t^2/2} / (sqrt(2 pi) t)) with t = pi / h.
double pointwise_gap_bound(double gap_integral, double h);

/// int_{-tmax}^{tmax} |phi_Z(t) - e^{-t^2/2}| dt by the trapezoid rule on [0, tmax] (integrand is even).
QuadratureResult chf_gap_integral(const LatticePmf& pmf, const Normalization& norm, double tmax,
                                  std::size_t intervals, double tolerance = 1e-9);

/// int_{-T}^{T} |(phi_Z(t) - e^{-t^2/2}) / t| dt.
QuadratureResult smoothing_integral(const LatticePmf& pmf, const Normalization& norm, double cutoff,
                                    std::size_t intervals, double tolerance = 1e-9);

/// (1/pi) integral + 24 / (pi sqrt(2 pi) T).
double smoothing_bound(double gap_over_t_integral, double cutoff);

struct BernoulliChfBound {
    double exact_modulus;
    double bound;  // 1 - 2 t^2 / pi^2
};

/// |E e^{itX}| for the standardized p-Bernoulli X against its quadratic bound; needs |t| < sqrt(p(1-p)) pi.
BernoulliChfBound bernoulli_chf_bound(double p, double t);

struct BerryEsseenTerm {
    double l_n;        // (p^2 + (1-p)^2) / sqrt(C(n,2) p (1-p))
    double value;      // 16 L_n |t|^3 e^{-t^2/3}
    double t_max;      // 1 / (4 L_n)
    bool in_window;
};

BerryEsseenTerm berry_esseen_term(std::uint32_t n, double p, double t);

/// (sqrt(2e / lambda))^k, the smallest t for which the tail bound applies.
double hypercontractive_threshold(unsigned k, double lambda);

/// lambda^k exp(-(k / 2e) lambda t^(2/k)).
double hypercontractive_tail(unsigned k, double lambda, double t);

enum class Regime { small, mid, large, huge };

Regime parse_regime(const std::string& name);
std::string regime_name(Regime r);

struct ShapeParams {
    double constant = 1.0;
    double eps = 0.1;
    /// Upper end of the huge window pi * sigma; 0 means the triangle-count sigma at (n, p).
    double sigma = 0.0;
};

struct RegimeWindow {
    double lo;
    double hi;
};

RegimeWindow regime_window(Regime r, std::uint32_t n, double p, const ShapeParams& params = {});

/// Bound shapes with a caller-supplied constant:
///   small  C (t^3 e^{-t^2/3} / n + t / sqrt n)      |t| <= 1 / (4 L_n)
///   mid    C / (sqrt n t^(1-eps))                    n^eps < t <= n^(1/2 + eps/4)
///   large  C / (t n^(1-eps))                         n^(1/2+eps) <= t <= n^(1-eps)
///   huge   C t^(-50)                                 n^(1/2+eps) <= t <= pi sigma
double theorem_bound_shape(std::uint32_t n, double p, double t, Regime r, const ShapeParams& params = {});

/// t^3 e^{-t^2/3} / n + t / sqrt n, with no window check.
double small_t_shape(std::uint32_t n, double t);

/// chf CSV columns: t, re, im, modulus, normal_chf, gap.
void write_chf_csv(std::ostream& os, const ChfGrid& chf);

}  // namespace gnp
