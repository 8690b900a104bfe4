#include "gnp/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <stdexcept>

#include "gnp/numeric.hpp"
#include "gnp/parallel.hpp"

namespace gnp {

BiasedBasis::BiasedBasis(double p_)
    : p(p_), value_on_one(std::sqrt((1.0 - p_) / p_)), value_on_zero(-std::sqrt(p_ / (1.0 - p_))) {
    if (!(p_ > 0.0 && p_ < 1.0)) throw std::invalid_argument("bias must lie in (0,1)");
}

EdgeSet::EdgeSet(std::initializer_list<EdgeId> ids) : EdgeSet(std::vector<EdgeId>(ids)) {}

EdgeSet::EdgeSet(std::vector<EdgeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

EdgeSet EdgeSet::from_mask(std::uint64_t mask) {
    EdgeSet s;
    while (mask) {
        s.ids_.push_back(static_cast<EdgeId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return s;
}

bool EdgeSet::contains(EdgeId e) const noexcept { return std::binary_search(ids_.begin(), ids_.end(), e); }

std::uint64_t EdgeSet::to_mask() const {
    std::uint64_t mask = 0;
    for (EdgeId e : ids_) {
        if (e >= 64) throw std::out_of_range("EdgeSet::to_mask needs ids < 64");
        mask |= std::uint64_t{1} << e;
    }
    return mask;
}

std::string EdgeSet::to_hex() const {
    if (ids_.empty()) return "0x0";
    const std::size_t digits = ids_.back() / 4 + 1;
    std::string nibbles(digits, 0);
    for (EdgeId e : ids_) nibbles[e / 4] = static_cast<char>(nibbles[e / 4] | (1 << (e % 4)));
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "0x";
    for (std::size_t d = digits; d-- > 0;) out.push_back(kHex[static_cast<unsigned char>(nibbles[d])]);
    return out;
}

std::size_t EdgeSet::support_size(std::uint32_t n) const {
    std::set<Vertex> vs;
    for (EdgeId e : ids_) {
        auto [i, j] = edge_endpoints(n, e);
        vs.insert(i);
        vs.insert(j);
    }
    return vs.size();
}

double FourierSpectrum::coefficient(const EdgeSet& s) const {
    auto it = entries.find(s);
    return it == entries.end() ? 0.0 : it->second;
}

void FourierSpectrum::set(const EdgeSet& s, double c) {
    if (c == 0.0) {
        entries.erase(s);
    } else {
        entries[s] = c;
    }
}

void FourierSpectrum::add(const EdgeSet& s, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = entries.try_emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) entries.erase(it);
    }
}

double chi_eval(const EdgeSet& s, const Graph& g, double p) {
    const BiasedBasis basis(p);
    double r = 1.0;
    for (EdgeId e : s) {
        if (e >= g.slot_count()) throw std::out_of_range("chi_eval: subset outside the edge universe");
        r *= basis(g.has_edge(e));
    }
    return r;
}

unsigned table_coordinates(std::size_t table_size) {
    if (table_size == 0 || !std::has_single_bit(table_size)) {
        throw std::invalid_argument("value table length must be a power of two");
    }
    const auto m = static_cast<unsigned>(std::countr_zero(table_size));
    if (m > kMaxDenseCoordinates) throw std::invalid_argument("dense tables are capped at 30 coordinates");
    return m;
}

std::vector<double> biased_weights(unsigned m, double p) {
    if (m > kMaxDenseCoordinates) throw std::invalid_argument("dense tables are capped at 30 coordinates");
    std::vector<double> by_weight(m + 1);
    for (unsigned j = 0; j <= m; ++j) by_weight[j] = std::pow(p, j) * std::pow(1.0 - p, m - j);
    std::vector<double> w(std::size_t{1} << m);
    for (std::size_t x = 0; x < w.size(); ++x) w[x] = by_weight[static_cast<unsigned>(std::popcount(x))];
    return w;
}

double expectation(std::span<const double> table, double p) {
    const unsigned m = table_coordinates(table.size());
    const auto w = biased_weights(m, p);
    CompensatedSum acc;
    for (std::size_t x = 0; x < table.size(); ++x) acc.add(w[x] * table[x]);
    return acc.value();
}

std::vector<double> brute_force_coefficients(std::span<const double> table, double p) {
    const unsigned m = table_coordinates(table.size());
    const BiasedBasis basis(p);
    const auto w = biased_weights(m, p);
    std::vector<double> wf(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) wf[x] = w[x] * table[x];

    std::vector<double> pow_one(m + 1);
    std::vector<double> pow_zero(m + 1);
    for (unsigned j = 0; j <= m; ++j) {
        pow_one[j] = std::pow(basis.value_on_one, j);
        pow_zero[j] = std::pow(basis.value_on_zero, j);
    }

    std::vector<double> coeffs(table.size());
    for_each_block(table.size(), worker_count(), [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t s = begin; s < end; ++s) {
            const auto deg = static_cast<unsigned>(std::popcount(s));
            CompensatedSum acc;
            for (std::size_t x = 0; x < wf.size(); ++x) {
                const auto hit = static_cast<unsigned>(std::popcount(s & x));
                acc.add(wf[x] * pow_one[hit] * pow_zero[deg - hit]);
            }
            coeffs[s] = acc.value();
        }
    });
    return coeffs;
}

FourierSpectrum to_sparse(std::span<const double> coefficients, double, std::uint32_t vertex_count) {
    const unsigned m = table_coordinates(coefficients.size());
    FourierSpectrum spec;
    spec.vertex_count = vertex_count;
    spec.m = m;
    for (std::size_t s = 0; s < coefficients.size(); ++s) {
        if (std::abs(coefficients[s]) >= kSpectrumDropThreshold) {
            spec.entries.emplace_hint(spec.entries.end(), EdgeSet::from_mask(s), coefficients[s]);
        }
    }
    return spec;
}

FourierSpectrum brute_force_transform(std::span<const double> table, double p, std::uint32_t vertex_count) {
    if (vertex_count != 0 && pair_count(vertex_count) != table_coordinates(table.size())) {
        throw std::invalid_argument("table size does not match C(n,2) coordinates");
    }
    return to_sparse(brute_force_coefficients(table, p), p, vertex_count);
}

std::vector<double> fast_coefficients(std::span<const double> table, double p) {
    const unsigned m = table_coordinates(table.size());
    const double s = std::sqrt(p * (1.0 - p));
    std::vector<double> c(table.begin(), table.end());
    for (unsigned e = 0; e < m; ++e) {
        const std::size_t bit = std::size_t{1} << e;
        for (std::size_t x = 0; x < c.size(); ++x) {
            if (x & bit) continue;
            const double f0 = c[x];
            const double f1 = c[x | bit];
            c[x] = (1.0 - p) * f0 + p * f1;
            c[x | bit] = s * (f1 - f0);
        }
    }
    return c;
}

std::vector<double> fast_reconstruct(std::span<const double> coefficients, double p) {
    const unsigned m = table_coordinates(coefficients.size());
    const BiasedBasis basis(p);
    std::vector<double> f(coefficients.begin(), coefficients.end());
    for (unsigned e = 0; e < m; ++e) {
        const std::size_t bit = std::size_t{1} << e;
        for (std::size_t x = 0; x < f.size(); ++x) {
            if (x & bit) continue;
            const double c0 = f[x];
            const double c1 = f[x | bit];
            f[x] = c0 + basis.value_on_zero * c1;
            f[x | bit] = c0 + basis.value_on_one * c1;
        }
    }
    return f;
}

double reconstruct_at(const FourierSpectrum& spec, std::uint64_t x, double p) {
    const BiasedBasis basis(p);
    CompensatedSum acc;
    for (const auto& [s, c] : spec.entries) {
        double chi = 1.0;
        for (EdgeId e : s) chi *= basis(e < 64 && ((x >> e) & 1u));
        acc.add(c * chi);
    }
    return acc.value();
}

double parseval_variance(const FourierSpectrum& spec) {
    CompensatedSum acc;
    for (const auto& [s, c] : spec.entries) {
        if (!s.empty()) acc.add(c * c);
    }
    return acc.value();
}

WeightProfile weight_profile(const FourierSpectrum& spec) {
    std::map<std::size_t, CompensatedSum> deg;
    std::map<std::size_t, CompensatedSum> sup;
    for (const auto& [s, c] : spec.entries) {
        deg[s.size()].add(c * c);
        if (spec.vertex_count != 0) sup[s.support_size(spec.vertex_count)].add(c * c);
    }
    WeightProfile out;
    for (const auto& [j, acc] : deg) out.by_degree[j] = acc.value();
    for (const auto& [j, acc] : sup) out.by_support[j] = acc.value();
    return out;
}

std::vector<double> restrict_function(std::span<const double> table, std::uint64_t h, std::uint64_t beta) {
    const unsigned m = table_coordinates(table.size());
    const std::uint64_t full = (m == 64) ? ~0ull : ((std::uint64_t{1} << m) - 1);
    if (h & ~full) throw std::invalid_argument("restriction set outside the coordinate range");
    std::vector<unsigned> coords;
    for (unsigned e = 0; e < m; ++e) {
        if ((h >> e) & 1u) coords.push_back(e);
    }
    const std::uint64_t fixed = beta & ~h & full;
    std::vector<double> out(std::size_t{1} << coords.size());
    for (std::size_t a = 0; a < out.size(); ++a) {
        std::uint64_t x = fixed;
        for (std::size_t b = 0; b < coords.size(); ++b) {
            if ((a >> b) & 1u) x |= std::uint64_t{1} << coords[b];
        }
        out[a] = table[x];
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, const FourierSpectrum& spec) {
    const auto old_precision = os.precision();
    os << "# schema=gnp.spectrum/1 n=" << spec.vertex_count << " m=" << spec.m << '\n';
    os << "subset,support_size,degree,coefficient\n";
    os << std::setprecision(17);
    for (const auto& [s, c] : spec.entries) {
        const std::size_t support = spec.vertex_count != 0 ? s.support_size(spec.vertex_count) : 0;
        os << s.to_hex() << ',' << support << ',' << s.size() << ',' << c << '\n';
    }
    os.precision(old_precision);
}

}  // namespace gnp
