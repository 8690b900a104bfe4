#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gnp/fourier.hpp"
#include "gnp/graph.hpp"

namespace gnp {

inline constexpr unsigned kMaxBaseVertices = 5;

/// f on k-vertex graphs; table index = edge mask over C(k,2) slots in edge_index order.
struct BaseFunction {
    unsigned k = 0;
    std::vector<double> table;
    std::string name;

    BaseFunction() = default;
    BaseFunction(unsigned k, std::vector<double> table, std::string name = "custom");

    double operator()(std::uint64_t mask) const { return table[mask]; }
};

/// Built-ins: "triangle", "path2-induced", "path2-hom".
BaseFunction builtin_base_function(const std::string& name);
BaseFunction base_function_from_json_text(const std::string& text);
/// Accepts a built-in name or a path to a JSON file {"k": .., "table": [..]} / {"builtin": ".."}.
BaseFunction load_base_function(const std::string& name_or_path);
std::string base_function_to_json_text(const BaseFunction& f);

using VertexPair = std::pair<Vertex, Vertex>;
/// Edge set on arbitrary vertex labels.
using LocalEdges = std::vector<VertexPair>;

struct IsoClass {
    std::uint32_t support;           // |supp(T)|
    std::uint64_t canonical_mask;    // edges on [support], edge_index order
    std::uint32_t edge_count;        // |T|
    std::uint64_t labelled_count;    // full-support edge sets on [support] in this class
    double h;
};

struct HCoefficients {
    std::vector<IsoClass> by_iso_class;
    double h_star = 0.0;  // max |h_T| over nonempty T
    double h_edge = 0.0;
    bool edge_dominated = false;
};

struct SubgraphVariance {
    double sigma2;
    std::map<std::uint32_t, double> by_support;
};

/// F_f together with its p-biased data: the base spectrum and the h_T table.
class GraphStatistic {
public:
    GraphStatistic(BaseFunction f, double p);

    const BaseFunction& base() const noexcept { return f_; }
    double p() const noexcept { return p_; }
    unsigned k() const noexcept { return f_.k; }

    /// Dense p-biased spectrum of f over C(k,2) coordinates.
    const std::vector<double>& base_spectrum() const noexcept { return fhat_; }

    /// sum over vertex injections phi: supp(T) -> [k] of fhat(phi(T)).
    double h_coefficient(const LocalEdges& t) const;

    /// (n - |supp T|)_(k - |supp T|) h_T.
    double coefficient(const LocalEdges& t, std::uint32_t n) const;

    const HCoefficients& h_table() const noexcept { return h_; }

    double mean(std::uint32_t n) const;
    SubgraphVariance variance(std::uint32_t n) const;

    /// Every nonzero coefficient of F_f on n vertices (all T with |supp T| <= k).
    FourierSpectrum spectrum(std::uint32_t n) const;

private:
    double h_of_local_mask(std::uint32_t support, std::uint64_t mask) const;

    BaseFunction f_;
    double p_;
    std::vector<double> fhat_;
    HCoefficients h_;
    // h value of every full-support labelled mask on [i], indexed [i][mask]
    std::vector<std::vector<double>> h_by_mask_;
};

double h_coefficient(const BaseFunction& f, const LocalEdges& t, double p);
double graph_statistic_coefficient(const BaseFunction& f, const LocalEdges& t, std::uint32_t n, double p);

/// F(G) = sum over injections psi: [k] -> [n] of f(psi pulled back onto G).
double evaluate_graph_statistic(const BaseFunction& f, const Graph& g);

SubgraphVariance subgraph_variance(const BaseFunction& f, std::uint32_t n, double p);

/// Single-edge coefficient as printed in the worked induced-P2 example: p^(3/2) (1-p)^(1/2) (3p - 2).
double induced_path2_reference_h_edge(double p);

/// Vertices touched by t, ascending.
std::vector<Vertex> support_of(const LocalEdges& t);

}  // namespace gnp
