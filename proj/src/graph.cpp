#include "gnp/graph.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gnp/numeric.hpp"

namespace gnp {

namespace {

std::uint64_t row_start(std::uint64_t n, std::uint64_t i) { return i * n - i * (i + 1) / 2; }

std::size_t word_count(std::uint64_t bits) { return static_cast<std::size_t>((bits + 63) / 64); }

}  // namespace

EdgeId edge_index(std::uint32_t n, Vertex i, Vertex j) {
    if (i > j) std::swap(i, j);
    if (i == j || j >= n) throw std::out_of_range("edge_index: need i != j < n");
    return static_cast<EdgeId>(row_start(n, i) + (j - i - 1));
}

std::pair<Vertex, Vertex> edge_endpoints(std::uint32_t n, EdgeId idx) {
    if (idx >= pair_count(n)) throw std::out_of_range("edge_endpoints: index out of range");
    // row_start(i) <= idx < row_start(i+1); solve the quadratic and correct for rounding
    const double nn = static_cast<double>(n);
    const double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(idx);
    auto i = static_cast<std::int64_t>(std::floor(((2.0 * nn - 1.0) - std::sqrt(disc)) / 2.0));
    if (i < 0) i = 0;
    while (i > 0 && row_start(n, static_cast<std::uint64_t>(i)) > idx) --i;
    while (row_start(n, static_cast<std::uint64_t>(i + 1)) <= idx) ++i;
    const auto ui = static_cast<std::uint64_t>(i);
    return {static_cast<Vertex>(ui), static_cast<Vertex>(idx - row_start(n, ui) + ui + 1)};
}

Graph::Graph(std::uint32_t n) : n_(n), slots_(pair_count(n)), words_(word_count(slots_), 0) {
    if (n > kMaxVertices) throw std::invalid_argument("graph too large for 32-bit edge indexing");
}

Graph Graph::from_mask(std::uint32_t n, std::uint64_t mask) {
    Graph g(n);
    if (g.slots_ > 64) throw std::invalid_argument("from_mask needs C(n,2) <= 64");
    if (g.slots_ == 0) return g;
    if (g.slots_ < 64) mask &= (std::uint64_t{1} << g.slots_) - 1;
    g.words_[0] = mask;
    return g;
}

Graph Graph::complete(std::uint32_t n) {
    Graph g(n);
    for (std::uint64_t e = 0; e < g.slots_; ++e) g.set_edge(static_cast<EdgeId>(e));
    return g;
}

bool Graph::has_edge(Vertex i, Vertex j) const { return has_edge(edge_index(n_, i, j)); }

void Graph::set_edge(EdgeId idx, bool present) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    if (present) {
        words_[idx >> 6] |= bit;
    } else {
        words_[idx >> 6] &= ~bit;
    }
}

std::uint64_t Graph::edge_count() const noexcept {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::uint32_t Graph::degree(Vertex v) const {
    if (v >= n_) throw std::out_of_range("degree: vertex out of range");
    std::uint32_t d = 0;
    for (Vertex u = 0; u < n_; ++u) {
        if (u != v && has_edge(u, v)) ++d;
    }
    return d;
}

std::vector<EdgeId> Graph::edges() const {
    std::vector<EdgeId> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            out.push_back(static_cast<EdgeId>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
            bits &= bits - 1;
        }
    }
    return out;
}

std::uint64_t Graph::to_mask() const {
    if (slots_ > 64) throw std::invalid_argument("to_mask needs C(n,2) <= 64");
    return words_.empty() ? 0 : words_[0];
}

AdjacencyRows::AdjacencyRows(const Graph& g)
    : stride_(word_count(g.vertex_count())),
      bits_(stride_ * g.vertex_count(), 0) {
    const std::uint32_t n = g.vertex_count();
    for (EdgeId e : g.edges()) {
        auto [i, j] = edge_endpoints(n, e);
        bits_[i * stride_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        bits_[j * stride_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
    }
}

std::uint64_t AdjacencyRows::common_neighbours(Vertex a, Vertex b) const noexcept {
    const std::uint64_t* ra = bits_.data() + a * stride_;
    const std::uint64_t* rb = bits_.data() + b * stride_;
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < stride_; ++w) c += static_cast<std::uint64_t>(std::popcount(ra[w] & rb[w]));
    return c;
}

std::uint64_t triangle_count(const Graph& g) {
    const std::uint32_t n = g.vertex_count();
    if (n < 3) return 0;
    AdjacencyRows adj(g);
    std::uint64_t total = 0;
    for (EdgeId e : g.edges()) {
        auto [i, j] = edge_endpoints(n, e);
        total += adj.common_neighbours(i, j);
    }
    return total / 3;
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << "n=" << g.vertex_count() << '\n';
    for (EdgeId e : g.edges()) {
        auto [i, j] = edge_endpoints(g.vertex_count(), e);
        os << i << ' ' << j << '\n';
    }
}

Graph read_edge_list(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("n=", 0) != 0) {
        throw std::invalid_argument("edge list: missing 'n=<n>' header");
    }
    const unsigned long n = std::stoul(line.substr(2));
    if (n > kMaxVertices) throw std::invalid_argument("edge list: n too large");
    Graph g(static_cast<std::uint32_t>(n));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long i = -1;
        long long j = -1;
        if (!(ls >> i >> j) || i < 0 || j < 0 || i >= static_cast<long long>(n) ||
            j >= static_cast<long long>(n) || i == j) {
            throw std::invalid_argument("edge list: bad edge line '" + line + "'");
        }
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
    return g;
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

Graph from_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

Graph make_regular_bipartite(std::uint32_t n, std::uint32_t k) {
    if (n % 2 != 0) throw std::invalid_argument("regular bipartite graph needs even n");
    const std::uint32_t half = n / 2;
    if (k > half) throw std::invalid_argument("regular bipartite degree exceeds n/2");
    Graph g(n);
    for (Vertex u = 0; u < half; ++u) {
        for (std::uint32_t d = 0; d < k; ++d) g.add_edge(u, half + (u + d) % half);
    }
    return g;
}

Graph make_clique_union(std::uint32_t n, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("clique union needs alpha in (0,1]");
    const auto ell = static_cast<std::uint32_t>(std::floor(alpha * n));
    if (ell < 2) throw std::invalid_argument("clique union needs floor(alpha n) >= 2");
    Graph g(n);
    const std::uint32_t cliques = n / ell;
    for (std::uint32_t c = 0; c < cliques; ++c) {
        const Vertex base = c * ell;
        for (Vertex a = 0; a < ell; ++a) {
            for (Vertex b = a + 1; b < ell; ++b) g.add_edge(base + a, base + b);
        }
    }
    if (static_cast<double>(g.edge_count()) < alpha * n / 2.0) {
        throw std::logic_error("clique union has fewer than alpha n / 2 edges");
    }
    return g;
}

Graph make_matching(std::uint32_t n, std::uint32_t ell) {
    if (2ull * ell > n) throw std::invalid_argument("matching size exceeds n/2");
    Graph g(n);
    for (Vertex i = 0; i < ell; ++i) g.add_edge(2 * i, 2 * i + 1);
    return g;
}

double clique_union_edge_lower_bound(std::uint32_t n, double alpha) {
    const double ell = std::floor(alpha * n);
    const double nn = n;
    return alpha * nn * nn / 2.0 - ell * ell - nn / 2.0;
}

double clique_union_edge_floor(std::uint32_t n, double alpha) {
    const double ell = std::floor(alpha * n);
    const double nn = n;
    return alpha * nn * nn / 2.0 - ell * ell / 2.0 - nn;
}

std::vector<double> support_size_counts(const Graph& h, std::uint32_t k) {
    const std::uint32_t n = h.vertex_count();
    if (k > 8) throw std::invalid_argument("support_size_counts limited to k <= 8");
    std::vector<double> counts(k + 1, 0.0);
    counts[0] = 1.0;
    std::vector<Vertex> chosen;

    // For each vertex set U, subsets of E(h[U]) covering all of U, by inclusion-exclusion over W subset of U.
    auto visit = [&](auto&& self, Vertex start) -> void {
        const auto s = static_cast<std::uint32_t>(chosen.size());
        if (s >= 2) {
            double covering = 0.0;
            for (std::uint32_t w = 0; w < (1u << s); ++w) {
                std::uint32_t e = 0;
                for (std::uint32_t a = 0; a < s; ++a) {
                    if (!((w >> a) & 1u)) continue;
                    for (std::uint32_t b = a + 1; b < s; ++b) {
                        if (((w >> b) & 1u) && h.has_edge(chosen[a], chosen[b])) ++e;
                    }
                }
                const int sign = ((s - static_cast<std::uint32_t>(std::popcount(w))) % 2 == 0) ? 1 : -1;
                covering += sign * std::ldexp(1.0, static_cast<int>(e));
            }
            counts[s] += covering;
        }
        if (s == k) return;
        for (Vertex v = start; v < n; ++v) {
            chosen.push_back(v);
            self(self, v + 1);
            chosen.pop_back();
        }
    };
    visit(visit, 0);
    return counts;
}

double revelation_support_sum(const Graph& h, std::uint32_t k) {
    const auto counts = support_size_counts(h, k);
    const double n = h.vertex_count();
    double total = 0.0;
    for (std::uint32_t s = 3; s <= k; ++s) {
        total += counts[s] * std::pow(n, 2.0 * k - 2.0 * s);
    }
    return total;
}

}  // namespace gnp
