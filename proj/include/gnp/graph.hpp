#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gnp {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kMaxVertices = 1u << 16;

constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Lexicographic rank of the pair (i, j), i < j, among all pairs of [n].
EdgeId edge_index(std::uint32_t n, Vertex i, Vertex j);

/// Inverse of edge_index.
std::pair<Vertex, Vertex> edge_endpoints(std::uint32_t n, EdgeId idx);

/// Simple graph on the vertex set [n], stored as a bit set over all C(n,2) edge slots.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::uint32_t n);

    /// Graph whose edge bits are the low C(n,2) bits of `mask`; needs C(n,2) <= 64.
    static Graph from_mask(std::uint32_t n, std::uint64_t mask);
    static Graph complete(std::uint32_t n);

    std::uint32_t vertex_count() const noexcept { return n_; }
    std::uint64_t slot_count() const noexcept { return slots_; }

    bool has_edge(EdgeId idx) const noexcept { return (words_[idx >> 6] >> (idx & 63)) & 1u; }
    bool has_edge(Vertex i, Vertex j) const;
    void set_edge(EdgeId idx, bool present = true) noexcept;
    void add_edge(Vertex i, Vertex j) { set_edge(edge_index(n_, i, j)); }
    void flip_edge(EdgeId idx) noexcept { words_[idx >> 6] ^= std::uint64_t{1} << (idx & 63); }

    std::uint64_t edge_count() const noexcept;
    std::uint32_t degree(Vertex v) const;
    std::vector<EdgeId> edges() const;

    /// Low 64 edge bits; needs C(n,2) <= 64.
    std::uint64_t to_mask() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::uint32_t n_ = 0;
    std::uint64_t slots_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Per-vertex neighbourhood bit sets, one row of ceil(n/64) words per vertex.
class AdjacencyRows {
public:
    explicit AdjacencyRows(const Graph& g);

    std::span<const std::uint64_t> row(Vertex v) const noexcept {
        return {bits_.data() + static_cast<std::size_t>(v) * stride_, stride_};
    }
    std::uint64_t common_neighbours(Vertex a, Vertex b) const noexcept;

private:
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> bits_;
};

std::uint64_t triangle_count(const Graph& g);

/// Edge-list text: header "n=<n>", then one "i j" line per edge in index order.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
std::string to_edge_list(const Graph& g);
Graph from_edge_list(const std::string& text);

// Special subgraphs used as the unrevealed edge set in revelation arguments.

/// Circulant k-regular bipartite graph: left u in [0, n/2) joined to right n/2 + (u + d) mod n/2, d < k.
Graph make_regular_bipartite(std::uint32_t n, std::uint32_t k);

/// floor(n/l) disjoint l-cliques on the leading vertices, l = floor(alpha n).
Graph make_clique_union(std::uint32_t n, double alpha);

/// Edges (2i, 2i+1), i < ell.
Graph make_matching(std::uint32_t n, std::uint32_t ell);

/// alpha n^2 / 2 - l^2 - n/2: the lower bound on the clique-union edge count derived from its construction.
double clique_union_edge_lower_bound(std::uint32_t n, double alpha);

/// alpha n^2 / 2 - l^2 / 2 - n, valid for every l >= 2. The expression above can exceed the edge
/// count when alpha n is fractional and l is small.
double clique_union_edge_floor(std::uint32_t n, double alpha);

/// Sum over S subset of E(h), |S| >= 2, 3 <= |supp(S)| <= k of n^(2k - 2|supp(S)|), computed by
/// inclusion-exclusion over vertex sets of size <= k.
double revelation_support_sum(const Graph& h, std::uint32_t k);

/// Number of edge subsets of h whose support is exactly `support_size` vertices, for support_size <= k.
std::vector<double> support_size_counts(const Graph& h, std::uint32_t k);

}  // namespace gnp
