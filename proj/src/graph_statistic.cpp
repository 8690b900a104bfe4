#include "gnp/graph_statistic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gnp/numeric.hpp"

namespace gnp {

namespace {

using json = nlohmann::json;

// Local edge slots of the complete graph on [i].
std::vector<VertexPair> local_pairs(std::uint32_t i) {
    std::vector<VertexPair> out;
    for (Vertex a = 0; a < i; ++a) {
        for (Vertex b = a + 1; b < i; ++b) out.emplace_back(a, b);
    }
    return out;
}

std::uint64_t relabel(std::uint64_t mask, std::uint32_t from_n, std::uint32_t to_n, std::span<const Vertex> image) {
    std::uint64_t out = 0;
    const auto pairs = local_pairs(from_n);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        if ((mask >> e) & 1u) out |= std::uint64_t{1} << edge_index(to_n, image[pairs[e].first], image[pairs[e].second]);
    }
    return out;
}

bool full_support(std::uint64_t mask, std::uint32_t i) {
    std::uint32_t touched = 0;
    const auto pairs = local_pairs(i);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        if ((mask >> e) & 1u) touched |= (1u << pairs[e].first) | (1u << pairs[e].second);
    }
    return touched == (i == 0 ? 0u : (1u << i) - 1);
}

std::uint64_t canonical_mask(std::uint64_t mask, std::uint32_t i) {
    std::vector<Vertex> perm(i);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = mask;
    do {
        best = std::min(best, relabel(mask, i, i, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Calls fn(image) for every injection [i] -> [k].
template <class Fn>
void for_each_injection(std::uint32_t i, std::uint32_t k, Fn&& fn) {
    std::vector<Vertex> image(i);
    std::vector<char> used(k, 0);
    auto rec = [&](auto&& self, std::uint32_t pos) -> void {
        if (pos == i) {
            fn(std::span<const Vertex>(image));
            return;
        }
        for (Vertex v = 0; v < k; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            image[pos] = v;
            self(self, pos + 1);
            used[v] = 0;
        }
    };
    rec(rec, 0);
}

}  // namespace

BaseFunction::BaseFunction(unsigned k_, std::vector<double> table_, std::string name_)
    : k(k_), table(std::move(table_)), name(std::move(name_)) {
    if (k < 2 || k > kMaxBaseVertices) throw std::invalid_argument("base function needs 2 <= k <= 5");
    if (table.size() != (std::size_t{1} << pair_count(k))) {
        throw std::invalid_argument("base function table must have 2^C(k,2) entries");
    }
}

BaseFunction builtin_base_function(const std::string& name) {
    // vertex labels 0,1,2; slots (0,1)=0, (0,2)=1, (1,2)=2
    std::vector<double> t(8, 0.0);
    for (std::uint64_t x = 0; x < 8; ++x) {
        const bool x01 = x & 1u;
        const bool x02 = x & 2u;
        const bool x12 = x & 4u;
        if (name == "triangle") {
            t[x] = (x01 && x02 && x12) ? 1.0 : 0.0;
        } else if (name == "path2-induced") {
            t[x] = (x01 && x12 && !x02) ? 1.0 : 0.0;
        } else if (name == "path2-hom") {
            t[x] = (x01 && x12) ? 1.0 : 0.0;
        } else {
            throw std::invalid_argument("unknown built-in statistic '" + name + "'");
        }
    }
    return BaseFunction(3, std::move(t), name);
}

BaseFunction base_function_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("base function JSON: ") + e.what());
    }
    if (j.contains("builtin")) return builtin_base_function(j.at("builtin").get<std::string>());
    if (!j.contains("k") || !j.contains("table")) {
        throw std::invalid_argument("base function JSON needs fields 'k' and 'table'");
    }
    const auto name = j.value("name", std::string("custom"));
    return BaseFunction(j.at("k").get<unsigned>(), j.at("table").get<std::vector<double>>(), name);
}

BaseFunction load_base_function(const std::string& name_or_path) {
    if (name_or_path == "triangle" || name_or_path == "path2-induced" || name_or_path == "path2-hom") {
        return builtin_base_function(name_or_path);
    }
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("cannot open base function file '" + name_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return base_function_from_json_text(ss.str());
}

std::string base_function_to_json_text(const BaseFunction& f) {
    json j;
    j["k"] = f.k;
    j["name"] = f.name;
    j["table"] = f.table;
    return j.dump();
}

std::vector<Vertex> support_of(const LocalEdges& t) {
    std::vector<Vertex> vs;
    for (auto [a, b] : t) {
        if (a == b) throw std::invalid_argument("edge set contains a loop");
        vs.push_back(a);
        vs.push_back(b);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

GraphStatistic::GraphStatistic(BaseFunction f, double p)
    : f_(std::move(f)), p_(p), fhat_(brute_force_coefficients(f_.table, p)) {
    if (f_.table.size() != (std::size_t{1} << pair_count(f_.k))) {
        throw std::invalid_argument("base function table must have 2^C(k,2) entries");
    }
    const std::uint32_t k = f_.k;
    h_by_mask_.resize(k + 1);
    std::map<std::pair<std::uint32_t, std::uint64_t>, IsoClass> classes;
    for (std::uint32_t i = 0; i <= k; ++i) {
        if (i == 1) continue;
        const std::uint64_t masks = std::uint64_t{1} << pair_count(i);
        h_by_mask_[i].assign(masks, 0.0);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            if (!full_support(mask, i)) continue;
            const double h = h_of_local_mask(i, mask);
            h_by_mask_[i][mask] = h;
            const std::uint64_t canon = canonical_mask(mask, i);
            auto [it, inserted] = classes.try_emplace(
                {i, canon}, IsoClass{i, canon, static_cast<std::uint32_t>(std::popcount(mask)), 0, 0.0});
            ++it->second.labelled_count;
            if (mask == canon) it->second.h = h;
        }
    }
    for (auto& [key, cls] : classes) {
        h_.by_iso_class.push_back(cls);
        if (cls.edge_count > 0) h_.h_star = std::max(h_.h_star, std::abs(cls.h));
    }
    h_.h_edge = h_by_mask_[2][1];
    h_.edge_dominated = std::abs(h_.h_edge) > 1e-12;
}

double GraphStatistic::h_of_local_mask(std::uint32_t support, std::uint64_t mask) const {
    CompensatedSum acc;
    for_each_injection(support, f_.k, [&](std::span<const Vertex> image) {
        acc.add(fhat_[relabel(mask, support, f_.k, image)]);
    });
    return acc.value();
}

double GraphStatistic::h_coefficient(const LocalEdges& t) const {
    const auto vs = support_of(t);
    if (vs.size() > f_.k) throw std::invalid_argument("edge set supported on more than k vertices");
    const auto s = static_cast<std::uint32_t>(vs.size());
    std::uint64_t mask = 0;
    for (auto [a, b] : t) {
        const auto ia = static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), a) - vs.begin());
        const auto ib = static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), b) - vs.begin());
        mask |= std::uint64_t{1} << edge_index(s, ia, ib);
    }
    return h_of_local_mask(s, mask);
}

double GraphStatistic::coefficient(const LocalEdges& t, std::uint32_t n) const {
    if (f_.k > n) throw std::invalid_argument("graph statistic needs k <= n");
    const auto s = static_cast<std::int64_t>(support_of(t).size());
    return falling_factorial(static_cast<std::int64_t>(n) - s, static_cast<std::int64_t>(f_.k) - s) * h_coefficient(t);
}

double GraphStatistic::mean(std::uint32_t n) const {
    if (f_.k > n) throw std::invalid_argument("graph statistic needs k <= n");
    return falling_factorial(n, f_.k) * fhat_[0];
}

SubgraphVariance GraphStatistic::variance(std::uint32_t n) const {
    if (f_.k > n) throw std::invalid_argument("graph statistic needs k <= n");
    SubgraphVariance out{0.0, {}};
    CompensatedSum total;
    for (std::uint32_t i = 2; i <= f_.k; ++i) {
        CompensatedSum inner;
        for (const auto& cls : h_.by_iso_class) {
            if (cls.support == i) inner.add(static_cast<double>(cls.labelled_count) * cls.h * cls.h);
        }
        const double ff = falling_factorial(static_cast<std::int64_t>(n) - i, static_cast<std::int64_t>(f_.k) - i);
        const double part = ff * ff * binomial(n, i) * inner.value();
        out.by_support[i] = part;
        total.add(part);
    }
    out.sigma2 = total.value();
    return out;
}

FourierSpectrum GraphStatistic::spectrum(std::uint32_t n) const {
    if (f_.k > n) throw std::invalid_argument("graph statistic needs k <= n");
    FourierSpectrum spec;
    spec.vertex_count = n;
    spec.m = pair_count(n);
    spec.set(EdgeSet{}, mean(n));
    std::vector<Vertex> chosen;
    auto rec = [&](auto&& self, Vertex start) -> void {
        const auto i = static_cast<std::uint32_t>(chosen.size());
        if (i >= 2) {
            const double ff = falling_factorial(static_cast<std::int64_t>(n) - i, static_cast<std::int64_t>(f_.k) - i);
            const auto pairs = local_pairs(i);
            for (std::uint64_t mask = 0; mask < h_by_mask_[i].size(); ++mask) {
                const double h = h_by_mask_[i][mask];
                if (std::abs(h) < kSpectrumDropThreshold) continue;
                std::vector<EdgeId> ids;
                for (std::size_t e = 0; e < pairs.size(); ++e) {
                    if ((mask >> e) & 1u) ids.push_back(edge_index(n, chosen[pairs[e].first], chosen[pairs[e].second]));
                }
                spec.set(EdgeSet(std::move(ids)), ff * h);
            }
        }
        if (i == f_.k) return;
        for (Vertex v = start; v < n; ++v) {
            chosen.push_back(v);
            self(self, v + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return spec;
}

double h_coefficient(const BaseFunction& f, const LocalEdges& t, double p) {
    return GraphStatistic(f, p).h_coefficient(t);
}

double graph_statistic_coefficient(const BaseFunction& f, const LocalEdges& t, std::uint32_t n, double p) {
    return GraphStatistic(f, p).coefficient(t, n);
}

double evaluate_graph_statistic(const BaseFunction& f, const Graph& g) {
    const std::uint32_t n = g.vertex_count();
    if (f.k > n) throw std::invalid_argument("graph statistic needs k <= n");
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
    for (EdgeId e : g.edges()) {
        auto [i, j] = edge_endpoints(n, e);
        adj[i * n + j] = adj[j * n + i] = 1;
    }
    const auto pairs = local_pairs(f.k);
    CompensatedSum acc;
    for_each_injection(f.k, n, [&](std::span<const Vertex> psi) {
        std::uint64_t mask = 0;
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            if (adj[psi[pairs[e].first] * n + psi[pairs[e].second]]) mask |= std::uint64_t{1} << e;
        }
        acc.add(f.table[mask]);
    });
    return acc.value();
}

SubgraphVariance subgraph_variance(const BaseFunction& f, std::uint32_t n, double p) {
    return GraphStatistic(f, p).variance(n);
}

double induced_path2_reference_h_edge(double p) {
    return std::pow(p, 1.5) * std::sqrt(1.0 - p) * (3.0 * p - 2.0);
}

}  // namespace gnp
