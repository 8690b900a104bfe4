#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gnp/charfn.hpp"
#include "gnp/distribution.hpp"
#include "gnp/fourier.hpp"
#include "gnp/graph.hpp"
#include "gnp/graph_statistic.hpp"
#include "gnp/restriction.hpp"
#include "gnp/triangle.hpp"
#include "json.hpp"

namespace gnp::cli {
namespace {

using nlohmann::json;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Mode { exact, mc };

struct RunConfig {
    std::string command;
    std::uint32_t n = 5;
    std::string n_grid;
    double p = 0.5;
    std::string stat = "triangle";
    std::string mode = "exact";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    double tmin = 0.0;
    double tmax = 3.0;
    std::size_t steps = 600;
    std::string out;
    std::string report;
    std::string format = "csv";
    bool dump = false;
    std::string method = "closed";
    std::string claim;
    std::uint32_t k = 2;
    std::string h_kind = "bipartite";
    double alpha = 0.5;
    std::uint64_t trials = 1000;
    double t = 1.0;
};

Statistic statistic_of(const std::string& name) {
    if (name == "triangle") return TriangleStatistic{};
    return load_base_function(name);
}

BaseFunction base_of(const std::string& name) { return load_base_function(name); }

void require_exact_feasible(std::uint32_t n) {
    if (pair_count(n) > kMaxEnumerationSlots) {
        throw ConfigError("exact mode needs C(n,2) <= 30, got C(" + std::to_string(n) + ",2) = " +
                          std::to_string(pair_count(n)) + "; use --mode mc");
    }
}

Mode parse_mode(const std::string& m) {
    if (m == "exact") return Mode::exact;
    if (m == "mc") return Mode::mc;
    throw ConfigError("unknown mode '" + m + "'");
}

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie in (0, 1)");
}

LatticePmf compute_pmf(const Statistic& s, std::uint32_t n, double p, Mode mode, const RunConfig& cfg) {
    if (mode == Mode::exact) {
        require_exact_feasible(n);
        return exact_pmf(s, n, p);
    }
    return mc_pmf(s, n, cfg.samples, Sampler(p, cfg.seed));
}

std::vector<std::uint32_t> parse_grid(const std::string& text) {
    std::vector<std::uint32_t> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad n-grid entry '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos || v < 1)
            throw ConfigError("bad n-grid entry '" + item + "'");
        grid.push_back(static_cast<std::uint32_t>(v));
    }
    if (grid.empty()) throw ConfigError("n-grid is empty");
    return grid;
}

// Writes to the --out file when given, otherwise to the primary stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

json report_json(const RunConfig& cfg, const Statistic& s, std::uint32_t n, const LatticePmf& pmf, Mode mode) {
    const double mu = statistic_mean(s, n, cfg.p);
    const double sigma = std::sqrt(statistic_variance(s, n, cfg.p));
    const auto d = distance_report(pmf, discrete_normal(mu, sigma));
    json j{{"schema", "gnp.report/1"},
           {"n", n},
           {"p", cfg.p},
           {"statistic", statistic_name(s)},
           {"mu", mu},
           {"sigma", sigma},
           {"linf", d.linf},
           {"l1", d.l1},
           {"kolmogorov", d.kolmogorov},
           {"mode", mode == Mode::exact ? "exact" : "mc"},
           {"samples", mode == Mode::exact ? 0 : cfg.samples},
           {"seed", cfg.seed}};
    if (mode == Mode::mc) {
        j["noise_linf"] = wilson_noise_floor(pmf);
        j["noise_l1"] = expected_sampling_l1(pmf, cfg.samples);
    }
    return j;
}

int cmd_pmf(const RunConfig& cfg, std::ostream& out) {
    check_p(cfg.p);
    const Mode mode = parse_mode(cfg.mode);
    const Statistic s = statistic_of(cfg.stat);
    const LatticePmf pmf = compute_pmf(s, cfg.n, cfg.p, mode, cfg);
    const json report = report_json(cfg, s, cfg.n, pmf, mode);
    const DiscreteNormalRef ref = discrete_normal(report["mu"].get<double>(), report["sigma"].get<double>());

    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
    Sink sink(cfg.out, out);
    if (cfg.format == "csv") {
        write_pmf_csv(sink.stream(), pmf, ref);
    } else {
        write_json(sink.stream(), report);
    }
    std::string report_path = cfg.report;
    if (report_path.empty() && !cfg.out.empty() && cfg.format == "csv") report_path = cfg.out + ".json";
    if (!report_path.empty()) {
        Sink r(report_path, out);
        write_json(r.stream(), report);
    }
    return kExitOk;
}

int cmd_llt_report(const RunConfig& cfg, std::ostream& out) {
    check_p(cfg.p);
    const auto grid = parse_grid(cfg.n_grid);
    const Statistic s = statistic_of(cfg.stat);
    // "auto": exact up to n = 8, Monte Carlo above
    const bool forced = cfg.mode != "auto";
    const Mode forced_mode = forced ? parse_mode(cfg.mode) : Mode::exact;
    if (forced && forced_mode == Mode::exact)
        for (std::uint32_t n : grid) require_exact_feasible(n);

    json rows = json::array();
    for (std::uint32_t n : grid) {
        const Mode mode = forced ? forced_mode : (n <= 8 ? Mode::exact : Mode::mc);
        const LatticePmf pmf = compute_pmf(s, n, cfg.p, mode, cfg);
        const json r = report_json(cfg, s, n, pmf, mode);
        const double sigma = r["sigma"].get<double>();
        json row{{"n", n},
                 {"sigma", sigma},
                 {"linf", r["linf"]},
                 {"sigma_linf", sigma * r["linf"].get<double>()},
                 {"l1", r["l1"]},
                 {"sqrt_n_l1", std::sqrt(static_cast<double>(n)) * r["l1"].get<double>()},
                 {"kolmogorov", r["kolmogorov"]},
                 {"mode", r["mode"]},
                 {"samples", r["samples"]},
                 {"noise_linf", mode == Mode::mc ? r["noise_linf"].get<double>() : 0.0},
                 {"noise_l1", mode == Mode::mc ? r["noise_l1"].get<double>() : 0.0}};
        rows.push_back(row);
    }

    Sink sink(cfg.out, out);
    std::ostream& os = sink.stream();
    if (cfg.format == "json") {
        write_json(os, json{{"schema", "gnp.llt_report/1"},
                            {"p", cfg.p},
                            {"statistic", statistic_name(s)},
                            {"seed", cfg.seed},
                            {"rows", rows}});
        return kExitOk;
    }
    if (cfg.format != "csv") throw ConfigError("format must be csv or json");
    const auto old_precision = os.precision();
    os << "# schema=gnp.llt_report/1 statistic=" << statistic_name(s) << " p=" << cfg.p << " seed=" << cfg.seed
       << '\n';
    os << "n,sigma,linf,sigma_linf,l1,sqrt_n_l1,kolmogorov,mode,samples,noise_linf,noise_l1\n";
    os << std::setprecision(17);
    for (const auto& row : rows) {
        os << row["n"].get<std::uint32_t>() << ',' << row["sigma"].get<double>() << ','
           << row["linf"].get<double>() << ',' << row["sigma_linf"].get<double>() << ','
           << row["l1"].get<double>() << ',' << row["sqrt_n_l1"].get<double>() << ','
           << row["kolmogorov"].get<double>() << ',' << row["mode"].get<std::string>() << ','
           << row["samples"].get<std::uint64_t>() << ',' << row["noise_linf"].get<double>() << ','
           << row["noise_l1"].get<double>() << '\n';
    }
    os.precision(old_precision);
    return kExitOk;
}

int cmd_chf(const RunConfig& cfg, std::ostream& out) {
    check_p(cfg.p);
    if (cfg.steps == 0) throw ConfigError("steps must be positive");
    if (!(cfg.tmax > cfg.tmin)) throw ConfigError("tmax must exceed tmin");
    const Mode mode = parse_mode(cfg.mode);
    const Statistic s = statistic_of(cfg.stat);
    const LatticePmf pmf = compute_pmf(s, cfg.n, cfg.p, mode, cfg);
    const Normalization norm{statistic_mean(s, cfg.n, cfg.p), std::sqrt(statistic_variance(s, cfg.n, cfg.p))};
    const auto ts = uniform_grid(cfg.tmin, cfg.tmax, cfg.steps + 1);
    Sink sink(cfg.out, out);
    write_chf_csv(sink.stream(), chf_from_pmf(pmf, ts, norm));
    return kExitOk;
}

int cmd_fourier(const RunConfig& cfg, std::ostream& out) {
    check_p(cfg.p);
    const Statistic s = statistic_of(cfg.stat);
    FourierSpectrum spec;
    if (cfg.method == "brute") {
        if (pair_count(cfg.n) > 20) throw ConfigError("brute-force transform needs C(n,2) <= 20");
        std::vector<double> table(std::size_t{1} << pair_count(cfg.n));
        for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = evaluate_statistic(s, Graph::from_mask(cfg.n, x));
        spec = brute_force_transform(table, cfg.p, cfg.n);
    } else if (cfg.method == "closed") {
        if (std::holds_alternative<TriangleStatistic>(s)) {
            spec = closed_triangle_spectrum(cfg.n, cfg.p);
        } else {
            spec = GraphStatistic(std::get<BaseFunction>(s), cfg.p).spectrum(cfg.n);
        }
    } else {
        throw ConfigError("method must be closed or brute");
    }

    Sink sink(cfg.out, out);
    if (cfg.dump) {
        write_spectrum_csv(sink.stream(), spec);
        return kExitOk;
    }
    const auto w = weight_profile(spec);
    json by_degree = json::object();
    for (const auto& [j, v] : w.by_degree) by_degree[std::to_string(j)] = v;
    json by_support = json::object();
    for (const auto& [j, v] : w.by_support) by_support[std::to_string(j)] = v;
    write_json(sink.stream(), json{{"schema", "gnp.spectrum_summary/1"},
                                   {"n", cfg.n},
                                   {"p", cfg.p},
                                   {"statistic", statistic_name(s)},
                                   {"method", cfg.method},
                                   {"nonzero", spec.size()},
                                   {"mean", spec.coefficient(EdgeSet{})},
                                   {"variance", parseval_variance(spec)},
                                   {"weight_by_degree", by_degree},
                                   {"weight_by_support", by_support}});
    return kExitOk;
}

Graph build_h(const RunConfig& cfg, std::string& descriptor) {
    std::ostringstream d;
    Graph h(1);
    if (cfg.h_kind == "bipartite") {
        h = make_regular_bipartite(cfg.n, cfg.k);
        d << "bipartite k=" << cfg.k;
    } else if (cfg.h_kind == "matching") {
        h = make_matching(cfg.n, cfg.k);
        d << "matching size=" << cfg.k;
    } else if (cfg.h_kind == "clique") {
        h = make_clique_union(cfg.n, cfg.alpha);
        d << "clique-union alpha=" << cfg.alpha;
    } else {
        throw ConfigError("subgraph must be bipartite, matching or clique");
    }
    descriptor = d.str();
    return h;
}

json claim_json(const ClaimReport& r, std::uint64_t seed) {
    return json{{"schema", "gnp.claim/1"},
                {"claim", r.claim_id},
                {"n", r.n},
                {"p", r.p},
                {"h", r.h_descriptor},
                {"trials", r.trials},
                {"seed", seed},
                {"measured", r.measured},
                {"bound", r.bound},
                {"noise_floor", r.noise_floor},
                {"pass", r.pass}};
}

int cmd_claims(const RunConfig& cfg, std::ostream& out) {
    check_p(cfg.p);
    if (cfg.trials == 0) throw ConfigError("trials must be positive");
    std::string descriptor;
    const Graph h = build_h(cfg, descriptor);
    const Sampler sampler(cfg.p, cfg.seed);
    json j;
    if (cfg.claim == "A") {
        const auto a = event_A_check(cfg.n, cfg.p, h, cfg.trials, sampler);
        j = claim_json(to_claim_report(a, descriptor), cfg.seed);
        j["threshold"] = a.threshold;
        j["variance_bound"] = a.variance_bound;
        json edges = json::array();
        for (const auto& e : a.edges) {
            edges.push_back({{"edge", e.edge},
                             {"ambient", e.ambient},
                             {"mean", e.mean.value},
                             {"mean_std_error", e.mean.std_error},
                             {"variance", e.variance.value},
                             {"variance_std_error", e.variance.std_error},
                             {"exact_variance", e.exact_variance}});
        }
        j["edges"] = edges;
    } else if (cfg.claim == "B") {
        const BaseFunction f = base_of(cfg.stat);
        const auto b = event_B_check(f, cfg.n, cfg.p, h, cfg.trials, sampler);
        j = claim_json(to_claim_report(b, descriptor), cfg.seed);
        j["statistic"] = f.name;
        j["constant"] = b.constant;
        j["subsets_checked"] = b.subsets_checked;
        j["max_ratio"] = b.max_ratio;
    } else if (cfg.claim == "chf") {
        const auto c = revealed_chf_estimate(cfg.n, cfg.p, h, cfg.t, cfg.trials, sampler);
        j = claim_json(to_claim_report(c, descriptor), cfg.seed);
        j["t"] = c.t;
        j["k"] = c.k;
        j["modulus_std_error"] = c.modulus.std_error;
        j["mean_re"] = c.mean.real();
        j["mean_im"] = c.mean.imag();
        j["mean_std_error"] = c.mean_std_error;
        j["bound_pair_term"] = c.bound_pair_term;
        j["bound_sqrt_term"] = c.bound_sqrt_term;
        j["t_max"] = c.t_max;
        j["in_window"] = c.in_window;
    } else {
        throw ConfigError("claim must be A, B or chf");
    }
    Sink sink(cfg.out, out);
    write_json(sink.stream(), j);
    return kExitOk;
}

int cmd_stat_info(const RunConfig& cfg, std::ostream& out) {
    check_p(cfg.p);
    const Statistic s = statistic_of(cfg.stat);
    // the triangle count is F_f / 6 for the triangle base function
    const BaseFunction f = std::holds_alternative<TriangleStatistic>(s) ? builtin_base_function("triangle")
                                                                        : std::get<BaseFunction>(s);
    const GraphStatistic g(f, cfg.p);
    const auto& h = g.h_table();
    json classes = json::array();
    for (const auto& c : h.by_iso_class) {
        classes.push_back({{"support", c.support},
                           {"edges", c.edge_count},
                           {"canonical_mask", c.canonical_mask},
                           {"labelled_count", c.labelled_count},
                           {"h", c.h}});
    }
    json j{{"schema", "gnp.stat_info/1"},
           {"statistic", statistic_name(s)},
           {"base_function", f.name},
           {"k", f.k},
           {"n", cfg.n},
           {"p", cfg.p},
           {"mu", statistic_mean(s, cfg.n, cfg.p)},
           {"sigma2", statistic_variance(s, cfg.n, cfg.p)},
           {"h_table", classes},
           {"h_star", h.h_star},
           {"h_edge", h.h_edge},
           {"edge_dominated", h.edge_dominated}};
    Sink sink(cfg.out, out);
    write_json(sink.stream(), j);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Subgraph-count distributions in G(n,p) and local limit theorem checks", "gnp_llt_cli"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_grid) {
        if (with_grid) {
            sub->add_option("--n-grid", cfg.n_grid, "comma-separated vertex counts")->required();
        } else {
            sub->add_option("--n", cfg.n, "vertex count")->check(CLI::Range(1u, 100000u));
        }
        sub->add_option("--p", cfg.p, "edge probability");
        sub->add_option("--stat", cfg.stat, "triangle, a built-in base function, or a JSON file");
        sub->add_option("--seed", cfg.seed, "Monte Carlo seed");
        sub->add_option("--out", cfg.out, "output file (default stdout)");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "exact or mc");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    };

    auto* pmf = app.add_subcommand("pmf", "distribution of the statistic with its report");
    add_common(pmf, false);
    add_mode(pmf);
    pmf->add_option("--format", cfg.format, "csv or json on the primary output");
    pmf->add_option("--report", cfg.report, "report JSON path (default <out>.json)");

    auto* llt = app.add_subcommand("llt-report", "distance to the discrete normal across n");
    add_common(llt, true);
    add_mode(llt);
    llt->add_option("--format", cfg.format, "csv or json");

    auto* chf = app.add_subcommand("chf", "characteristic function of the normalized statistic");
    add_common(chf, false);
    add_mode(chf);
    chf->add_option("--tmin", cfg.tmin, "first t");
    chf->add_option("--tmax", cfg.tmax, "last t");
    chf->add_option("--steps", cfg.steps, "grid intervals");

    auto* fourier = app.add_subcommand("fourier", "p-biased Fourier spectrum");
    add_common(fourier, false);
    fourier->add_flag("--dump", cfg.dump, "one CSV row per nonzero coefficient");
    fourier->add_option("--method", cfg.method, "closed or brute");

    auto* claims = app.add_subcommand("claims", "restriction and revelation checks");
    add_common(claims, false);
    claims->add_option("--claim", cfg.claim, "A, B or chf")->required();
    claims->add_option("--k", cfg.k, "degree of H (matching size for --h matching)");
    claims->add_option("--subgraph", cfg.h_kind, "bipartite, matching or clique");
    claims->add_option("--alpha", cfg.alpha, "clique-union density");
    claims->add_option("--trials", cfg.trials, "revelations");
    claims->add_option("--t", cfg.t, "chf argument");

    auto* info = app.add_subcommand("stat-info", "mean, variance and h_T table of a statistic");
    add_common(info, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }
    // llt-report defaults to the exact-then-MC switch unless --mode was given
    if (llt->parsed() && llt->count("--mode") == 0) cfg.mode = "auto";

    try {
        if (pmf->parsed()) return cmd_pmf(cfg, out);
        if (llt->parsed()) return cmd_llt_report(cfg, out);
        if (chf->parsed()) return cmd_chf(cfg, out);
        if (fourier->parsed()) return cmd_fourier(cfg, out);
        if (claims->parsed()) return cmd_claims(cfg, out);
        if (info->parsed()) return cmd_stat_info(cfg, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitInvalidConfig;
}

}  // namespace gnp::cli
