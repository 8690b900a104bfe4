#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "gnp/distribution.hpp"
#include "gnp/restriction.hpp"
#include "gnp/triangle.hpp"
#include "json.hpp"

using gnp::cli::run_cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> f;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) f.push_back(cell);
    return f;
}

// data rows after the schema comment and the column header
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    const auto lines = lines_of(text);
    REQUIRE(lines.size() >= 2);
    REQUIRE(lines[0].rfind("# schema=", 0) == 0);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 2; i < lines.size(); ++i) rows.push_back(fields_of(lines[i]));
    return rows;
}

double wilson_half_width(double count, double samples) {
    const double z = 1.959963984540054;
    const double ph = count / samples;
    const double z2 = z * z;
    const double centre = (ph + z2 / (2 * samples)) / (1 + z2 / samples);
    const double half = z / (1 + z2 / samples) * std::sqrt(ph * (1 - ph) / samples + z2 / (4 * samples * samples));
    return (std::min(1.0, centre + half) - std::max(0.0, centre - half)) / 2;
}

}  // namespace

TEST_CASE("pmf of the triangle count at n = 5 sums to one") {
    const auto r = run({"pmf", "--stat", "triangle", "--n", "5", "--p", "0.5", "--mode", "exact"});
    REQUIRE(r.code == 0);
    double total = 0.0;
    for (const auto& row : csv_rows(r.out)) total += std::stod(row[1]);
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(lines_of(r.out)[1] == "k,prob,ref_density,abs_gap");
}

TEST_CASE("pmf at n = 3") {
    const auto r = run({"pmf", "--n", "3", "--p", "0.5"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "1");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("Monte Carlo pmf is reproducible from the seed") {
    const std::vector<std::string> args{"pmf", "--n", "7", "--mode", "mc", "--samples", "20000", "--seed", "42"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto other = args;
    other.back() = "43";
    CHECK(run(other).out != a.out);
}

TEST_CASE("pmf report JSON") {
    const auto r = run({"pmf", "--n", "5", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == "gnp.report/1");
    for (const char* key : {"n", "p", "statistic", "mu", "sigma", "linf", "l1", "kolmogorov", "mode", "samples", "seed"})
        CHECK(j.contains(key));
    const auto pmf = gnp::exact_triangle_pmf(5, 0.5);
    const auto d = gnp::distance_report(pmf, gnp::discrete_normal(j["mu"].get<double>(), j["sigma"].get<double>()));
    CHECK(j["linf"].get<double>() == d.linf);
    CHECK(j["mu"].get<double>() == doctest::Approx(1.25));
}

TEST_CASE("pmf writes the CSV and a report next to it") {
    const auto dir = std::filesystem::temp_directory_path() / "gnp_cli_test";
    std::filesystem::create_directories(dir);
    const auto csv = (dir / "pmf.csv").string();
    const auto r = run({"pmf", "--n", "4", "--out", csv});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream report(csv + ".json");
    REQUIRE(report);
    CHECK(json::parse(report)["n"] == 4);
    std::ifstream table(csv);
    std::string first;
    std::getline(table, first);
    CHECK(first == "# schema=gnp.pmf/1");
    std::filesystem::remove_all(dir);
}

TEST_CASE("llt-report over 5, 6, 7") {
    const auto r = run({"llt-report", "--n-grid", "5,6,7", "--p", "0.5"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    double previous = 1e300;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto n = static_cast<std::uint32_t>(std::stoul(rows[i][0]));
        const auto pmf = gnp::exact_triangle_pmf(n, 0.5);
        const double sigma = std::sqrt(pmf.variance());
        const auto d = gnp::distance_report(pmf, gnp::discrete_normal(pmf.mean(), sigma));
        const double sigma_linf = std::stod(rows[i][3]);
        CHECK(sigma_linf == doctest::Approx(sigma * d.linf).epsilon(1e-9));
        CHECK(sigma_linf < previous);
        previous = sigma_linf;
        CHECK(rows[i][7] == "exact");
    }
}

TEST_CASE("llt-report rejects an empty grid") {
    CHECK(run({"llt-report", "--n-grid", ""}).code == 2);
    CHECK(run({"llt-report", "--n-grid", ","}).code == 2);
    CHECK(run({"llt-report"}).code == 2);
    CHECK(run({"llt-report", "--n-grid", "5,x"}).code == 2);
}

TEST_CASE("llt-report switches to Monte Carlo above n = 8 and carries noise columns") {
    const auto r = run({"llt-report", "--n-grid", "20,40", "--samples", "20000", "--seed", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == "gnp.llt_report/1");
    REQUIRE(j["rows"].size() == 2);
    for (const auto& row : j["rows"]) {
        CHECK(row["mode"] == "mc");
        const auto n = row["n"].get<std::uint32_t>();
        const auto pmf = gnp::mc_pmf(gnp::TriangleStatistic{}, n, 20000, gnp::Sampler(0.5, 3));
        double widest = 0.0;
        for (const auto& [k, pr] : pmf.probs) widest = std::max(widest, wilson_half_width(std::round(pr * 20000), 20000));
        CHECK(row["noise_linf"].get<double>() == doctest::Approx(widest).epsilon(1e-12));
        CHECK(row["noise_l1"].get<double>() > 0.0);
    }
}

TEST_CASE("exact mode is refused beyond 30 edge slots") {
    const auto r = run({"pmf", "--n", "9", "--mode", "exact"});
    CHECK(r.code == 2);
    CHECK(r.err.find("C(n,2) <= 30") != std::string::npos);
    CHECK(run({"llt-report", "--n-grid", "5,9", "--mode", "exact"}).code == 2);
    CHECK(run({"chf", "--n", "10"}).code == 2);
}

TEST_CASE("fourier dump at n = 4") {
    const auto r = run({"fourier", "--stat", "triangle", "--n", "4", "--p", "0.5", "--dump"});
    REQUIRE(r.code == 0);
    CHECK(lines_of(r.out)[1] == "subset,support_size,degree,coefficient");
    const auto rows = csv_rows(r.out);
    const auto spec = gnp::closed_triangle_spectrum(4, 0.5);
    CHECK(rows.size() == spec.size());
    for (const auto& row : rows) {
        const auto mask = std::stoull(row[0], nullptr, 16);
        const auto s = gnp::EdgeSet::from_mask(mask);
        CHECK(std::stoul(row[1]) == s.support_size(4));
        CHECK(std::stoul(row[2]) == s.size());
        CHECK(std::stod(row[3]) != 0.0);
        CHECK(std::stod(row[3]) == doctest::Approx(spec.coefficient(s)).epsilon(1e-15));
    }
}

TEST_CASE("fourier summary agrees between closed form and brute force") {
    const auto closed = json::parse(run({"fourier", "--n", "5", "--p", "0.3"}).out);
    const auto brute = json::parse(run({"fourier", "--n", "5", "--p", "0.3", "--method", "brute"}).out);
    CHECK(closed["schema"] == "gnp.spectrum_summary/1");
    CHECK(closed["nonzero"] == brute["nonzero"]);
    CHECK(closed["variance"].get<double>() == doctest::Approx(brute["variance"].get<double>()).epsilon(1e-12));
    CHECK(run({"fourier", "--n", "8", "--method", "brute"}).code == 2);
}

TEST_CASE("chf table with 600 steps") {
    const auto r = run({"chf", "--n", "6", "--p", "0.5", "--tmax", "3", "--steps", "600"});
    REQUIRE(r.code == 0);
    const auto header = fields_of(lines_of(r.out)[1]);
    REQUIRE(header.size() == 6);
    CHECK(header.back() == "gap");
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 601);
    CHECK(std::stod(rows.front()[0]) == 0.0);
    CHECK(std::stod(rows.back()[0]) == 3.0);
    CHECK(std::stod(rows.front()[1]) == 1.0);
    for (const auto& row : rows) {
        const double gap = std::stod(row[5]);
        CHECK(gap >= 0.0);
        CHECK(gap <= 2.0);
    }
    CHECK(run({"chf", "--n", "6", "--steps", "0"}).code == 2);
}

TEST_CASE("claims A at n = 6") {
    const auto r = run({"claims", "--claim", "A", "--n", "6", "--k", "2", "--trials", "1000", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == "gnp.claim/1");
    REQUIRE(j.contains("pass"));
    const auto a = gnp::event_A_check(6, 0.5, gnp::make_regular_bipartite(6, 2), 1000, gnp::Sampler(0.5, 7));
    CHECK(j["pass"].get<bool>() == a.pass);
    CHECK(j["measured"].get<double>() == a.failure_rate);
    CHECK(j["bound"].get<double>() == a.bound);
    CHECK(j["edges"].size() == 6);
    CHECK(run({"claims", "--claim", "A", "--n", "6", "--k", "2", "--trials", "1000", "--seed", "7"}).out == r.out);
}

TEST_CASE("claims B and chf") {
    const auto b = run({"claims", "--claim", "B", "--n", "6", "--subgraph", "matching", "--k", "2", "--trials", "500"});
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["constant"].get<double>() == doctest::Approx(7.0));
    const auto c = run({"claims", "--claim", "chf", "--n", "6", "--k", "2", "--t", "1", "--trials", "500"});
    REQUIRE(c.code == 0);
    const auto j = json::parse(c.out);
    CHECK_FALSE(j["in_window"].get<bool>());
    CHECK(j["bound_pair_term"].get<double>() > 0.0);
    CHECK(run({"claims", "--claim", "Z", "--n", "6"}).code == 2);
    CHECK(run({"claims", "--claim", "A", "--n", "7", "--k", "2"}).code == 2);
    CHECK(run({"claims", "--n", "6"}).code == 2);
}

TEST_CASE("stat-info") {
    const auto r = run({"stat-info", "--stat", "path2-induced", "--n", "6", "--p", "0.3"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == "gnp.stat_info/1");
    CHECK(j["edge_dominated"].get<bool>());
    CHECK(j["h_table"].size() == 4);
    const gnp::Statistic s = gnp::builtin_base_function("path2-induced");
    CHECK(j["sigma2"].get<double>() == doctest::Approx(gnp::statistic_variance(s, 6, 0.3)));
    const auto tri = json::parse(run({"stat-info", "--n", "5"}).out);
    CHECK(tri["statistic"] == "triangle");
    CHECK(tri["mu"].get<double>() == doctest::Approx(1.25));
}

TEST_CASE("invalid configurations exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"pmf", "--n", "5", "--p", "1.5"}).code == 2);
    CHECK(run({"pmf", "--n", "5", "--mode", "fast"}).code == 2);
    CHECK(run({"pmf", "--n", "5", "--stat", "/nonexistent/f.json"}).code == 2);
    CHECK(run({"pmf", "--n", "0"}).code == 2);
    CHECK(run({"pmf", "--help"}).code == 0);
}
