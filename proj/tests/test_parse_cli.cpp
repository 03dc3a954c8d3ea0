#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrokit/cli.hpp"
#include "entrokit/parse.hpp"

using namespace entrokit;

namespace {

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";  // empty = no exception, which fails the contains checks below
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

struct CliOutcome {
    int code = 0;
    std::string out;
    std::string err;
};

CliOutcome run_cli(const cli::RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = cli::run(cfg, out, err);
    return {code, out.str(), err.str()};
}

// Quote-aware CSV line splitter matching the writer's escaping rules.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

struct CsvDoc {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footers;  // "# ..." comment lines
};

CsvDoc parse_csv(const std::string& text) {
    CsvDoc doc;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("#", 0) == 0) {
            doc.footers.push_back(line);
            continue;
        }
        auto fields = split_csv(line);
        if (doc.header.empty())
            doc.header = std::move(fields);
        else
            doc.rows.push_back(std::move(fields));
    }
    return doc;
}

double field_number(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST_CASE("density specs round-trip through their labels") {
    CHECK(parse_density_spec("gaussian:m=1,sigma=2").label == "gaussian:m=1,sigma=2");
    CHECK(parse_density_spec("gaussian:sigma=0.5").label == "gaussian:m=0,sigma=0.5");
    CHECK(parse_density_spec("exponential:mu=2").label == "exponential:mu=2");
    CHECK(parse_density_spec("uniform:a=0,b=1").label == "uniform:a=0,b=1");
    CHECK(parse_density_spec("staircase:K=10").label == "staircase:K=10");
    CHECK(parse_density_spec("heavytail").label == "heavytail");
    CHECK(parse_density_spec("rational").label == "rational");
    CHECK(parse_density_spec("quartic").label == "quartic");
}

TEST_CASE("density spec errors name the offending piece") {
    CHECK(contains(error_of([] { parse_density_spec("frobnitz"); }), "frobnitz"));
    CHECK(contains(error_of([] { parse_density_spec("gaussian:m=1"); }), "sigma"));
    CHECK(contains(error_of([] { parse_density_spec("gaussian:sigma=1,zeta=3"); }), "zeta"));
    CHECK(contains(error_of([] { parse_density_spec("gaussian:sigma=1,sigma=2"); }), "sigma"));
    CHECK(contains(error_of([] { parse_density_spec("gaussian:sigma=abc"); }), "sigma"));
    CHECK(contains(error_of([] { parse_density_spec("staircase:K=2.5"); }), "K"));
    CHECK(!error_of([] { parse_density_spec("exponential:mu=0"); }).empty());
    CHECK(contains(error_of([] { parse_density_spec("heavytail:x=1"); }), "x"));
}

TEST_CASE("partition specs parse and describe round-trips") {
    const PartitionSpec w = parse_partition_spec("window:N=100,h=0.01");
    CHECK(w.mode == PartitionSpec::Mode::window);
    CHECK(w.N == 100.0);
    CHECK(w.h == 0.01);
    CHECK(w.describe() == "window:N=100,h=0.01");

    const PartitionSpec a = parse_partition_spec("aligned:a=0,b=1,n=64");
    CHECK(a.mode == PartitionSpec::Mode::aligned);
    CHECK(a.n == 64);
    CHECK(a.describe() == "aligned:a=0,b=1,n=64");

    const PartitionSpec r = parse_partition_spec("rated:N=10,C=4096");
    CHECK(r.mode == PartitionSpec::Mode::rated);
    CHECK(r.C == 4096);
    CHECK(r.describe() == "rated:N=10,C=4096");

    CHECK(contains(error_of([] { parse_partition_spec("grid:n=4"); }), "grid"));
    CHECK(contains(error_of([] { parse_partition_spec("window:N=100"); }), "h"));
    CHECK(contains(error_of([] { parse_partition_spec("rated:N=10,C=0.5"); }), "C"));
}

TEST_CASE("schedule generation and its defaults") {
    const DensityModel gauss = parse_density_spec("gaussian:sigma=1");
    const DensityModel unif = parse_density_spec("uniform:a=0,b=1");

    const auto windows = parse_schedule_spec("window-doubling:from=4,to=64", gauss);
    REQUIRE(windows.size() == 5);
    CHECK(windows.front().N == 4.0);
    CHECK(windows.back().N == 64.0);
    for (const auto& s : windows) CHECK(s.h == doctest::Approx(1.0 / s.N).epsilon(1e-15));

    const auto fixed_h = parse_schedule_spec("window-doubling:from=4,to=16,h=0.25", gauss);
    REQUIRE(fixed_h.size() == 3);
    for (const auto& s : fixed_h) CHECK(s.h == 0.25);

    // Aligned schedules default [a, b] to the model support when it is bounded.
    const auto aligned = parse_schedule_spec("aligned-doubling:from=2,to=16", unif);
    REQUIRE(aligned.size() == 4);
    CHECK(aligned.front().a == 0.0);
    CHECK(aligned.front().b == 1.0);
    CHECK(aligned.back().n == 16);

    CHECK(contains(error_of([&] { parse_schedule_spec("aligned-doubling:from=2,to=16", gauss); }),
                   "unbounded"));

    const auto rated = parse_schedule_spec("rated-exponential:N=10,jfrom=2,jto=4", gauss);
    REQUIRE(rated.size() == 3);
    CHECK(rated[0].C == 4);
    CHECK(rated[2].C == 16);

    CHECK(!error_of([&] { parse_schedule_spec("zigzag:from=1,to=2", gauss); }).empty());
}

TEST_CASE("variant names map onto the entropy functionals") {
    CHECK(parse_variant_name("shannon", 0.0).family == EntropyFamily::shannon);
    CHECK(parse_variant_name("shannon", 0.0).form == EntropyForm::classical);
    CHECK(parse_variant_name("h1", 0.0).form == EntropyForm::abs);
    CHECK(parse_variant_name("h2", 0.0).form == EntropyForm::pos);
    CHECK(parse_variant_name("h3", 0.0).form == EntropyForm::log1p);
    CHECK(parse_variant_name("h4", 0.0).form == EntropyForm::scaled);

    const EntropyVariant renyi = parse_variant_name("renyi", 2.0);
    CHECK(renyi.family == EntropyFamily::renyi);
    CHECK(renyi.alpha == 2.0);
    CHECK(parse_variant_name("r1", 0.5).form == EntropyForm::abs);
    CHECK(parse_variant_name("r2", 0.5).form == EntropyForm::pos);
    CHECK(parse_variant_name("r3", 0.5).form == EntropyForm::log1p);

    CHECK_FALSE(variant_needs_alpha("shannon"));
    CHECK_FALSE(variant_needs_alpha("h4"));
    CHECK(variant_needs_alpha("renyi"));
    CHECK(variant_needs_alpha("r3"));

    CHECK(contains(error_of([] { parse_variant_name("h5", 0.0); }), "h5"));
    CHECK(!error_of([] { parse_variant_name("renyi", 1.0); }).empty());
}

TEST_CASE("functional names for schedule runs") {
    const auto raw = parse_functional_name("raw-shannon", 0.0, true, false);
    CHECK(raw.kind == DiscretizationFunctional::Kind::raw_shannon);
    CHECK(raw.include_tails);

    const auto rr = parse_functional_name("raw-renyi", 0.5, false, false);
    CHECK(rr.kind == DiscretizationFunctional::Kind::raw_renyi);
    CHECK(rr.alpha == 0.5);

    const auto cs = parse_functional_name("compatible-shannon:pos", 0.0, false, false);
    CHECK(cs.kind == DiscretizationFunctional::Kind::compatible_shannon);
    CHECK(cs.form == CompatibleForm::pos);

    const auto lit = parse_functional_name("compatible-shannon:log1p", 0.0, false, true);
    CHECK(lit.paper_literal);

    CHECK(!error_of([] { parse_functional_name("compatible-shannon:weird", 0.0, false, false); })
               .empty());
    CHECK(!error_of([] { parse_functional_name("raw-renyi", 1.0, false, false); }).empty());
    CHECK(contains(
        error_of([] { parse_functional_name("compatible-shannon:pos", 0.0, false, true); }),
        "log1p"));
    CHECK(!error_of([] { parse_functional_name("mystery", 0.0, false, false); }).empty());
}

TEST_CASE("range specs") {
    const cli::RangeSpec r = cli::parse_range_spec("0.05:3:200");
    CHECK(r.lo == 0.05);
    CHECK(r.hi == 3.0);
    CHECK(r.steps == 200);
    CHECK_THROWS_AS(cli::parse_range_spec("3:1:5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_range_spec("1:2:1"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_range_spec("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_range_spec("a:b:c"), std::invalid_argument);
}

TEST_CASE("compute emits one data row and is byte-deterministic") {
    cli::RunConfig cfg;
    cfg.command = "compute";
    cfg.dist = "exponential:mu=0.5";
    cfg.variant = "h1";

    const CliOutcome first = run_cli(cfg);
    const CliOutcome second = run_cli(cfg);
    CHECK(first.code == cli::kExitOk);
    CHECK(first.out == second.out);

    const CsvDoc doc = parse_csv(first.out);
    REQUIRE(doc.header.size() == 6);
    CHECK(doc.header[0] == "variant");
    CHECK(doc.header[5] == "closed_form");
    REQUIRE(doc.rows.size() == 1);
    CHECK(doc.rows[0][0] == "h1");
    CHECK(field_number(doc.rows[0][1]) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    // Values print with 9 significant digits, so parse-back agrees to ~1e-9.
    CHECK(field_number(doc.rows[0][5]) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("compute reports infinite values as text and summation for piecewise models") {
    cli::RunConfig heavy;
    heavy.command = "compute";
    heavy.dist = "heavytail";
    heavy.variant = "shannon";
    const CliOutcome res = run_cli(heavy);
    CHECK(res.code == cli::kExitOk);
    const CsvDoc doc = parse_csv(res.out);
    REQUIRE(doc.rows.size() == 1);
    CHECK(doc.rows[0][1] == "inf");
    CHECK(doc.rows[0][4] == "true");

    cli::RunConfig stair;
    stair.command = "compute";
    stair.dist = "staircase:K=10";
    stair.variant = "shannon";
    const CliOutcome sres = run_cli(stair);
    CHECK(sres.code == cli::kExitOk);
    CHECK(parse_csv(sres.out).rows[0][2] == "summation");
}

TEST_CASE("compute usage failures exit 2 with a named cause") {
    cli::RunConfig cfg;
    cfg.command = "compute";
    cfg.dist = "gaussian:sigma=1";
    cfg.variant = "h9";
    CliOutcome res = run_cli(cfg);
    CHECK(res.code == cli::kExitUsage);
    CHECK(contains(res.err, "h9"));

    cfg.variant = "renyi";  // missing alpha
    res = run_cli(cfg);
    CHECK(res.code == cli::kExitUsage);
    CHECK(contains(res.err, "alpha"));

    cfg.variant = "shannon";
    cfg.alpha = 2.0;  // alpha without a Renyi variant
    res = run_cli(cfg);
    CHECK(res.code == cli::kExitUsage);
    CHECK(contains(res.err, "alpha"));
}

TEST_CASE("discretize json mirrors the csv columns") {
    cli::RunConfig cfg;
    cfg.command = "discretize";
    cfg.dist = "gaussian:sigma=1";
    cfg.variant = "compatible-shannon:signed";
    cfg.partition = "window:N=20,h=0.05";
    cfg.format = "json";

    const CliOutcome res = run_cli(cfg);
    REQUIRE(res.code == cli::kExitOk);
    const auto doc = nlohmann::json::parse(res.out);
    REQUIRE(doc.is_object());
    for (const char* key : {"functional", "partition", "cells", "value", "inner_sum"}) {
        REQUIRE(doc.contains(key));
        CHECK(doc[key].is_array());
        CHECK(doc[key].size() == 1);
    }
    CHECK(doc["dist"] == "gaussian:sigma=1");
    CHECK(doc["cells"][0].get<double>() == 800.0);

    cfg.format = "csv";
    const CliOutcome csv = run_cli(cfg);
    const CsvDoc table = parse_csv(csv.out);
    REQUIRE(table.rows.size() == 1);
    // The partition label contains commas, so the CSV field must round-trip.
    CHECK(table.rows[0][1] == "window:N=20,h=0.05");
    CHECK(field_number(table.rows[0][3]) == doctest::Approx(doc["value"][0].get<double>()));
}

TEST_CASE("converge prints a fit footer and flags impossible defaults") {
    cli::RunConfig cfg;
    cfg.command = "converge";
    cfg.dist = "uniform:a=0,b=1";
    cfg.variant = "raw-shannon";
    cfg.schedule = "aligned-doubling:from=2,to=64";

    const CliOutcome res = run_cli(cfg);
    CHECK(res.code == cli::kExitOk);
    const CsvDoc doc = parse_csv(res.out);
    CHECK(doc.rows.size() == 6);
    REQUIRE(!doc.footers.empty());
    const std::string& fit = doc.footers.front();
    CHECK(contains(fit, "# fit: slope="));
    const auto pos = fit.find("slope=");
    CHECK(field_number(fit.substr(pos + 6)) == doctest::Approx(1.0).epsilon(1e-9));

    cli::RunConfig bad = cfg;
    bad.dist = "gaussian:sigma=1";
    const CliOutcome err = run_cli(bad);
    CHECK(err.code == cli::kExitUsage);
    CHECK(contains(err.err, "unbounded"));
}

TEST_CASE("thresholds table lists the fixed rows plus one pair per order") {
    cli::RunConfig cfg;
    cfg.command = "thresholds";
    const CliOutcome bare = run_cli(cfg);
    CHECK(bare.code == cli::kExitOk);
    const CsvDoc doc = parse_csv(bare.out);
    REQUIRE(doc.rows.size() == 3);
    CHECK(doc.rows[0][0] == "u0");
    CHECK(doc.rows[1][0] == "sigma0");
    CHECK(doc.rows[2][0] == "min_h1");
    CHECK(field_number(doc.rows[1][1]) == doctest::Approx(0.317776572684107).epsilon(1e-9));

    cfg.alphas = "0.5,2";
    const CliOutcome withAlpha = run_cli(cfg);
    CHECK(parse_csv(withAlpha.out).rows.size() == 7);

    cfg.alphas = "0.5,one";
    const CliOutcome bad = run_cli(cfg);
    CHECK(bad.code == cli::kExitUsage);
    CHECK(contains(bad.err, "one"));
}

TEST_CASE("curves validate orders and write one file per variant") {
    cli::RunConfig cfg;
    cfg.command = "curves";
    cfg.figure = "renyi-gauss";
    const CliOutcome noAlpha = run_cli(cfg);
    CHECK(noAlpha.code == cli::kExitUsage);
    CHECK(contains(noAlpha.err, "alpha"));

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "entrokit_curves_test";
    fs::create_directories(dir);

    cli::RunConfig multi;
    multi.command = "curves";
    multi.figure = "h123-exp";
    multi.range = cli::RangeSpec{0.2, 1.0, 5};
    multi.out = (dir / "fig.csv").string();
    const CliOutcome res = run_cli(multi);
    REQUIRE(res.code == cli::kExitOk);
    for (const char* variant : {"h1", "h2", "h3"}) {
        const fs::path file = dir / ("fig-" + std::string(variant) + ".csv");
        REQUIRE_MESSAGE(fs::exists(file), file.string());
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        const CsvDoc doc = parse_csv(buf.str());
        REQUIRE(doc.header.size() == 2);
        CHECK(doc.header[0] == "param");
        CHECK(doc.header[1] == variant);
        CHECK(doc.rows.size() == 5);
        CHECK(field_number(doc.rows.front()[0]) == doctest::Approx(0.2));
        CHECK(field_number(doc.rows.back()[0]) == doctest::Approx(1.0));
    }
    fs::remove_all(dir);

    cli::RunConfig single;
    single.command = "curves";
    single.figure = "h1-gauss";
    single.range = cli::RangeSpec{0.5, 1.0, 3};
    const CliOutcome stream = run_cli(single);
    REQUIRE(stream.code == cli::kExitOk);
    const CsvDoc doc = parse_csv(stream.out);
    CHECK(doc.header == std::vector<std::string>{"param", "h1"});
    CHECK(doc.rows.size() == 3);

    cli::RunConfig badRange = single;
    badRange.range = cli::RangeSpec{0.0, 1.0, 3};  // lo must be positive
    CHECK(run_cli(badRange).code == cli::kExitUsage);
}

TEST_CASE("unknown command and format are usage errors") {
    cli::RunConfig cfg;
    cfg.command = "transmogrify";
    CHECK(run_cli(cfg).code == cli::kExitUsage);

    cfg.command = "thresholds";
    cfg.format = "yaml";
    const CliOutcome res = run_cli(cfg);
    CHECK(res.code == cli::kExitUsage);
    CHECK(contains(res.err, "yaml"));
}
