#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wigsmooth/io.hpp"
#include "wigsmooth/runconfig.hpp"
#include "wigsmooth/scenarios.hpp"

using namespace wigsmooth;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("wigsmooth_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing: sections, comments, overrides") {
    std::istringstream src(
        "# a comment\n"
        "[run]\n"
        "scenario = well\n"
        "[well]\n"
        "n = 5   # trailing comment\n"
        "a = 10\n"
        "[smoothing]\n"
        "pairs = 0.637:0.785, 5.7:0.785\n");
    auto cfg = RunConfig::from_stream(src);
    CHECK(cfg.get_string("run.scenario", "") == "well");
    CHECK(cfg.get_int("well.n", 0) == 5);
    bool dedup = true;
    auto pairs = cfg.smoothing_pairs(1.0, &dedup);
    REQUIRE(pairs.size() == 2);
    CHECK_FALSE(dedup);
    CHECK(pairs[1].sigma1 == doctest::Approx(5.7));

    cfg.set("well.n", "3");
    CHECK(cfg.get_int("well.n", 0) == 3);
}

TEST_CASE("config parsing: strict keys and malformed input") {
    std::istringstream bad1("[well]\nwobble = 3\n");
    CHECK_THROWS_AS(RunConfig::from_stream(bad1), config_error);
    std::istringstream bad2("n = 5\n");
    CHECK_THROWS_AS(RunConfig::from_stream(bad2), config_error);
    std::istringstream bad3("[well\nn = 5\n");
    CHECK_THROWS_AS(RunConfig::from_stream(bad3), config_error);
    std::istringstream bad4("[well]\njust a line\n");
    CHECK_THROWS_AS(RunConfig::from_stream(bad4), config_error);

    RunConfig cfg;
    CHECK_THROWS_AS(cfg.set("nope.key", "1"), config_error);
    cfg.set("well.n", "five");
    CHECK_THROWS_AS(cfg.get_int("well.n", 0), config_error);
    cfg.set("well.a", "ten");
    CHECK_THROWS_AS(cfg.get_double("well.a", 0.0), config_error);
    cfg.set("tf.raw_wv", "maybe");
    CHECK_THROWS_AS(cfg.get_bool("tf.raw_wv", false), config_error);

    RunConfig dup;
    dup.set("smoothing.pairs", "1:2,1:2,3:4");
    bool dedup = false;
    auto pairs = dup.smoothing_pairs(1.0, &dedup);
    CHECK(pairs.size() == 2);
    CHECK(dedup);
    RunConfig badpair;
    badpair.set("smoothing.pairs", "1-2");
    CHECK_THROWS_AS(badpair.smoothing_pairs(1.0, nullptr), config_error);
}

TEST_CASE("field round trips through csv and binary") {
    Axis a1(-2.0, 3.0, 7), a2(0.0, 1.0, 5);
    DistributionField f(a1, a2);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            f(i, j) = std::sin(1.0 + 3.1 * static_cast<double>(i) - 0.7 * static_cast<double>(j));

    std::stringstream csv;
    io::write_field_csv(csv, f);
    auto f2 = io::read_field_csv(csv);
    CHECK(f2.axis1() == a1);
    CHECK(f2.axis2() == a2);
    CHECK(f2.values() == f.values());

    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    io::write_field_binary(bin, f);
    auto f3 = io::read_field_binary(bin);
    CHECK(f3.values() == f.values());

    std::stringstream junk("not a field");
    CHECK_THROWS_AS(io::read_field_csv(junk), config_error);
}

TEST_CASE("series round trips") {
    std::vector<double> t = {0.0, 0.5, 1.0, 1.5}, v = {1.0, -2.0, 0.25, 9.5};
    std::stringstream csv;
    io::write_series_csv(csv, t, v);
    std::vector<double> t2, v2;
    io::read_series_csv(csv, t2, v2);
    CHECK(t2 == t);
    CHECK(v2 == v);

    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    io::write_series_binary(bin, t, v);
    std::vector<double> t3, v3;
    io::read_series_binary(bin, t3, v3);
    CHECK(v3 == v);
    CHECK(t3.size() == t.size());
    CHECK(t3[2] == doctest::Approx(1.0));
}

TEST_CASE("run dispatch validates scenario and exit codes") {
    RunConfig cfg;
    auto r = scenarios::run(cfg);
    CHECK(r.exit_code == 2);

    cfg.set("run.scenario", "warp");
    cfg.set("output.dir", (temp_dir("warp") / "out").string());
    CHECK(scenarios::run(cfg).exit_code == 2);

    RunConfig bad;
    bad.set("run.scenario", "well");
    bad.set("well.n", "0");  // invalid eigenstate index
    bad.set("output.dir", (temp_dir("badn") / "out").string());
    CHECK(scenarios::run(bad).exit_code == 2);
}

TEST_CASE("well scenario writes deterministic artifacts") {
    auto dir = temp_dir("well");
    RunConfig cfg;
    cfg.set("run.scenario", "well");
    cfg.set("well.n", "5");
    cfg.set("grid.q_min", "-12");
    cfg.set("grid.q_max", "12");
    cfg.set("grid.q_n", "241");
    cfg.set("grid.p_min", "-1.5");
    cfg.set("grid.p_max", "1.5");
    cfg.set("grid.p_n", "61");
    cfg.set("smoothing.pairs", "0.637:0.785");
    cfg.set("output.formats", "csv,bin,svg");
    cfg.set("output.dir", (dir / "a").string());
    auto r1 = scenarios::run(cfg);
    REQUIRE(r1.exit_code == 0);
    cfg.set("output.dir", (dir / "b").string());
    auto r2 = scenarios::run(cfg);
    REQUIRE(r2.exit_code == 0);

    for (const char* name : {"wigner.csv", "smoothed_0.csv", "wigner_contours.csv",
                             "smoothed_0_contours.svg", "wigner.bin"})
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));

    // manifest carries the regime label and the full config echo
    const std::string manifest = slurp(dir / "a" / "manifest.json");
    CHECK(manifest.find("\"regime\": \"physical\"") != std::string::npos);
    CHECK(manifest.find("\"well.n\": \"5\"") != std::string::npos);
    CHECK(manifest.find("\"route\": \"husimi\"") != std::string::npos);

    // the stored field parses back
    std::ifstream is(dir / "a" / "wigner.bin", std::ios::binary);
    auto f = io::read_field_binary(is);
    CHECK(f.axis1().n == 241);
    CHECK(f.axis2().n == 61);
}

TEST_CASE("unphysical pairs run on the plain route and are labeled") {
    auto dir = temp_dir("unphys");
    RunConfig cfg;
    cfg.set("run.scenario", "well");
    cfg.set("well.n", "1");
    cfg.set("grid.q_n", "121");
    cfg.set("grid.p_n", "41");
    cfg.set("smoothing.pairs", "0.1:0.1");
    cfg.set("output.dir", (dir / "out").string());
    auto r = scenarios::run(cfg);
    REQUIRE(r.exit_code == 0);
    const std::string manifest = slurp(dir / "out" / "manifest.json");
    CHECK(manifest.find("\"regime\": \"unphysical\"") != std::string::npos);
    CHECK(manifest.find("\"route\": \"plain\"") != std::string::npos);
}

TEST_CASE("sweep: island count shrinks along increasing q smoothing") {
    auto dir = temp_dir("sweep");
    RunConfig cfg;
    cfg.set("run.scenario", "well");
    cfg.set("well.n", "5");
    cfg.set("grid.q_min", "-12");
    cfg.set("grid.q_max", "12");
    cfg.set("grid.q_n", "241");
    cfg.set("grid.p_min", "-1.5");
    cfg.set("grid.p_max", "1.5");
    cfg.set("grid.p_n", "61");
    cfg.set("smoothing.pairs", "0.637:0.785,2.0:0.785,5.7:0.785,5.7:0.785");
    cfg.set("output.dir", (dir / "out").string());
    auto r = scenarios::sweep(cfg);
    REQUIRE(r.exit_code == 0);

    std::ifstream is(dir / "out" / "summary.csv");
    std::string line;
    std::getline(is, line);
    CHECK(line == "sigma1,sigma2,regime,min_value,island_count,mass");
    std::vector<std::size_t> islands;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string cell;
        for (int c = 0; c < 5; ++c) std::getline(ss, cell, ',');
        islands.push_back(std::stoul(cell));
    }
    REQUIRE(islands.size() == 3);  // duplicate deduplicated
    CHECK(std::is_sorted(islands.rbegin(), islands.rend()));
    CHECK(islands.front() >= 3);
    CHECK(islands.back() == 1);
    CHECK(fs::exists(dir / "out" / "pair_002" / "smoothed.csv"));

    const std::string manifest = slurp(dir / "out" / "manifest.json");
    CHECK(manifest.find("\"smoothing_deduplicated\": true") != std::string::npos);

    RunConfig empty;
    empty.set("run.scenario", "well");
    empty.set("output.dir", (dir / "none").string());
    CHECK(scenarios::sweep(empty).exit_code == 2);
}

TEST_CASE("stored-field smooth and contour operations") {
    auto dir = temp_dir("fieldops");
    // build a small gaussian field file
    Axis ax(-4.0, 4.0, 81);
    DistributionField f(ax, ax);
    for (std::size_t i = 0; i < ax.n; ++i)
        for (std::size_t j = 0; j < ax.n; ++j)
            f(i, j) = std::exp(-0.5 * (ax[i] * ax[i] + ax[j] * ax[j]));
    const std::string field_path = (dir / "field.csv").string();
    io::save_with(field_path, [&](std::ostream& os) { io::write_field_csv(os, f); });

    auto sm = scenarios::run_smooth_file(field_path, 0.5, 0.5, 1.0, (dir / "sm").string(),
                                         scenarios::detail::Formats::parse("csv,svg"));
    CHECK(sm.exit_code == 0);
    CHECK(fs::exists(dir / "sm" / "smoothed.csv"));
    CHECK(slurp(dir / "sm" / "manifest.json").find("\"regime\": \"unphysical\"") !=
          std::string::npos);

    auto ct = scenarios::run_contour_file(field_path, {0.5}, (dir / "ct").string(),
                                          scenarios::detail::Formats::parse("csv,svg"));
    CHECK(ct.exit_code == 0);
    const std::string svg = slurp(dir / "ct" / "contours.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("class=\"level-0\"") != std::string::npos);

    CHECK_THROWS_AS(scenarios::load_field((dir / "missing.bin").string()), config_error);
    CHECK_THROWS_AS(scenarios::detail::Formats::parse("csv,jpeg"), config_error);
}
