// Exit-code and determinism contract of the lpverify binary. The binary path
// arrives in LPVERIFY_BIN (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "lp/grid.hpp"
#include "lp/io.hpp"

namespace {

std::string bin() {
    const char* b = std::getenv("LPVERIFY_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::filesystem::path sandbox() {
    const auto dir = std::filesystem::temp_directory_path() / "lpverify_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("kernel-check exit codes") {
    const auto out = sandbox() / "kc";
    CHECK(run("kernel-check --out " + out.string()) == 0);

    // invalid configs are usage errors
    const auto cfg_bad_name = sandbox() / "bad_name.json";
    std::ofstream(cfg_bad_name) << R"({"kernel": {"name": "no_such"}})";
    CHECK(run("kernel-check --config " + cfg_bad_name.string() + " --out " + out.string()) == 2);

    const auto cfg_bad_delta = sandbox() / "bad_delta.json";
    std::ofstream(cfg_bad_delta) << R"({"kernel": {"delta": 0.6}})";
    CHECK(run("kernel-check --config " + cfg_bad_delta.string() + " --out " + out.string()) == 2);
}

TEST_CASE("whitney exit codes") {
    using namespace lp;
    const auto out = sandbox() / "wh";
    const Grid g = make_grid(1, {0.0}, {1.0}, 512);
    const auto region = SampledField::sample(
        g, [](Point p) { return (p[0] > 0.3 && p[0] < 0.7) ? 1.0 : 0.0; });
    const auto region_csv = sandbox() / "region.csv";
    write_field_csv(region, region_csv);
    CHECK(run("whitney --region " + region_csv.string() + " --out " + out.string()) == 0);

    // full region: empty complement
    const auto full = SampledField::sample(g, [](Point) { return 1.0; });
    const auto full_csv = sandbox() / "full.csv";
    write_field_csv(full, full_csv);
    CHECK(run("whitney --region " + full_csv.string() + " --out " + out.string()) == 2);

    // corrupted CSV
    const auto broken_csv = sandbox() / "broken.csv";
    std::ofstream(broken_csv) << "x,value\n0.5,oops\n";
    CHECK(run("whitney --region " + broken_csv.string() + " --out " + out.string()) == 2);

    // missing region
    CHECK(run("whitney --out " + out.string()) == 2);
}

TEST_CASE("weak-type and gstar exit codes") {
    const auto out = sandbox() / "wt";
    CHECK(run("weak-type --grid-cells 512 --out " + out.string()) == 0);
    CHECK(run("gstar --grid-cells 512 --out " + out.string()) == 0);
    CHECK(run("gstar --lambda 1.5 --out " + out.string()) == 2);

    const auto cfg_empty = sandbox() / "empty_family.json";
    std::ofstream(cfg_empty) << R"({"family": {"count": 0}})";
    CHECK(run("weak-type --config " + cfg_empty.string() + " --out " + out.string()) == 2);
}

TEST_CASE("malformed config is a usage error") {
    const auto cfg = sandbox() / "malformed.json";
    std::ofstream(cfg) << "{ not json";
    CHECK(run("kernel-check --config " + cfg.string()) == 2);
    CHECK(run("weak-type --config /no/such/file.json") == 2);
}

TEST_CASE("lemmas runs clean at a small grid") {
    const auto out = sandbox() / "lm";
    CHECK(run("lemmas --grid-cells 512 --out " + out.string()) == 0);
}

TEST_CASE("reports are byte-identical for identical config and inputs") {
    const auto out_a = sandbox() / "det_a";
    const auto out_b = sandbox() / "det_b";
    REQUIRE(run("weak-type --grid-cells 512 --seed 99 --out " + out_a.string()) == 0);
    REQUIRE(run("weak-type --grid-cells 512 --seed 99 --out " + out_b.string()) == 0);
    for (const char* name : {"weak_type.json"}) {
        std::ifstream fa(out_a / name);
        std::ifstream fb(out_b / name);
        REQUIRE(fa.good());
        REQUIRE(fb.good());
        const auto ja = nlohmann::json::parse(fa);
        const auto jb = nlohmann::json::parse(fb);
        CHECK(ja["report"].dump() == jb["report"].dump());
    }
    // the plot CSVs are part of the deterministic surface too
    std::ifstream ca(out_a / "ratio_vs_rho.csv");
    std::ifstream cb(out_b / "ratio_vs_rho.csv");
    const std::string sa((std::istreambuf_iterator<char>(ca)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(cb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
}
