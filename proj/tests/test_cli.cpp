// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string fixture(const std::string& name) {
    return std::string(QMEAS_FIXTURE_DIR) + "/" + name;
}

int run(const std::string& args) {
    const std::string cmd =
        std::string(QMEAS_CLI_PATH) + " " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("qmeas_cli_test_" + name);
}

}  // namespace

TEST_CASE("validate exit codes") {
    CHECK(run("validate " + fixture("trine_povm.json")) == 0);
    CHECK(run("validate " + fixture("bell_conditioning.json")) == 0);
    CHECK(run("validate " + fixture("cnot_probe_chain.json")) == 0);
    CHECK(run("validate " + fixture("bb84_bell.json")) == 0);
    CHECK(run("validate " + fixture("trine_neumark.json")) == 0);

    CHECK(run("validate " + fixture("invalid_completeness.json")) == 1);
    CHECK(run("validate " + fixture("malformed.json")) == 2);
    CHECK(run("validate does_not_exist.json") == 2);
}

TEST_CASE("run commands succeed on the bundled fixtures") {
    CHECK(run("condition " + fixture("bell_conditioning.json")) == 0);
    CHECK(run("neumark " + fixture("trine_neumark.json")) == 0);
    CHECK(run("probe-chain " + fixture("cnot_probe_chain.json")) == 0);
    CHECK(run("bb84-equiv " + fixture("bb84_bell.json")) == 0);
    CHECK(run("bb84-equiv --sweeps 3 --seed 5 " + fixture("bb84_bell.json")) == 0);
}

TEST_CASE("kind mismatches are analytic failures") {
    CHECK(run("condition " + fixture("trine_povm.json")) == 1);
    CHECK(run("bb84-equiv " + fixture("cnot_probe_chain.json")) == 1);
    CHECK(run("neumark " + fixture("bb84_bell.json")) == 1);
}

TEST_CASE("csv output is byte-identical across runs with a fixed seed") {
    const fs::path a = temp_file("neumark_a.csv");
    const fs::path b = temp_file("neumark_b.csv");
    REQUIRE(run("neumark --seed 42 --out " + a.string() + " " +
                fixture("trine_neumark.json")) == 0);
    REQUIRE(run("neumark --seed 42 --out " + b.string() + " " +
                fixture("trine_neumark.json")) == 0);
    CHECK(slurp(a) == slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("properties subcommand runs the registry deterministically") {
    const fs::path a = temp_file("props_a.csv");
    const fs::path b = temp_file("props_b.csv");
    REQUIRE(run("properties --seed 7 --out " + a.string()) == 0);
    REQUIRE(run("properties --seed 7 --out " + b.string()) == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.find("id,kind,residual,bound,pass") == 0);
    CHECK(text.find("bb84-equivalence") != std::string::npos);
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("bb84 csv uses the residual table schema") {
    const fs::path out = temp_file("bb84.csv");
    REQUIRE(run("bb84-equiv --out " + out.string() + " " + fixture("bb84_bell.json")) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("x_e,y_b,i,entangled,transmitted,diff") == 0);
    // 2 eve atoms x 2 bob atoms x 4 key events plus the header
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 17);
    fs::remove(out);
}

TEST_CASE("json report carries the conditioned state") {
    const fs::path out = temp_file("condition.json");
    REQUIRE(run("condition --format json --out " + out.string() + " " +
                fixture("bell_conditioning.json")) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"conditioned_state\"") != std::string::npos);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("tolerance flag tightens the pass check") {
    // an impossible threshold forces an analytic failure exit
    CHECK(run("neumark --tol 1e-30 " + fixture("trine_neumark.json")) == 1);
}
