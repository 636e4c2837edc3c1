#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "defprobe/report.hpp"

using namespace defprobe;

#ifndef DEFPROBE_CLI_PATH
#define DEFPROBE_CLI_PATH "defprobe"
#endif
#ifndef DEFPROBE_SOURCE_DIR
#define DEFPROBE_SOURCE_DIR "."
#endif

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DEFPROBE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("check-matrix on a shipped fixture") {
    const std::string fixture =
        (std::filesystem::path(DEFPROBE_SOURCE_DIR) / "fixtures" / "insert_n5_m4.txt").string();
    const CommandResult r = run_cli("check-matrix " + fixture);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("not CNSD") != std::string::npos);
    CHECK(r.output.find("0.09027") != std::string::npos);
}

TEST_CASE("fixtures listing") {
    const CommandResult r = run_cli("fixtures");
    CHECK(r.exit_code == 0);
    int count = 0;
    std::istringstream lines(r.output);
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty() && line.front() != '#' && line.find("domain=") != std::string::npos)
            ++count;
    CHECK(count == 9);
    CHECK(r.output.find("reversal_signed_n5_m5") != std::string::npos);
    CHECK(r.output.find("tree_edit_n5") != std::string::npos);
}

TEST_CASE("sample campaign writes a parseable report with skips recorded") {
    const auto out = temp_file("defprobe_cli_sample.csv");
    // n=30 > 4! = 24 must be skipped, not fail the campaign.
    const CommandResult r =
        run_cli("sample --measure ins,euc --n 6,30 --m 4 --t 200 --repeats 2 --seed 1 --out " +
                out.string());
    CHECK(r.exit_code == 0);

    std::ifstream in(out);
    REQUIRE(in.good());
    std::stringstream raw;
    raw << in.rdbuf();
    const std::string text = raw.str();
    CHECK(text.find("# skipped measure=ins n=30 m=4 reason=n-exceeds-m!") != std::string::npos);
    CHECK(text.find("# skipped measure=euc n=30 m=4 reason=n-exceeds-m!") != std::string::npos);

    std::istringstream body(text);
    const auto rows = parse_sample_csv(body);
    // 2 measures x 1 runnable n x 1 m x 2 repeats.
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(row.t == 200);
        CHECK(row.seed == 1);
    }
    std::filesystem::remove(out);
}

TEST_CASE("sample campaign deterministic across invocations and thread counts") {
    const auto out1 = temp_file("defprobe_cli_det1.csv");
    const auto out2 = temp_file("defprobe_cli_det2.csv");
    CHECK(run_cli("sample --measure int --n 6 --m 4 --t 300 --repeats 2 --seed 9 --threads 2 --out " +
                  out1.string()).exit_code == 0);
    CHECK(run_cli("sample --measure int --n 6 --m 4 --t 300 --repeats 2 --seed 9 --threads 1 --serial --out " +
                  out2.string()).exit_code == 0);
    std::ifstream a(out1), b(out2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("brute subcommand emits the exact cell") {
    const CommandResult r = run_cli("brute --measure lcstr --n 5 --m 4");
    CHECK(r.exit_code == 0);
    std::istringstream body(r.output);
    const auto rows = parse_brute_csv(body);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n_s == 42504);
    CHECK(rows[0].n_lambda_plus == 72);  // exact count behind the published 0.002
}

TEST_CASE("ea subcommand reports a witness run") {
    const auto out = temp_file("defprobe_cli_ea.json");
    const CommandResult r = run_cli(
        "ea --measure ins --n 5 --m 4 --budget 5000 --seed 3 --format json --out " + out.string());
    CHECK(r.exit_code == 0);
    std::ifstream in(out);
    std::stringstream raw;
    raw << in.rdbuf();
    CHECK(raw.str().find("\"found\": true") != std::string::npos);
    std::filesystem::remove(out);
}

TEST_CASE("gp subcommand emits rows per run") {
    const CommandResult r = run_cli("gp --measure ham --n 8 --m 5 --runs 2 --test-size 50 --seed 4");
    CHECK(r.exit_code == 0);
    std::istringstream body(r.output);
    const auto rows = parse_gp_csv(body);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) CHECK(row.status == FitStatus::Ok);
}

TEST_CASE("config errors exit with code 1") {
    CHECK(run_cli("sample --measure bogus --n 5 --m 4 --t 10").exit_code == 1);
    CHECK(run_cli("check-matrix /nonexistent/file.txt").exit_code == 1);
}
