#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "gls/cli.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(GLS_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 512> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

double first_number(const std::string& s) {
    std::istringstream in(s);
    double v;
    REQUIRE(static_cast<bool>(in >> v));
    return v;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("tailbound prints the closed-form value") {
    const RunResult r = run_cli("tailbound --psi power:2 --C 1 --t 2.718281828");
    CHECK(r.exit_code == 0);
    CHECK(first_number(r.output) == doctest::Approx(0.2568813653).epsilon(1e-4));
}

TEST_CASE("gls-norm of matching constants is one") {
    const RunResult r = run_cli("gls-norm --oracle const:1 --kappa const:1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("gls_norm 1") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("no-such-command").exit_code == 1);
    CHECK(run_cli("tailbound --psi power:2").exit_code == 1);  // missing --t
    CHECK(run_cli("gls-norm --oracle nonsense:1 --kappa const:1").exit_code == 1);
    CHECK(run_cli("verify-doob --law gaussian --n 64 --trials 10 --seed 1")
              .exit_code == 1);  // too few trials
}

TEST_CASE("help succeeds") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("conjugate --help").exit_code == 0);
}

TEST_CASE("conjugate subcommand writes the table") {
    const RunResult r = run_cli(
        "conjugate --psi 'power(2)' --p-hi 1000 --y-lo 1 --y-hi 2 --y-count 5 "
        "--out cli_conjugate_test.csv");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_conjugate_test.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "y,hstar,argmax_p");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
    std::remove("cli_conjugate_test.csv");
}

TEST_CASE("simulate and verify produce reports and exit cleanly") {
    const RunResult sim = run_cli(
        "simulate --law rademacher --n 16 --trials 2000 --seed 3 "
        "--out-dir cli_sim_test");
    CHECK(sim.exit_code == 0);
    std::ifstream terminal("cli_sim_test/terminal.csv");
    REQUIRE(terminal.good());
    std::string header;
    std::getline(terminal, header);
    CHECK(header == "value");

    const RunResult doob = run_cli(
        "verify-doob --law gaussian --n 32 --trials 5000 --seed 7 "
        "--out-dir cli_doob_test");
    CHECK(doob.exit_code == 0);
    std::ifstream moment("cli_doob_test/moment_report.csv");
    REQUIRE(moment.good());
    std::getline(moment, header);
    CHECK(header == "p,lhs,rhs,margin");
    std::ifstream tail("cli_doob_test/tail_report.csv");
    REQUIRE(tail.good());
    std::getline(tail, header);
    CHECK(header == "t,empirical,stderr,bound,violation");

    std::filesystem::remove_all("cli_sim_test");
    std::filesystem::remove_all("cli_doob_test");
}

TEST_CASE("transfer subcommand tabulates psi") {
    const RunResult r = run_cli(
        "transfer --kernel doob --oracle exponential --p-lo 2 --p-hi 8 "
        "--p-count 9 --p0 2 --out cli_transfer_test.csv");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_transfer_test.csv");
    REQUIRE(in.good());
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "p,psi");
    std::getline(in, row);
    // first row: p=2, psi = (p/(p-1)) * Gamma(p+1)^{1/p} = 2*sqrt(2)
    const auto comma = row.find(',');
    CHECK(std::stod(row.substr(0, comma)) == doctest::Approx(2.0));
    CHECK(std::stod(row.substr(comma + 1)) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
    std::remove("cli_transfer_test.csv");
}

TEST_CASE("tailbound table mode writes t,bound") {
    const RunResult r = run_cli(
        "tailbound --psi power:2 --C 1 --t-lo 3 --t-hi 9 --t-count 7 "
        "--out cli_tailbound_test.csv");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_tailbound_test.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,bound");
    int rows = 0;
    double prev = 1.1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const double bound = std::stod(line.substr(comma + 1));
        CHECK(bound <= prev);  // nonincreasing
        prev = bound;
        ++rows;
    }
    CHECK(rows == 7);
    std::remove("cli_tailbound_test.csv");
}

TEST_CASE("verify-doob accepts a config file") {
    {
        std::ofstream cfg("cli_config_test.cfg");
        cfg << "law = rademacher\nn_steps = 16\ntrials = 4000\nseed = 5\n"
            << "out_dir = cli_config_out\n";
    }
    const RunResult r = run_cli("verify-doob --config cli_config_test.cfg");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("law=rademacher") != std::string::npos);
    std::ifstream moment("cli_config_out/moment_report.csv");
    CHECK(moment.good());
    std::remove("cli_config_test.cfg");
    std::filesystem::remove_all("cli_config_out");
}

TEST_SUITE_END();
