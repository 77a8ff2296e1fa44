#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "chermnykh/potential.hpp"

#ifndef CHERMNYKH_CLI
#error "CHERMNYKH_CLI must name the command-line binary"
#endif

using namespace chermnykh;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run_cli(const std::string& args) {
    const std::string cmd = std::string(CHERMNYKH_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, n);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return std::string(CHERMNYKH_TMP) + "/" + name; }

}  // namespace

TEST_CASE("equilibria listing") {
    const Result r = run_cli("equilibria --mu 0.025 --q1 1 --a2 0 --mb 0.2 --t 0.01 --rc 0.8");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["meta"]["mb"] == 0.2);
    const auto& rows = j["rows"];
    REQUIRE(rows.size() == 5);
    const char* kinds[] = {"L3", "L1", "L2", "L4", "L5"};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(rows[i]["kind"] == kinds[i]);
        CHECK(rows[i]["residual"].get<double>() <= 1e-12);
    }
}

TEST_CASE("mu-crit classical column") {
    const Result r = run_cli("mu-crit --k 1..5 --q1 1 --a2 0 --mb 0");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double reference[] = {0.0385209, 0.0242939, 0.013516, 0.00827037, 0.0055092};
    REQUIRE(j["rows"].size() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(j["rows"][k]["k"] == k + 1);
        CHECK(std::abs(j["rows"][k]["mu_exact"].get<double>() - reference[k]) <= 1e-5);
    }
}

TEST_CASE("zvc csv") {
    const Result r = run_cli("zvc --C 3.5 --grid 512");
    REQUIRE(r.status == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# schema=1");
    while (std::getline(in, line) && line.rfind("#", 0) == 0) {
    }
    CHECK(line == "polyline,closed,vertex,x,y,tolerance");
    const SystemParams p{ParameterSet{}};
    std::size_t rows = 0;
    std::size_t bad = 0;
    while (std::getline(in, line)) {
        double x = 0, y = 0, tol = 0;
        int poly = 0, vertex = 0;
        char closed[8] = {};
        REQUIRE(std::sscanf(line.c_str(), "%d,%7[a-z],%d,%lf,%lf,%lf", &poly, closed, &vertex, &x, &y, &tol) == 6);
        // 12 significant digits in the file: allow the rounding of x, y
        const Gradient g = omega_grad(p, x, y);
        const double slack = 2.0 * (std::abs(g.x * x) + std::abs(g.y * y)) * 1e-12 + 1e-12;
        bad += std::abs(2.0 * omega(p, x, y) - 3.5) > tol + slack ? 1 : 0;
        ++rows;
    }
    CHECK(rows > 1000);
    CHECK(bad == 0);
}

TEST_CASE("flags override the config file") {
    const std::string cfg = tmp("cli_precedence.cfg");
    {
        std::ofstream f(cfg);
        f << "# test\nmu = 0.1\nq1 = 0.9\ncommand = zvc\n";
    }
    const Result a = run_cli("equilibria --config " + cfg);
    REQUIRE(a.status == 0);
    const auto ja = nlohmann::json::parse(a.out);
    CHECK(ja["command"] == "equilibria");
    CHECK(ja["meta"]["mu"] == 0.1);
    CHECK(ja["meta"]["q1"] == 0.9);

    const Result b = run_cli("equilibria --config " + cfg + " --mu 0.2");
    REQUIRE(b.status == 0);
    const auto jb = nlohmann::json::parse(b.out);
    CHECK(jb["meta"]["mu"] == 0.2);
    CHECK(jb["meta"]["q1"] == 0.9);

    const Result c = run_cli("equilibria");
    CHECK(nlohmann::json::parse(c.out)["meta"]["mu"] == 0.025);
}

TEST_CASE("exit statuses") {
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("").status == 64);
    CHECK(run_cli("orbit").status == 64);
    CHECK(run_cli("equilibria --bogus 1").status == 64);
    CHECK(run_cli("equilibria --mu abc").status == 64);
    CHECK(run_cli("equilibria --format xml").status == 64);
    CHECK(run_cli("sweep").status == 64);
    CHECK(run_cli("equilibria --config /nonexistent.cfg").status == 64);
    CHECK(run_cli("equilibria --mu 0.7").status == 2);
    CHECK(run_cli("equilibria --mb 0.6790912235 --samples 1000").status == 3);
    CHECK(run_cli("equilibria --out /nonexistent-dir/out.json").status == 74);
}

TEST_CASE("output files are byte-identical across runs") {
    const std::string a = tmp("sweep_a.csv");
    const std::string b = tmp("sweep_b.csv");
    REQUIRE(run_cli("sweep --sweep-q1 0:1:0.25 --sweep-mb 0,0.2 --threads 2 --out " + a).status == 0);
    REQUIRE(run_cli("sweep --sweep-q1 0:1:0.25 --sweep-mb 0,0.2 --threads 1 --out " + b).status == 0);
    const std::string ta = slurp(a);
    CHECK(!ta.empty());
    CHECK(ta == slurp(b));
    CHECK(ta.rfind("# schema=1\n", 0) == 0);
}

TEST_CASE("tables command") {
    const Result r = run_cli("tables --table table1 --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["meta"]["table1_reproduced"] == 10);
    for (const auto& row : j["rows"]) {
        if (row["q1"] == 1.0 && row["a2"] == 0.0 && row["mb"] == 0.0 && row["quantity"] == "omega1") {
            CHECK(std::abs(row["computed"].get<double>() - 0.890141) <= 5e-5);
            CHECK(row["provenance"] == "reproduced");
        }
    }
}

TEST_CASE("integrate command") {
    const Result r = run_cli("integrate --x0 0.5 --vy0 0.6 --tend 10 --dt 1 --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 11);
    CHECK(j["meta"]["status"] == "completed");
    CHECK(j["meta"]["max_relative_drift"].get<double>() <= 1e-9);
}
