#include "hulthen/cli.hpp"
#include "hulthen/scattering.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hulthen;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hulthen");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header)
        *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ','))
            row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::string temp_path(const std::string& name)
{
    return std::string(HULTHEN_TEST_TMP) + "/" + name;
}

const std::vector<std::string> kBarrier = {"--a", "0.4", "--b", "0.5", "--q", "0.6", "--qt", "0.7", "--v0", "2"};
const std::vector<std::string> kWell = {"--a", "0.5", "--b", "0.75", "--q", "0.1", "--qt", "0.5", "--v0", "5"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail)
{
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

} // namespace

TEST_CASE("profile command")
{
    const Outcome r = run({"profile", "--v0", "1", "--a", "0.5", "--b", "0.5", "--q", "0.5", "--qt", "0.5",
                           "--xmin", "-10", "--xmax", "10", "--n", "3"});
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = parse_csv(r.out, &header);
    CHECK(header == "x,V");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == 0.0);
    CHECK(rows[1][1] == 2.0);
    CHECK(r.out.find("\n0,2\n") != std::string::npos);

    const Outcome zero = run({"profile", "--v0", "0"});
    REQUIRE(zero.code == 0);
    const auto zrows = parse_csv(zero.out);
    CHECK(zrows.size() == 201);
    for (const auto& row : zrows)
        CHECK(row[1] == 0.0);
}

TEST_CASE("profile shapes for varying ranges")
{
    for (auto [a, b] : {std::pair{"0.5", "0.5"}, std::pair{"0.8", "0.3"}, std::pair{"0.3", "0.8"}}) {
        const Outcome r = run({"profile", "--v0", "1", "--q", "0.5", "--qt", "0.5", "--a", a, "--b", b});
        REQUIRE(r.code == 0);
        const auto rows = parse_csv(r.out);
        std::size_t peak = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i][1] > rows[peak][1])
                peak = i;
        CHECK(std::abs(rows[peak][0]) < 0.2);
        CHECK(rows.front()[1] < 0.2 * rows[peak][1]);
        CHECK(rows.back()[1] < 0.2 * rows[peak][1]);
    }
}

TEST_CASE("scan-e command")
{
    const Outcome r = run(with({"scan-e", "--emin", "0.1", "--emax", "10", "--n", "200"}, kBarrier));
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = parse_csv(r.out, &header);
    CHECK(header == "E,R,T,unitarity_defect");
    REQUIRE(rows.size() == 200);
    for (const auto& row : rows)
        CHECK(row[3] < 1e-8);

    SUBCASE("mirrored parameters give the same T column")
    {
        const Outcome m = run({"scan-e", "--a", "0.5", "--b", "0.4", "--q", "0.7", "--qt", "0.6", "--v0", "2"});
        REQUIRE(m.code == 0);
        const auto mrows = parse_csv(m.out);
        for (std::size_t i = 0; i < rows.size(); ++i)
            CHECK(std::abs(rows[i][2] - mrows[i][2]) < 1e-10);
    }
    SUBCASE("opaque at low energy, transparent at high energy")
    {
        const Outcome f = run({"scan-e", "--v0", "2", "--a", "0.8", "--b", "0.3", "--q", "0.7", "--qt", "0.7",
                               "--emin", "0.05", "--emax", "50", "--n", "100"});
        REQUIRE(f.code == 0);
        const auto frows = parse_csv(f.out);
        CHECK(frows.front()[2] < 0.2);
        CHECK(frows.back()[2] > 0.99);
    }
}

TEST_CASE("scan-v0 command")
{
    const Outcome r = run({"scan-v0", "--a", "0.5", "--b", "0.5", "--q", "0.5", "--qt", "0.5", "--e", "1",
                           "--v0min", "0", "--v0max", "50", "--n", "101"});
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = parse_csv(r.out, &header);
    CHECK(header == "V0,T");
    REQUIRE(rows.size() == 101);
    CHECK(rows.front()[0] == 0.0);
    CHECK(std::abs(rows.front()[1] - 1.0) < 1e-10);
    CHECK(rows.back()[1] < 0.01);
    // Monotone until T sinks into round-off.
    for (std::size_t i = 1; i < rows.size() && rows[i][1] > 1e-12; ++i)
        CHECK(rows[i][1] < rows[i - 1][1]);
}

TEST_CASE("scatter command")
{
    const Outcome r = run(with({"scatter", "--e", "2", "--format", "json"}, kBarrier));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["status"] == "ok");
    const double t = j["results"]["T"];
    CHECK(t == doctest::Approx(scatter({1.0, 0.4, 0.5, 0.6, 0.7, 2.0, Mode::Barrier}, 2.0).transmission));
    CHECK(j["results"]["amp_trans"].size() == 2);
}

TEST_CASE("bound command")
{
    const Outcome r = run(with({"bound"}, kWell));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    for (const char* key : {"params", "command", "results", "tolerances", "status"})
        CHECK(j.contains(key));
    CHECK(j["command"] == "bound");
    CHECK(j["params"]["mode"] == "well");
    CHECK(j["results"]["count"] == 6);
    CHECK(j["results"]["eigenvalues"][0].get<double>() == doctest::Approx(-2.4665948).epsilon(1e-7));
    CHECK(j["results"]["residuals"].size() == 6);

    SUBCASE("trace file has one row per scan point")
    {
        const std::string path = temp_path("trace.csv");
        const Outcome t = run(with({"bound", "--scan-points", "500", "--trace", path}, kWell));
        REQUIRE(t.code == 0);
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string header;
        const auto rows = parse_csv(buf.str(), &header);
        CHECK(header == "E,D");
        CHECK(rows.size() == 500);
    }
    SUBCASE("shallow well")
    {
        const Outcome s = run({"bound", "--v0", "1e-6"});
        REQUIRE(s.code == 0);
        const json sj = json::parse(s.out);
        CHECK(sj["results"]["count"].get<int>() <= 1);
    }
    SUBCASE("barrier mode is rejected")
    {
        CHECK(run(with({"bound", "--mode", "barrier"}, kWell)).code == 2);
    }
}

TEST_CASE("verify command")
{
    SUBCASE("scattering against the oracle")
    {
        const Outcome r = run(with({"verify", "--n", "20"}, kBarrier));
        CHECK(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j["status"] == "ok");
        CHECK(j["results"]["points"].size() == 20);
        CHECK(j["results"]["max_abs_dT"].get<double>() < 1e-4);
    }
    SUBCASE("bound states against shooting")
    {
        const Outcome r = run(with({"verify", "--mode", "well"}, kWell));
        CHECK(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j["results"]["analytic_count"] == j["results"]["oracle_count"]);
        CHECK(j["results"]["max_abs_dE"].get<double>() < 1e-6);
    }
    SUBCASE("the literal bound-state condition is flagged")
    {
        const Outcome r = run(with({"verify", "--mode", "well", "--matching", "printed"}, kWell));
        CHECK(r.code == 3);
        CHECK(json::parse(r.out)["status"] == "fail");
    }
    SUBCASE("the literal scattering formulas pass")
    {
        const Outcome r = run(with({"verify", "--n", "10", "--matching", "printed"}, kBarrier));
        CHECK(r.code == 0);
    }
}

TEST_CASE("exit codes for bad input")
{
    CHECK(run({}).code == 2);
    CHECK(run({"profile", "--q", "1.2"}).code == 2);
    CHECK(run({"profile", "--n", "1"}).code == 2);
    CHECK(run({"profile", "--xmin", "3", "--xmax", "1"}).code == 2);
    CHECK(run({"profile", "--mode", "hill"}).code == 2);
    CHECK(run({"profile", "--format", "xml"}).code == 2);
    CHECK(run({"profile", "--bogus", "1"}).code == 2);
    CHECK(run({"scan-e", "--emin", "0"}).code == 2);
    CHECK(run({"scatter", "--e", "-1"}).code == 2);
    CHECK(run({"scatter", "--mode", "well"}).code == 2);
    CHECK(run({"bound", "--scan-points", "10"}).code == 2);
    CHECK(run({"profile", "--config", "/nonexistent/config.json"}).code == 2);
    CHECK(run({"bound", "--matching", "guess"}).code == 2);
}

TEST_CASE("config file with command-line override")
{
    const std::string path = temp_path("config.json");
    {
        std::ofstream cfg(path);
        cfg << R"({"v0": 3.0, "a": 0.5, "b": 0.5, "q": 0.5, "qt": 0.5, "xmin": -1, "xmax": 1, "n": 3})";
    }
    const Outcome from_file = run({"profile", "--config", path});
    REQUIRE(from_file.code == 0);
    auto rows = parse_csv(from_file.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == doctest::Approx(6.0));

    const Outcome overridden = run({"profile", "--config", path, "--v0", "1"});
    REQUIRE(overridden.code == 0);
    rows = parse_csv(overridden.out);
    CHECK(rows[1][1] == doctest::Approx(2.0));

    {
        std::ofstream bad(path);
        bad << R"({"v0": "strong"})";
    }
    CHECK(run({"profile", "--config", path}).code == 2);
}

TEST_CASE("output is deterministic and independent of thread count")
{
    const auto args = with({"scan-e", "--n", "64"}, kBarrier);
    const Outcome first = run(args);
    const Outcome second = run(args);
    CHECK(first.out == second.out);

    setenv("HULTHEN_THREADS", "1", 1);
    const Outcome serial = run(args);
    setenv("HULTHEN_THREADS", "3", 1);
    const Outcome threaded = run(args);
    unsetenv("HULTHEN_THREADS");
    CHECK(serial.out == first.out);
    CHECK(threaded.out == first.out);
}

TEST_CASE("output file and JSON tables")
{
    const std::string path = temp_path("scan.json");
    const Outcome r = run(with({"scan-e", "--n", "5", "--format", "json", "--output", path}, kBarrier));
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const json j = json::parse(in);
    CHECK(j["command"] == "scan-e");
    CHECK(j["results"].size() == 5);
    CHECK(j["results"][0].contains("unitarity_defect"));
}

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, -2.4665948434215266, 6.2060182903044528e-14, 2.0})
        CHECK(std::stod(cli::format_number(v)) == v);
    CHECK(cli::format_number(2.0) == "2");
}
