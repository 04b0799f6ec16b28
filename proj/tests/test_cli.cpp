#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef ADELIC_CLI_PATH
#error "ADELIC_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ADELIC_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

using nlohmann::json;

}  // namespace

TEST_CASE("cover subcommand emits the fiber report", "[cli]") {
    const auto r = run_cli("cover --ext quadratic:-1 --prime 5 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["component_count"] == 2);
    CHECK(j["residue_degree"] == 1);
    CHECK(j["prime"] == 5);
    // round trip: the echoed spec parses back to the same extension
    CHECK(j["extension"]["modulus"] == 4);
    CHECK(j["extension"]["kernel"] == json::array({1}));
}

TEST_CASE("ramified primes exit with code 1", "[cli]") {
    const auto r = run_cli("cover --ext quadratic:-1 --prime 2");
    CHECK(r.exit_code == 1);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli("cover --ext quadratic:-1").exit_code == 2);       // missing --prime
    CHECK(run_cli("cover --ext quadratic:-1 --prime 5 --bogus").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);                               // subcommand required
}

TEST_CASE("ktheory paper instance", "[cli]") {
    const auto r = run_cli("ktheory --instance paper-pq");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["K0(A)"] == 3);
    CHECK(j["K1(A)"] == 2);
    CHECK(j["status"] == "solved");
}

TEST_CASE("ramify and density subcommands", "[cli]") {
    const auto ram = run_cli("ramify --ext cyclotomic:15");
    REQUIRE(ram.exit_code == 0);
    const json j = json::parse(ram.output);
    CHECK(j["ramified_finite_primes"] == json::array({3, 5}));
    CHECK(j["smallest_unramified_outside_set"] == json::array({"3", "5", "inf"}));

    const auto den = run_cli("density --ext quadratic:-1 --bound 1000");
    REQUIRE(den.exit_code == 0);
    const json d = json::parse(den.output);
    CHECK(d["total_unramified_primes"] == 167);  // 168 primes below 1000 minus the ramified 2
}

TEST_CASE("linking emits residue and order", "[cli]") {
    const auto r = run_cli("linking --p 2 --q 3 --precision 3");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["residue"] == 2);
    CHECK(j["order"] == 18);
    CHECK(j["pairwise_distinct"] == true);
}

TEST_CASE("linking-table emits a CSV matrix", "[cli]") {
    const auto r = run_cli("linking-table --primes 2,3,5 --precision 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output ==
          "p\\q,2,3,5\n"
          "2,-,(2;2),(2;4)\n"
          "3,(1;1),-,(3;4)\n"
          "5,(1;1),(2;2),-\n");
}

TEST_CASE("strata and reduce subcommands", "[cli]") {
    const auto s = run_cli(R"(strata --places 2,3,7 --adele '{"2":"12","3":"0","7":"1","inf":"-5/2"}')");
    REQUIRE(s.exit_code == 0);
    const json j = json::parse(s.output);
    CHECK(j["Z"] == json::array({"3"}));
    CHECK(j["nu"] == 1);
    CHECK(j["orbit"] == json::array({"3"}));

    const auto r = run_cli(
        R"(reduce --places 2,3 --orbit-prime 2 --adele '{"2":"0","3":"3","inf":"6"}' --precision 1)");
    REQUIRE(r.exit_code == 0);
    const json pt = json::parse(r.output);
    CHECK(pt["h"]["3"]["residue"] == 2);
    CHECK(pt["stripped_power"] == 1);
    CHECK(pt["scale"] == "1");
}

TEST_CASE("schwartz-check subcommand", "[cli]") {
    const std::string table =
        R"('{"places":[{"prime":2,"outer":0,"inner":1}],"values":["1","1"]}')";
    const auto ok = run_cli("schwartz-check --table " + table + " --at 2 --factor-out");
    REQUIRE(ok.exit_code == 0);
    const json j = json::parse(ok.output);
    CHECK(j["factorable"] == true);
    CHECK(j["cofactor"]["values"] == json::array({"1"}));

    const std::string bad =
        R"('{"places":[{"prime":2,"outer":0,"inner":1}],"values":["0","1"]}')";
    const auto no = run_cli("schwartz-check --table " + bad + " --at 2");
    REQUIRE(no.exit_code == 0);
    CHECK(json::parse(no.output)["factorable"] == false);
}

TEST_CASE("golden bytes for documented invocations", "[cli]") {
    const auto cover = run_cli("cover --ext quadratic:-1 --prime 5 --format json");
    REQUIRE(cover.exit_code == 0);
    CHECK(cover.output ==
          "{\n"
          "  \"extension\": {\n"
          "    \"modulus\": 4,\n"
          "    \"kernel\": [\n"
          "      1\n"
          "    ]\n"
          "  },\n"
          "  \"prime\": 5,\n"
          "  \"monodromy\": 1,\n"
          "  \"residue_degree\": 1,\n"
          "  \"component_count\": 2,\n"
          "  \"circle_length_multiplier\": 1,\n"
          "  \"component_labels\": [\n"
          "    [\n"
          "      1\n"
          "    ],\n"
          "    [\n"
          "      3\n"
          "    ]\n"
          "  ]\n"
          "}\n");
    const auto linking = run_cli("linking --p 2 --q 3 --precision 1");
    REQUIRE(linking.exit_code == 0);
    CHECK(linking.output ==
          "{\n"
          "  \"p\": 2,\n"
          "  \"q\": 3,\n"
          "  \"precision\": 1,\n"
          "  \"residue\": 2,\n"
          "  \"order\": 2,\n"
          "  \"witness_horizon\": 2,\n"
          "  \"pairwise_distinct\": true\n"
          "}\n");
}

TEST_CASE("output bytes are stable across runs", "[cli]") {
    const std::string cmd = "cover --ext cyclotomic:7 --prime 2 --format json";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    const auto d1 = run_cli("density --ext cyclotomic:7 --bound 5000");
    const auto d2 = run_cli("density --ext cyclotomic:7 --bound 5000");
    CHECK(d1.output == d2.output);
}

TEST_CASE("dot output draws one cycle per component", "[cli]") {
    const auto r = run_cli("cover --ext quadratic:-1 --prime 3 --dot");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("digraph cover_fiber") != std::string::npos);
    CHECK(r.output.find("cluster_0") != std::string::npos);
    CHECK(r.output.find("len = 2.19722") != std::string::npos);  // 2 log 3
    CHECK(r.output.find("cluster_1") == std::string::npos);      // 3 is inert: one component

    const auto split = run_cli("cover --ext quadratic:-1 --prime 5 --format dot");
    CHECK(split.output.find("cluster_1") != std::string::npos);  // 5 splits: two components
}

TEST_CASE("config file sets the default precision", "[cli]") {
    const std::string path = "/tmp/adelic_test_config.txt";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("# defaults\nprecision = 2\n", f);
        fclose(f);
    }
    const auto r = run_cli("linking --p 2 --q 3 --config " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.output)["precision"] == 2);
    // flags override the config
    const auto o = run_cli("linking --p 2 --q 3 --precision 1 --config " + path);
    CHECK(json::parse(o.output)["precision"] == 1);
}
