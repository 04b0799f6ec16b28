// Command-line surface over the library: cover and ramification analysis,
// prime-density experiments, linking tables, semilocal strata and orbit
// reduction, Schwartz factorization checks, and the six-term rank solver.
//
// Exit codes: 0 success, 1 domain error (e.g. a ramified prime), 2 usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "adelic/serial.hpp"

namespace {

using adelic::i64;
using adelic::json;

std::vector<i64> parse_prime_list(const std::string& csv) {
    std::vector<i64> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(adelic::parse_i64(item, "InvalidPlaceSet"));
    }
    return out;
}

// Optional key=value defaults file; flags always win.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream in(path);
    if (!in) adelic::fail("ConfigNotFound", "cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for abelian covers of the adele class space"};
    app.require_subcommand(1);
    app.fallthrough();  // parent options (--config) may follow the subcommand

    std::string config_path;
    app.add_option("--config", config_path, "key=value defaults file (precision=K)");

    std::string ext_spec;
    std::string format = "json";
    i64 prime = 0;
    i64 bound = 0;
    i64 p_arg = 0;
    i64 q_arg = 0;
    int precision = 0;  // 0 = take config default
    std::string primes_csv;
    std::string adele_json;
    std::string table_json;
    std::string instance = "paper-pq";
    i64 orbit_prime = 0;
    i64 at_place = 0;
    bool dot = false;
    bool do_factor_out = false;

    CLI::App* cover = app.add_subcommand("cover", "fiber decomposition over the periodic orbit C_p");
    cover->add_option("--ext", ext_spec, "extension spec")->required();
    cover->add_option("--prime", prime, "unramified prime")->required();
    cover->add_option("--format", format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
    cover->add_flag("--dot", dot, "emit a DOT figure of the covering circles");

    CLI::App* ramify = app.add_subcommand("ramify", "ramified places of the cover");
    ramify->add_option("--ext", ext_spec, "extension spec")->required();

    CLI::App* density = app.add_subcommand("density", "Frobenius class statistics over primes up to a bound");
    density->add_option("--ext", ext_spec, "extension spec")->required();
    density->add_option("--bound", bound, "sieve bound")->required();

    CLI::App* linking = app.add_subcommand("linking", "linking data of two primes at finite precision");
    linking->add_option("--p", p_arg, "first prime")->required();
    linking->add_option("--q", q_arg, "second prime")->required();
    linking->add_option("--precision", precision, "exponent K: work mod q^K");

    CLI::App* linking_table = app.add_subcommand("linking-table", "CSV matrix of (p mod q^K, order)");
    linking_table->add_option("--primes", primes_csv, "comma-separated primes")->required();
    linking_table->add_option("--precision", precision, "exponent K");

    CLI::App* strata_cmd = app.add_subcommand("strata", "zero set, stratum and orbit label of an adele");
    strata_cmd->add_option("--places", primes_csv, "finite places of S (infinity is implicit)")->required();
    strata_cmd->add_option("--adele", adele_json, "adele as JSON rational strings")->required();
    strata_cmd->add_option("--precision", precision, "finite-place precision");

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "canonical mapping-torus form of a point over C_p");
    reduce_cmd->add_option("--places", primes_csv, "finite places of S")->required();
    reduce_cmd->add_option("--orbit-prime", orbit_prime, "the prime p of the orbit")->required();
    reduce_cmd->add_option("--adele", adele_json, "adele as JSON rational strings")->required();
    reduce_cmd->add_option("--precision", precision, "finite-place precision");

    CLI::App* schwartz_cmd = app.add_subcommand("schwartz-check", "factorization test for a value table");
    schwartz_cmd->add_option("--table", table_json, "table JSON")->required();
    schwartz_cmd->add_option("--at", at_place, "finite place to test")->required();
    schwartz_cmd->add_flag("--factor-out", do_factor_out, "emit the cofactor table");

    CLI::App* ktheory = app.add_subcommand("ktheory", "rank solver for a six-term exact hexagon");
    ktheory->add_option("--instance", instance, "paper-pq or inline JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        for (CLI::App* sub : app.get_subcommands()) std::cerr << sub->help();
        if (app.get_subcommands().empty()) std::cerr << app.help();
        return 2;
    }

    try {
        const auto config = read_config(config_path);
        if (precision == 0) {
            const auto it = config.find("precision");
            precision = it == config.end() ? adelic::kDefaultPrecision : std::stoi(it->second);
        }
        if (precision < 1) adelic::fail("InvalidPrecision", "precision must be >= 1");

        if (cover->parsed()) {
            const auto ext = adelic::parse_extension(ext_spec);
            const auto report = adelic::cover_fiber_over_Cp(ext, prime);
            if (dot || format == "dot") {
                std::cout << adelic::cover_report_to_dot(ext, report);
            } else {
                emit(adelic::cover_report_to_json(ext, report));
            }
        } else if (ramify->parsed()) {
            emit(adelic::ramification_to_json(adelic::parse_extension(ext_spec)));
        } else if (density->parsed()) {
            const auto ext = adelic::parse_extension(ext_spec);
            emit(adelic::density_to_json(ext, adelic::density_scan(ext, bound), bound));
        } else if (linking->parsed()) {
            const auto w = adelic::injectivity_witness(p_arg, q_arg, precision, INT64_MAX);
            emit(adelic::witness_to_json(p_arg, q_arg, precision, w));
        } else if (linking_table->parsed()) {
            const std::vector<i64> primes = parse_prime_list(primes_csv);
            std::cout << "p\\q";
            for (i64 q : primes) std::cout << "," << q;
            std::cout << "\n";
            for (i64 p : primes) {
                std::cout << p;
                for (i64 q : primes) {
                    if (p == q) {
                        std::cout << ",-";
                    } else {
                        const auto w = adelic::injectivity_witness(p, q, precision, INT64_MAX);
                        std::cout << ",(" << w.residue << ";" << w.order << ")";
                    }
                }
                std::cout << "\n";
            }
        } else if (strata_cmd->parsed()) {
            const auto S = adelic::PlaceSet::of(parse_prime_list(primes_csv));
            emit(adelic::strata_to_json(adelic::parse_adele(S, adele_json, precision)));
        } else if (reduce_cmd->parsed()) {
            const auto S = adelic::PlaceSet::of(parse_prime_list(primes_csv));
            const auto a = adelic::parse_adele(S, adele_json, precision);
            emit(adelic::reduced_point_to_json(adelic::reduce_orbit_Cp(a, orbit_prime)));
        } else if (schwartz_cmd->parsed()) {
            const auto f = adelic::parse_table(table_json);
            const bool ok = adelic::is_factorable_at(f, at_place);
            json j;
            j["at"] = at_place;
            j["factorable"] = ok;
            if (do_factor_out && ok) j["cofactor"] = adelic::table_to_json(adelic::factor_out(f, at_place));
            emit(j);
        } else if (ktheory->parsed()) {
            const adelic::HexagonInstance hex =
                instance == "paper-pq" ? adelic::paper_pq_instance() : adelic::parse_hexagon(instance);
            const adelic::SolveResult result = adelic::solve(hex);
            json j;
            if (result.status == adelic::SolveStatus::Solved && instance == "paper-pq") {
                j["K0(A)"] = result.ranks.at("K0(A)");
                j["K1(A)"] = result.ranks.at("K1(A)");
            }
            j.update(adelic::solve_result_to_json(result));
            emit(j);
        }
    } catch (const adelic::DomainError& e) {
        json j;
        j["error"] = e.code();
        j["message"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
