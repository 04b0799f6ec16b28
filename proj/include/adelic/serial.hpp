#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "adelic/cover.hpp"
#include "adelic/error.hpp"
#include "adelic/extension.hpp"
#include "adelic/hexagon.hpp"
#include "adelic/profinite.hpp"
#include "adelic/schwartz.hpp"
#include "adelic/semilocal.hpp"

namespace adelic {

// JSON bridge for the CLI and golden tests. Output uses insertion-ordered
// objects and exact numerics (integers natively, rationals as strings) so
// identical inputs always produce identical bytes.

using json = nlohmann::ordered_json;

// Whole-string integer parse; trailing garbage is an error.
inline i64 parse_i64(const std::string& text, const char* error_code = "InvalidArgument") {
    try {
        size_t used = 0;
        const i64 value = std::stoll(text, &used);
        if (used != text.size()) fail(error_code, "cannot parse integer from '" + text + "'");
        return value;
    } catch (const std::logic_error&) {
        fail(error_code, "cannot parse integer from '" + text + "'");
    }
}

inline json extension_to_json(const AbelianExtensionSpec& ext) {
    json j;
    j["modulus"] = ext.modulus();
    j["kernel"] = ext.kernel().elements;
    return j;
}

// Accepts the shorthands "cyclotomic:m" and "quadratic:d", or an inline JSON
// object {"modulus": m, "kernel": [elements...]}.
inline AbelianExtensionSpec parse_extension(const std::string& text) {
    const auto colon = text.find(':');
    if (text.rfind("cyclotomic:", 0) == 0) {
        return AbelianExtensionSpec::cyclotomic(parse_i64(text.substr(colon + 1), "InvalidExtensionSpec"));
    }
    if (text.rfind("quadratic:", 0) == 0) {
        return AbelianExtensionSpec::quadratic(parse_i64(text.substr(colon + 1), "InvalidExtensionSpec"));
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("modulus") || !j.contains("kernel")) {
        fail("InvalidExtensionSpec",
             "expected cyclotomic:m, quadratic:d, or {\"modulus\":m,\"kernel\":[...]}; got '" + text + "'");
    }
    return AbelianExtensionSpec::from_kernel_values(j["modulus"].get<i64>(),
                                                    j["kernel"].get<std::vector<i64>>());
}

inline json ramification_to_json(const AbelianExtensionSpec& ext) {
    const RamificationReport report = ramification_set(ext);
    json j;
    j["extension"] = extension_to_json(ext);
    j["conductor"] = conductor(ext);
    j["ramified_finite_primes"] = report.ramified_finite_primes;
    j["archimedean_always_ramified"] = report.archimedean_always_ramified;
    j["smallest_unramified_outside_set"] = place_strings(report.smallest_unramified_outside_set);
    return j;
}

inline json cover_report_to_json(const AbelianExtensionSpec& ext, const CoverFiberReport& report) {
    json j;
    j["extension"] = extension_to_json(ext);
    j["prime"] = report.prime;
    j["monodromy"] = report.monodromy;
    j["residue_degree"] = report.residue_degree;
    j["component_count"] = report.component_count;
    j["circle_length_multiplier"] = report.residue_degree;  // length = multiplier * log p
    j["component_labels"] = report.component_labels;
    return j;
}

inline std::string format_length(i64 multiplier, i64 prime) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g",
                  static_cast<double>(multiplier) * std::log(static_cast<double>(prime)));
    return buf;
}

// DOT figure of the fiber over C_p: one cycle of fiber points per component,
// edges given by the monodromy, each component annotated with its length.
inline std::string cover_report_to_dot(const AbelianExtensionSpec& ext, const CoverFiberReport& r) {
    std::string dot;
    dot += "digraph cover_fiber {\n";
    dot += "  label=\"fiber over C_" + std::to_string(r.prime) + ": " + std::to_string(r.component_count) +
           " circle(s) of length " + std::to_string(r.residue_degree) + "*log(" + std::to_string(r.prime) +
           ") = " + format_length(r.residue_degree, r.prime) + "\";\n";
    for (size_t c = 0; c < r.component_labels.size(); ++c) {
        dot += "  subgraph cluster_" + std::to_string(c) + " {\n";
        dot += "    label=\"len = " + format_length(r.residue_degree, r.prime) + "\";\n";
        // walk the coset by repeated monodromy so the cycle structure is explicit
        i64 g = r.component_labels[c].front();
        for (i64 step = 0; step < r.residue_degree; ++step) {
            const i64 next = ext.galois_group().mul(g, r.monodromy);
            dot += "    \"g" + std::to_string(c) + "_" + std::to_string(g) + "\" -> \"g" + std::to_string(c) +
                   "_" + std::to_string(next) + "\";\n";
            g = next;
        }
        dot += "  }\n";
    }
    dot += "}\n";
    return dot;
}

inline json density_to_json(const AbelianExtensionSpec& ext, const DensityScan& scan, i64 bound) {
    json j;
    j["extension"] = extension_to_json(ext);
    j["bound"] = bound;
    j["total_unramified_primes"] = scan.total;
    json counts = json::object();
    for (const auto& [rep, count] : scan.counts) counts[std::to_string(rep)] = count;
    j["counts"] = counts;
    j["nontrivial"] = scan.nontrivial;
    j["nontrivial_fraction"] = scan.nontrivial_fraction().str();
    return j;
}

inline json witness_to_json(i64 p, i64 q, int k, const InjectivityWitness& w) {
    json j;
    j["p"] = p;
    j["q"] = q;
    j["precision"] = k;
    j["residue"] = w.residue;
    j["order"] = w.order;
    j["witness_horizon"] = w.witness_horizon;
    j["pairwise_distinct"] = w.pairwise_distinct;
    return j;
}

// Adele JSON: {"2": "12", "3": "0", "inf": "-5/2"} with rational strings,
// keyed exactly by the places of S.
inline SemilocalAdele parse_adele(const PlaceSet& S, const std::string& text, int precision) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        fail("InvalidAdele", "expected a JSON object of rational strings, got '" + text + "'");
    }
    std::map<i64, Rational> finite;
    Rational infinite(0);
    bool has_inf = false;
    for (const auto& [key, value] : j.items()) {
        const Rational r = Rational::parse(value.is_string() ? value.get<std::string>() : value.dump());
        if (key == "inf") {
            infinite = r;
            has_inf = true;
        } else {
            finite[parse_i64(key, "InvalidAdele")] = r;
        }
    }
    if (!has_inf) fail("InvalidAdele", "an adele needs an \"inf\" component");
    return from_rationals(S, finite, infinite, precision);
}

inline json adele_to_json(const SemilocalAdele& a) {
    json j;
    for (const auto& [p, c] : a.finite) {
        json comp;
        comp["zero"] = c.zero;
        if (!c.zero) {
            comp["valuation"] = c.valuation;
            comp["unit"] = c.unit;
        }
        j[std::to_string(p)] = comp;
    }
    j["inf"] = a.archimedean.str();
    return j;
}

inline json strata_to_json(const SemilocalAdele& a) {
    const Strata s = strata(a);
    json j;
    j["Z"] = place_strings(s.zero_places);
    j["nu"] = s.nu;
    j["orbit"] = place_strings(orbit_label(a));
    return j;
}

inline json reduced_point_to_json(const MappingTorusPoint& pt) {
    json j;
    j["orbit_prime"] = pt.excluded_prime;
    json residues = json::object();
    for (const auto& [q, r] : pt.h.residues()) {
        json entry;
        entry["residue"] = r;
        entry["modulus"] = pt.h.profile().modulus_at(q);
        residues[std::to_string(q)] = entry;
    }
    j["h"] = residues;
    j["stripped_power"] = pt.stripped_power;
    j["scale"] = pt.scale.str();
    return j;
}

// Table JSON: {"places": [{"prime":2,"outer":1,"inner":1}, ...],
//              "values": ["0", "1", "1/2", ...]} in row-major order with the
// last place fastest.
inline ProductBSFunction parse_table(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("places") || !j.contains("values")) {
        fail("InvalidTable", "expected {\"places\":[...],\"values\":[...]}");
    }
    std::vector<LocalWindow> windows;
    for (const auto& place : j["places"]) {
        windows.push_back(LocalWindow{place.at("prime").get<i64>(), place.at("outer").get<int>(),
                                      place.at("inner").get<int>()});
    }
    std::vector<Rational> values;
    for (const auto& v : j["values"]) {
        values.push_back(Rational::parse(v.is_string() ? v.get<std::string>() : v.dump()));
    }
    return ProductBSFunction::from_flat(std::move(windows), std::move(values));
}

inline json table_to_json(const ProductBSFunction& f) {
    json j;
    json places = json::array();
    for (const LocalWindow& w : f.windows()) {
        json place;
        place["prime"] = w.prime;
        place["outer"] = w.outer;
        place["inner"] = w.inner;
        places.push_back(place);
    }
    j["places"] = places;
    json values = json::array();
    for (const Rational& v : f.values()) values.push_back(v.str());
    j["values"] = values;
    return j;
}

inline HexagonInstance parse_hexagon(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("nodes") || !j.contains("maps") ||
        j["nodes"].size() != 6 || j["maps"].size() != 6) {
        fail("InvalidHexagon", "expected {\"nodes\":[6 entries],\"maps\":[6 entries]}");
    }
    HexagonInstance hex;
    for (size_t i = 0; i < 6; ++i) {
        const json& n = j["nodes"][i];
        hex.nodes[i].name = n.at("name").get<std::string>();
        if (n.contains("rank") && !n["rank"].is_null()) hex.nodes[i].rank = n["rank"].get<i64>();
        if (n.contains("torsion_free")) hex.nodes[i].torsion_free = n["torsion_free"].get<bool>();
    }
    for (size_t i = 0; i < 6; ++i) {
        const json& m = j["maps"][i];
        hex.maps[i].from = m.at("from").get<std::string>();
        hex.maps[i].to = m.at("to").get<std::string>();
        if (m.contains("image_rank") && !m["image_rank"].is_null()) {
            hex.maps[i].image_rank = m["image_rank"].get<i64>();
        }
        if (m.contains("properties")) {
            for (const auto& prop : m["properties"]) {
                const std::string s = prop.get<std::string>();
                if (s == "Zero") {
                    hex.maps[i].properties.insert(MapProperty::Zero);
                } else if (s == "Injective") {
                    hex.maps[i].properties.insert(MapProperty::Injective);
                } else if (s == "Surjective") {
                    hex.maps[i].properties.insert(MapProperty::Surjective);
                } else {
                    fail("InvalidHexagon", "unknown map property '" + s + "'");
                }
            }
        }
    }
    return hex;
}

inline json solve_result_to_json(const SolveResult& result) {
    json j;
    switch (result.status) {
        case SolveStatus::Solved: j["status"] = "solved"; break;
        case SolveStatus::Underdetermined: j["status"] = "underdetermined"; break;
        case SolveStatus::Inconsistent: j["status"] = "inconsistent"; break;
    }
    if (result.status == SolveStatus::Solved) {
        j["ranks"] = result.ranks;
        j["image_ranks"] = result.image_ranks;
    }
    if (!result.free_parameters.empty()) j["free_parameters"] = result.free_parameters;
    if (!result.violated_constraint.empty()) j["violated_constraint"] = result.violated_constraint;
    j["trace"] = result.trace;
    return j;
}

}  // namespace adelic
