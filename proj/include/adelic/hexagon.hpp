#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"

namespace adelic {

// Rank propagation around a cyclic six-term exact sequence of finitely
// generated torsion-free abelian groups. With e_i the rank of the image of
// the i-th map, exactness forces rank(node_i) = e_{i-1} + e_i; known ranks
// and map annotations pin the e_i and the solver enumerates the rest.

struct NodeSpec {
    std::string name;
    std::optional<i64> rank;  // nullopt = unknown
    // Ranks alone pin the group only when it is free; the propagation below
    // is sound either way since only forward implications of the map
    // properties are used.
    bool torsion_free = true;
};

enum class MapProperty { Zero, Injective, Surjective };

struct MapAnnotation {
    std::string from;
    std::string to;
    std::set<MapProperty> properties;
    std::optional<i64> image_rank;
};

struct HexagonInstance {
    std::array<NodeSpec, 6> nodes;  // cyclic order
    std::array<MapAnnotation, 6> maps;  // maps[i]: nodes[i] -> nodes[(i+1) % 6]
};

inline void validate_hexagon(const HexagonInstance& hex) {
    std::set<std::string> names;
    for (const NodeSpec& n : hex.nodes) {
        if (n.name.empty()) fail("InvalidHexagon", "node names must be nonempty");
        if (!names.insert(n.name).second) fail("InvalidHexagon", "duplicate node name " + n.name);
        if (n.rank && *n.rank < 0) fail("InvalidHexagon", "ranks must be nonnegative");
    }
    for (size_t i = 0; i < 6; ++i) {
        const MapAnnotation& m = hex.maps[i];
        if (m.from != hex.nodes[i].name || m.to != hex.nodes[(i + 1) % 6].name) {
            fail("InvalidHexagon", "map " + std::to_string(i) + " must join cyclically adjacent nodes");
        }
        if (m.image_rank && *m.image_rank < 0) fail("InvalidHexagon", "image ranks must be nonnegative");
        if (m.properties.count(MapProperty::Zero) && m.image_rank && *m.image_rank > 0) {
            fail("InvalidHexagon", "a zero map cannot have positive image rank");
        }
        const auto& src_rank = hex.nodes[i].rank;
        const auto& dst_rank = hex.nodes[(i + 1) % 6].rank;
        if (m.properties.count(MapProperty::Zero) && m.properties.count(MapProperty::Injective) &&
            src_rank && *src_rank > 0) {
            fail("InvalidHexagon", "a zero map from a positive-rank node cannot be injective");
        }
        if (m.properties.count(MapProperty::Zero) && m.properties.count(MapProperty::Surjective) &&
            dst_rank && *dst_rank > 0) {
            fail("InvalidHexagon", "a zero map onto a positive-rank node cannot be surjective");
        }
    }
}

enum class SolveStatus { Solved, Underdetermined, Inconsistent };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    std::map<std::string, i64> ranks;        // all six nodes when solved
    std::map<std::string, i64> image_ranks;  // "from->to" -> rank of image when solved
    std::vector<std::string> free_parameters;  // nodes whose rank is not pinned
    std::string violated_constraint;           // set when inconsistent
    std::vector<std::string> trace;            // human-readable constraint log
};

namespace detail {

struct HexagonSystem {
    // fixed[i] set when e_i is pinned by an annotation; bound[i] is an upper
    // bound from adjacent known ranks (-1 = unbounded).
    std::array<std::optional<i64>, 6> fixed;
    std::array<i64, 6> bound{};
};

inline std::string map_label(const HexagonInstance& hex, size_t i) {
    return hex.maps[i].from + "->" + hex.maps[i].to;
}

// Collect equations e_i = c coming from the annotations. Returns an error
// string on direct conflict.
inline std::optional<std::string> pin_images(const HexagonInstance& hex, HexagonSystem& sys,
                                             std::vector<std::string>& trace) {
    const auto pin = [&](size_t i, i64 value, const std::string& why) -> std::optional<std::string> {
        if (value < 0) return "image rank of " + map_label(hex, i) + " forced negative by " + why;
        if (sys.fixed[i] && *sys.fixed[i] != value) {
            return "conflicting pins on image rank of " + map_label(hex, i) + " (" + why + ")";
        }
        if (!sys.fixed[i]) {
            sys.fixed[i] = value;
            trace.push_back("rank im(" + map_label(hex, i) + ") = " + std::to_string(value) + "  [" + why + "]");
        }
        return std::nullopt;
    };
    for (size_t i = 0; i < 6; ++i) {
        const MapAnnotation& m = hex.maps[i];
        const size_t prev = (i + 5) % 6;
        const size_t next = (i + 1) % 6;
        if (m.image_rank) {
            if (auto err = pin(i, *m.image_rank, "annotated image rank")) return err;
        }
        if (m.properties.count(MapProperty::Zero)) {
            if (auto err = pin(i, 0, "zero map")) return err;
        }
        if (m.properties.count(MapProperty::Injective)) {
            // exactness: rank ker = rank im of the previous map = 0
            if (auto err = pin(prev, 0, map_label(hex, i) + " injective")) return err;
            if (hex.nodes[i].rank) {
                if (auto err = pin(i, *hex.nodes[i].rank, map_label(hex, i) + " injective")) return err;
            }
        }
        if (m.properties.count(MapProperty::Surjective)) {
            // the next map kills everything: its image rank is 0
            if (auto err = pin(next, 0, map_label(hex, i) + " surjective")) return err;
            if (hex.nodes[next].rank) {
                if (auto err = pin(i, *hex.nodes[next].rank, map_label(hex, i) + " surjective")) return err;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Solves the hexagon for node ranks. Returns the unique rank assignment when
// the constraints pin it, the list of free parameters when several
// assignments exist, and the violated constraint when none does.
inline SolveResult solve(const HexagonInstance& hex) {
    validate_hexagon(hex);
    SolveResult result;
    detail::HexagonSystem sys;

    for (size_t i = 0; i < 6; ++i) {
        if (hex.nodes[i].rank) {
            result.trace.push_back("rank " + hex.nodes[i].name + " = " + std::to_string(*hex.nodes[i].rank) +
                                   "  [given]");
        }
    }
    if (auto err = detail::pin_images(hex, sys, result.trace)) {
        result.status = SolveStatus::Inconsistent;
        result.violated_constraint = *err;
        return result;
    }

    // Propagate the node equations e_{i-1} + e_i = r_i to completion.
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (size_t i = 0; i < 6; ++i) {
            if (!hex.nodes[i].rank) continue;
            const size_t prev = (i + 5) % 6;
            const i64 r = *hex.nodes[i].rank;
            for (const auto& [a, b] : {std::make_pair(prev, i), std::make_pair(i, prev)}) {
                if (sys.fixed[a] && !sys.fixed[b]) {
                    const i64 value = r - *sys.fixed[a];
                    if (value < 0) {
                        result.status = SolveStatus::Inconsistent;
                        result.violated_constraint = "exactness at " + hex.nodes[i].name +
                                                     " forces a negative image rank";
                        return result;
                    }
                    sys.fixed[b] = value;
                    result.trace.push_back("rank im(" + detail::map_label(hex, b) + ") = " +
                                           std::to_string(value) + "  [exactness at " + hex.nodes[i].name + "]");
                    progressed = true;
                }
            }
        }
    }

    // Bounds for the remaining free image ranks; a variable with no adjacent
    // known rank is genuinely unbounded.
    for (size_t i = 0; i < 6; ++i) {
        if (sys.fixed[i]) { sys.bound[i] = *sys.fixed[i]; continue; }
        i64 bound = -1;
        if (hex.nodes[i].rank) bound = *hex.nodes[i].rank;
        if (hex.nodes[(i + 1) % 6].rank) {
            const i64 b = *hex.nodes[(i + 1) % 6].rank;
            bound = bound < 0 ? b : std::min(bound, b);
        }
        if (bound < 0) {
            result.status = SolveStatus::Underdetermined;
            for (size_t j = 0; j < 6; ++j)
                if (!hex.nodes[j].rank) result.free_parameters.push_back(hex.nodes[j].name);
            result.trace.push_back("image rank of " + detail::map_label(hex, i) +
                                   " is unconstrained: no adjacent rank is known");
            return result;
        }
        sys.bound[i] = bound;
    }

    // Enumerate the bounded box and collect consistent assignments.
    std::vector<std::array<i64, 6>> solutions;
    std::array<i64, 6> e{};
    const auto consistent = [&]() {
        for (size_t i = 0; i < 6; ++i) {
            if (hex.nodes[i].rank && e[(i + 5) % 6] + e[i] != *hex.nodes[i].rank) return false;
        }
        return true;
    };
    const std::function<void(size_t)> recurse = [&](size_t i) {
        if (i == 6) {
            if (consistent()) solutions.push_back(e);
            return;
        }
        if (sys.fixed[i]) {
            e[i] = *sys.fixed[i];
            recurse(i + 1);
            return;
        }
        for (i64 v = 0; v <= sys.bound[i]; ++v) {
            e[i] = v;
            recurse(i + 1);
        }
    };
    recurse(0);

    if (solutions.empty()) {
        result.status = SolveStatus::Inconsistent;
        i64 alternating = 0;
        bool all_known = true;
        for (size_t i = 0; i < 6; ++i) {
            if (!hex.nodes[i].rank) { all_known = false; break; }
            alternating += (i % 2 == 0 ? 1 : -1) * *hex.nodes[i].rank;
        }
        if (all_known && alternating != 0) {
            result.violated_constraint =
                "alternating rank sum around the hexagon is " + std::to_string(alternating) + ", not 0";
        } else {
            result.violated_constraint = "no nonnegative image ranks satisfy the exactness equations";
        }
        return result;
    }

    // Ranks per solution; unique <=> solved.
    std::set<std::array<i64, 6>> rank_tuples;
    for (const auto& sol : solutions) {
        std::array<i64, 6> ranks{};
        for (size_t i = 0; i < 6; ++i) ranks[i] = sol[(i + 5) % 6] + sol[i];
        rank_tuples.insert(ranks);
    }
    if (rank_tuples.size() > 1) {
        result.status = SolveStatus::Underdetermined;
        const auto& first = *rank_tuples.begin();
        for (size_t i = 0; i < 6; ++i) {
            for (const auto& t : rank_tuples) {
                if (t[i] != first[i]) { result.free_parameters.push_back(hex.nodes[i].name); break; }
            }
        }
        result.trace.push_back(std::to_string(rank_tuples.size()) + " rank assignments satisfy the constraints");
        return result;
    }

    result.status = SolveStatus::Solved;
    const std::array<i64, 6>& ranks = *rank_tuples.begin();
    // Deterministic image ranks: the lexicographically smallest solution.
    const std::array<i64, 6>& image = *std::min_element(solutions.begin(), solutions.end());
    i64 alternating = 0;
    for (size_t i = 0; i < 6; ++i) {
        result.ranks[hex.nodes[i].name] = ranks[i];
        result.image_ranks[detail::map_label(hex, i)] = image[i];
        alternating += (i % 2 == 0 ? 1 : -1) * ranks[i];
        result.trace.push_back("rank " + hex.nodes[i].name + " = " + std::to_string(ranks[i]));
    }
    if (alternating != 0) {
        // cannot happen: the node equations force a zero alternating sum
        result.status = SolveStatus::Inconsistent;
        result.violated_constraint = "alternating rank sum is nonzero on a solved instance";
    }
    return result;
}

// Exactness check for a fully specified instance: every node rank must equal
// the sum of the image ranks of the incoming and outgoing maps.
inline bool verify_exactness(const HexagonInstance& hex) {
    validate_hexagon(hex);
    for (size_t i = 0; i < 6; ++i) {
        if (!hex.nodes[i].rank || !hex.maps[i].image_rank) {
            fail("IncompleteInstance", "verify_exactness requires all ranks and image ranks");
        }
    }
    for (size_t i = 0; i < 6; ++i) {
        const i64 incoming = *hex.maps[(i + 5) % 6].image_rank;
        const i64 outgoing = *hex.maps[i].image_rank;
        if (incoming + outgoing != *hex.nodes[i].rank) return false;
    }
    return true;
}

// The instance computing the K-theory of the algebra of the first two strata
// over S = {p, q, infinity}: the generic orbit contributes K_0 = 0, K_1 = Z;
// the boundary B of the three periodic orbits contributes Z^4 and Z^2; the
// connecting map onto K_1 of the generic part is surjective. Solving yields
// K_0(A) of rank 3 and K_1(A) of rank 2.
inline HexagonInstance paper_pq_instance() {
    HexagonInstance hex;
    hex.nodes[0] = NodeSpec{"K0(A_empty)", 0, true};
    hex.nodes[1] = NodeSpec{"K0(A)", std::nullopt, true};
    hex.nodes[2] = NodeSpec{"K0(B)", 4, true};
    hex.nodes[3] = NodeSpec{"K1(A_empty)", 1, true};
    hex.nodes[4] = NodeSpec{"K1(A)", std::nullopt, true};
    hex.nodes[5] = NodeSpec{"K1(B)", 2, true};
    hex.maps[0] = MapAnnotation{"K0(A_empty)", "K0(A)", {}, std::nullopt};
    hex.maps[1] = MapAnnotation{"K0(A)", "K0(B)", {}, std::nullopt};
    hex.maps[2] = MapAnnotation{"K0(B)", "K1(A_empty)", {MapProperty::Surjective}, std::nullopt};
    hex.maps[3] = MapAnnotation{"K1(A_empty)", "K1(A)", {}, std::nullopt};
    hex.maps[4] = MapAnnotation{"K1(A)", "K1(B)", {}, std::nullopt};
    hex.maps[5] = MapAnnotation{"K1(B)", "K0(A_empty)", {}, std::nullopt};
    return hex;
}

}  // namespace adelic
