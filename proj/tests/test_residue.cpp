#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "adelic/residue.hpp"

using namespace adelic;

TEST_CASE("unit group enumeration", "[residue]") {
    CHECK(unit_group_values(1) == std::vector<i64>{0});  // trivial group, single formal element
    CHECK(unit_group_values(8) == std::vector<i64>{1, 3, 5, 7});
    CHECK(unit_group_values(12) == std::vector<i64>{1, 5, 7, 11});
    CHECK(unit_group(Modulus(5)).size() == 4);
    for (i64 m = 1; m <= 60; ++m) {
        CHECK(static_cast<i64>(unit_group_values(m).size()) == euler_phi(m));
    }
}

TEST_CASE("element order", "[residue]") {
    CHECK(element_order(unit_residue(7, 1)) == 1);
    CHECK(element_order(unit_residue(5, 2)) == 4);
    CHECK(element_order(unit_residue(8, 7)) == 2);
    CHECK(element_order(unit_residue(1, 0)) == 1);
}

TEST_CASE("element order divides phi(m) for all m up to 200", "[residue]") {
    for (i64 m = 1; m <= 200; ++m) {
        const i64 phi = euler_phi(m);
        for (i64 v : unit_group_values(m)) {
            CHECK(phi % element_order(UnitResidue{m, v}) == 0);
        }
    }
}

TEST_CASE("subgroup generation", "[residue]") {
    CHECK(subgroup_generated(Modulus(8), {}).elements == std::vector<i64>{1});
    CHECK(subgroup_generated(Modulus(8), {7}).elements == std::vector<i64>{1, 7});
    CHECK(subgroup_generated(Modulus(12), {5, 7}).elements == std::vector<i64>{1, 5, 7, 11});
    CHECK_THROWS_AS(subgroup_generated(Modulus(8), {4}), DomainError);
    CHECK(subgroup_generated(Modulus(1), {}).elements == std::vector<i64>{0});
}

TEST_CASE("subgroup validation", "[residue]") {
    CHECK(subgroup_from_elements(8, {1, 7}).contains(7));
    CHECK_THROWS_AS(subgroup_from_elements(8, {1, 3, 5}), DomainError);  // 3*5 = 7 missing
    CHECK_THROWS_AS(subgroup_from_elements(8, {3, 5}), DomainError);     // no identity
    CHECK_THROWS_AS(subgroup_from_elements(8, {1, 2}), DomainError);     // 2 not a unit
}

TEST_CASE("lagrange on generated subgroups", "[residue]") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        const i64 m = 2 + static_cast<i64>(rng() % 199);
        const auto units = unit_group_values(m);
        std::vector<i64> gens;
        for (int i = 0; i < 2; ++i) gens.push_back(units[rng() % units.size()]);
        const Subgroup h = subgroup_generated(Modulus(m), gens);
        CHECK(euler_phi(m) % static_cast<i64>(h.size()) == 0);
    }
}

TEST_CASE("quotient groups and canonical representatives", "[residue]") {
    SECTION("full kernel gives the trivial quotient") {
        const QuotientGroup g = quotient(Modulus(8), full_unit_subgroup(8));
        CHECK(g.size() == 1);
        CHECK(g.identity() == 1);
    }
    SECTION("index-two quotient of (Z/8)*") {
        const QuotientGroup g = quotient(Modulus(8), subgroup_from_elements(8, {1, 7}));
        CHECK(g.size() == 2);
        CHECK(g.coset_representatives() == std::vector<i64>{1, 3});
        CHECK(g.canon(7) == 1);
        CHECK(g.canon(5) == 3);
        CHECK(g.mul(3, 3) == 1);
    }
    SECTION("trivial kernel recovers the unit group") {
        const QuotientGroup g = quotient(Modulus(5), trivial_subgroup(5));
        CHECK(g.size() == 4);
        CHECK(g.order_of(2) == 4);
    }
    SECTION("rejects non-subgroups") {
        CHECK_THROWS_AS(QuotientGroup(8, Subgroup{8, {1, 3, 5}}), DomainError);
    }
    SECTION("canon is idempotent") {
        const QuotientGroup g = quotient(Modulus(24), subgroup_from_elements(24, {1, 7}));
        for (i64 u : unit_group_values(24)) CHECK(g.canon(g.canon(u)) == g.canon(u));
    }
}

TEST_CASE("canonical map is a homomorphism on random moduli", "[residue]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const i64 m = 2 + static_cast<i64>(rng() % 199);
        const auto units = unit_group_values(m);
        const Subgroup kernel = subgroup_generated(Modulus(m), {units[rng() % units.size()]});
        const QuotientGroup g(m, kernel);
        for (int check = 0; check < 30; ++check) {
            const i64 x = units[rng() % units.size()];
            const i64 y = units[rng() % units.size()];
            CHECK(g.canon(mulmod(x, y, m)) == g.mul(g.canon(x), g.canon(y)));
        }
    }
}

TEST_CASE("CRT consistency of unit groups", "[residue]") {
    // for coprime m1, m2 the unit group splits; orders combine as lcm
    const std::vector<std::pair<i64, i64>> pairs = {{3, 8}, {5, 9}, {7, 16}, {4, 25}};
    for (const auto& [m1, m2] : pairs) {
        REQUIRE(std::gcd(m1, m2) == 1);
        const i64 m = m1 * m2;
        CHECK(euler_phi(m) == euler_phi(m1) * euler_phi(m2));
        for (i64 v : unit_group_values(m)) {
            const i64 o = element_order(UnitResidue{m, v});
            const i64 o1 = element_order(UnitResidue{m1, v % m1});
            const i64 o2 = element_order(UnitResidue{m2, v % m2});
            CHECK(o == std::lcm(o1, o2));
        }
    }
}
