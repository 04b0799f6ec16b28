#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "adelic/extension.hpp"
#include "adelic/serial.hpp"

using namespace adelic;

namespace {

// All subgroups of (Z/mZ)* by closure saturation from generator sets.
std::vector<Subgroup> all_subgroups(i64 m) {
    const auto units = unit_group_values(m);
    std::set<std::vector<i64>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> frontier{trivial_subgroup(m)};
    seen.insert(frontier.front().elements);
    out.push_back(frontier.front());
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const Subgroup& h : frontier) {
            for (i64 u : units) {
                std::vector<i64> gens = h.elements;
                gens.push_back(u);
                Subgroup extended = subgroup_generated(Modulus(m), gens);
                if (seen.insert(extended.elements).second) {
                    out.push_back(extended);
                    next.push_back(std::move(extended));
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("conductor by divisor scan", "[extension]") {
    CHECK(conductor(AbelianExtensionSpec(8, full_unit_subgroup(8))) == 1);  // L = Q at level 8
    CHECK(conductor(AbelianExtensionSpec::from_kernel_values(8, {1, 7})) == 8);   // Q(sqrt 2)
    CHECK(conductor(AbelianExtensionSpec::from_kernel_values(12, {1, 5})) == 4);
    CHECK(conductor(AbelianExtensionSpec::rationals()) == 1);
    CHECK(conductor(AbelianExtensionSpec::cyclotomic(12)) == 12);
    CHECK(conductor(AbelianExtensionSpec::cyclotomic(6)) == 3);  // Q(zeta_6) = Q(zeta_3)
}

TEST_CASE("conductor exponents against classical oracles", "[extension]") {
    SECTION("quadratic fields: the conductor is the discriminant") {
        // the Kronecker character of a fundamental discriminant is primitive,
        // so the construction modulus |disc| is already the conductor
        for (i64 d : {2, 3, 5, 6, 7, 10, 11, 13, 15, -1, -2, -3, -5, -6, -7, -10, -11, -13}) {
            const auto ext = AbelianExtensionSpec::quadratic(d);
            CAPTURE(d);
            CHECK(conductor(ext) == ext.modulus());
        }
    }
    SECTION("cyclotomic fields: m, except m/2 when m = 2 mod 4") {
        for (i64 m = 1; m <= 60; ++m) {
            const i64 expected = (m > 2 && m % 4 == 2) ? m / 2 : (m <= 2 ? 1 : m);
            CAPTURE(m);
            CHECK(conductor(AbelianExtensionSpec::cyclotomic(m)) == expected);
        }
    }
}

TEST_CASE("conductor is a fixed point after re-expression", "[extension]") {
    for (i64 m : {8, 12, 15, 24, 40}) {
        for (const Subgroup& w : all_subgroups(m)) {
            const AbelianExtensionSpec ext(m, w);
            const i64 f = conductor(ext);
            CHECK(m % f == 0);
            // re-express at the conductor: kernel = image of W in (Z/fZ)*
            std::set<i64> reduced;
            for (i64 u : w.elements) reduced.insert(u % f);
            const AbelianExtensionSpec at_conductor =
                AbelianExtensionSpec::from_kernel_values(f, {reduced.begin(), reduced.end()});
            CHECK(conductor(at_conductor) == f);
            CHECK(at_conductor.degree() == ext.degree());
        }
    }
}

TEST_CASE("chi values", "[extension]") {
    const auto qi = AbelianExtensionSpec::from_kernel_values(4, {1});  // Q(i)
    CHECK(chi(qi, 1) == qi.galois_group().identity());
    CHECK(chi(qi, 3) != qi.galois_group().identity());
    const auto sqrt2 = AbelianExtensionSpec::from_kernel_values(8, {1, 7});
    CHECK(chi(sqrt2, 7) == sqrt2.galois_group().identity());
    CHECK_THROWS_AS(chi(qi, 2), DomainError);
}

TEST_CASE("chi of residues at other moduli", "[extension]") {
    // Q(i) presented at level 12: kernel lifts to {1, 5}, conductor stays 4
    const auto at12 = lift_to_modulus(AbelianExtensionSpec::from_kernel_values(4, {1}), 12);
    REQUIRE(conductor(at12) == 4);
    SECTION("a residue at the conductor determines the class") {
        CHECK(chi(at12, unit_residue(4, 3)) == chi(at12, 7));  // 7 = 3 mod 4
        CHECK(chi(at12, unit_residue(4, 1)) == at12.galois_group().identity());
    }
    SECTION("residues at multiples of the defining modulus reduce directly") {
        CHECK(chi(at12, unit_residue(24, 7)) == chi(at12, 7));
    }
    SECTION("moduli not divisible by the conductor are rejected") {
        const auto sqrt2 = AbelianExtensionSpec::from_kernel_values(8, {1, 7});
        CHECK_THROWS_AS(chi(sqrt2, unit_residue(4, 3)), DomainError);
    }
}

TEST_CASE("chi is surjective onto G", "[extension]") {
    for (i64 m : {8, 12, 15, 21}) {
        for (const Subgroup& w : all_subgroups(m)) {
            const AbelianExtensionSpec ext(m, w);
            std::set<i64> image;
            for (i64 u : unit_group_values(m)) image.insert(chi(ext, u));
            CHECK(image.size() == ext.galois_group().size());
        }
    }
}

TEST_CASE("lifting to a common modulus", "[extension]") {
    SECTION("identical moduli are unchanged") {
        const auto e = AbelianExtensionSpec::from_kernel_values(4, {1});
        const auto [a, b] = lift_to_common_modulus(e, e);
        CHECK(a == e);
        CHECK(b == e);
    }
    SECTION("kernels lift to preimages") {
        const auto e1 = AbelianExtensionSpec::cyclotomic(3);
        const auto e2 = AbelianExtensionSpec::cyclotomic(4);
        const auto [a, b] = lift_to_common_modulus(e1, e2);
        CHECK(a.modulus() == 12);
        CHECK(b.modulus() == 12);
        // preimage of {1} under (Z/12)* -> (Z/3)* is the units congruent to 1 mod 3
        CHECK(a.kernel().elements == std::vector<i64>{1, 7});
        CHECK(b.kernel().elements == std::vector<i64>{1, 5});
        CHECK(a.degree() == e1.degree());
        CHECK(b.degree() == e2.degree());
    }
    SECTION("equality as extensions ignores the presentation") {
        const auto small = AbelianExtensionSpec::cyclotomic(3);
        const auto big = lift_to_modulus(small, 12);
        CHECK(same_extension(small, big));
        CHECK_FALSE(same_extension(small, AbelianExtensionSpec::cyclotomic(4)));
    }
}

TEST_CASE("degree multiplicativity in towers", "[extension]") {
    const i64 m = 24;
    const auto subgroups = all_subgroups(m);
    for (const Subgroup& w1 : subgroups) {
        for (const Subgroup& w2 : subgroups) {
            const AbelianExtensionSpec e1(m, w1), e2(m, w2);
            if (!is_subfield(e1, e2)) continue;  // requires W2 <= W1
            CHECK(e2.degree() % e1.degree() == 0);
            const i64 relative = static_cast<i64>(w1.size()) / static_cast<i64>(w2.size());
            CHECK(e2.degree() == relative * e1.degree());
        }
    }
}

TEST_CASE("morphisms require a subfield relation", "[extension]") {
    const auto qi = AbelianExtensionSpec::from_kernel_values(4, {1});
    const auto z8 = AbelianExtensionSpec::cyclotomic(8);
    CHECK_NOTHROW(make_morphism(qi, z8, 3));
    CHECK_THROWS_AS(make_morphism(z8, qi, 1), DomainError);
}

TEST_CASE("composition of morphisms", "[extension]") {
    const auto qi = AbelianExtensionSpec::from_kernel_values(4, {1});
    const auto z8 = AbelianExtensionSpec::cyclotomic(8);
    SECTION("identity composes trivially") {
        const auto id = identity_morphism(qi);
        const auto comp = compose_morphisms(id, id);
        CHECK(comp.twist == qi.galois_group().identity());
    }
    SECTION("composition with the identity keeps the twist") {
        const auto s1 = make_morphism(qi, z8, 3);  // twist = complex conjugation in Gal(Q(i)/Q)
        const auto s2 = identity_morphism(z8);
        CHECK(compose_morphisms(s1, s2).twist == 3);
    }
    SECTION("mismatched endpoints are rejected") {
        const auto s1 = make_morphism(qi, z8, 1);
        const auto s2 = make_morphism(qi, z8, 1);
        CHECK_THROWS_AS(compose_morphisms(s1, s2), DomainError);
    }
}

TEST_CASE("induced cover maps", "[extension]") {
    SECTION("identity morphism induces the identity map") {
        const auto z12 = AbelianExtensionSpec::cyclotomic(12);
        const auto rho = induced_cover_map(identity_morphism(z12));
        for (i64 g : z12.galois_group().coset_representatives()) CHECK(rho.at(g) == g);
    }
    SECTION("inclusion Q(i) in Q(zeta_12) restricts by reduction mod 4") {
        const auto qi = AbelianExtensionSpec::from_kernel_values(4, {1});
        const auto z12 = AbelianExtensionSpec::cyclotomic(12);
        const auto rho = induced_cover_map(make_morphism(qi, z12, 1));
        for (i64 g : z12.galois_group().coset_representatives()) {
            CHECK(rho.at(g) == qi.galois_group().canon(g % 4));
        }
    }
}

TEST_CASE("equivariance of induced maps over subfields of Q(zeta_24)", "[extension]") {
    const i64 m = 24;
    const auto subgroups = all_subgroups(m);
    for (const Subgroup& w1 : subgroups) {
        for (const Subgroup& w2 : subgroups) {
            if (!std::includes(w1.elements.begin(), w1.elements.end(), w2.elements.begin(),
                               w2.elements.end()))
                continue;
            const AbelianExtensionSpec e1(m, w1), e2(m, w2);
            for (i64 twist : e1.galois_group().coset_representatives()) {
                const auto rho = induced_cover_map(make_morphism(e1, e2, twist));
                for (i64 w : unit_group_values(m)) {
                    for (i64 g : e2.galois_group().coset_representatives()) {
                        // chi1(w) rho(g) = rho(chi2(w) g)
                        const i64 lhs = e1.galois_group().mul(chi(e1, w), rho.at(g));
                        const i64 rhs = rho.at(e2.galois_group().mul(chi(e2, w), g));
                        REQUIRE(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("associativity of composition among subfields of Q(zeta_24)", "[extension]") {
    const i64 m = 24;
    const auto subgroups = all_subgroups(m);
    // W3 <= W2 <= W1 gives a tower L1 <= L2 <= L3
    for (const Subgroup& w1 : subgroups) {
        for (const Subgroup& w2 : subgroups) {
            if (!std::includes(w1.elements.begin(), w1.elements.end(), w2.elements.begin(),
                               w2.elements.end()))
                continue;
            for (const Subgroup& w3 : subgroups) {
                if (!std::includes(w2.elements.begin(), w2.elements.end(), w3.elements.begin(),
                                   w3.elements.end()))
                    continue;
                const AbelianExtensionSpec e1(m, w1), e2(m, w2), e3(m, w3);
                const auto s1 = make_morphism(e1, e2, e1.galois_group().coset_representatives().back());
                const auto s2 = make_morphism(e2, e3, e2.galois_group().coset_representatives().back());
                const auto s12 = compose_morphisms(s1, s2);
                CHECK(s12.source == e1);
                CHECK(s12.target == e3);
            }
        }
    }
}

TEST_CASE("shorthand parsing and serialization", "[extension]") {
    const auto qi = parse_extension("quadratic:-1");
    CHECK(qi.modulus() == 4);
    CHECK(qi.kernel().elements == std::vector<i64>{1});
    const auto sqrt2 = parse_extension("quadratic:2");
    CHECK(sqrt2.modulus() == 8);
    CHECK(sqrt2.kernel().elements == std::vector<i64>{1, 7});
    const auto sqrt5 = parse_extension("quadratic:5");
    CHECK(sqrt5.modulus() == 5);
    CHECK(sqrt5.kernel().elements == std::vector<i64>{1, 4});
    const auto sqrt12 = parse_extension("quadratic:12");  // same field as quadratic:3
    CHECK(same_extension(sqrt12, parse_extension("quadratic:3")));
    const auto z12 = parse_extension("cyclotomic:12");
    CHECK(z12.modulus() == 12);
    CHECK(z12.degree() == 4);
    CHECK_THROWS_AS(parse_extension("quadratic:9"), DomainError);
    CHECK_THROWS_AS(parse_extension("nonsense"), DomainError);

    const json j = extension_to_json(sqrt2);
    const auto round = parse_extension(j.dump());
    CHECK(round == sqrt2);
}
