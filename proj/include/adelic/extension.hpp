#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"
#include "adelic/residue.hpp"

namespace adelic {

// A finite abelian extension L/Q in kernel-subgroup normal form: a defining
// modulus m (not necessarily the conductor) together with the kernel subgroup
// W of the character map chi: (Z/mZ)* -> G = Gal(L/Q). Everything downstream
// (ramification, Frobenius, covers) is computed from this data.
class AbelianExtensionSpec {
public:
    AbelianExtensionSpec(i64 modulus, Subgroup kernel)
        : modulus_(modulus), kernel_(std::move(kernel)), galois_(modulus, kernel_) {
        if (kernel_.modulus != modulus_) fail("IncompatibleModulus", "kernel at a different modulus");
    }

    static AbelianExtensionSpec from_kernel_values(i64 modulus, std::vector<i64> kernel_values) {
        return AbelianExtensionSpec(modulus, subgroup_from_elements(modulus, std::move(kernel_values)));
    }

    static AbelianExtensionSpec rationals() {
        return AbelianExtensionSpec(1, trivial_subgroup(1));
    }

    static AbelianExtensionSpec cyclotomic(i64 m) {
        if (m < 1) fail("InvalidExtensionSpec", "cyclotomic level must be >= 1");
        return AbelianExtensionSpec(m, trivial_subgroup(m));
    }

    // Q(sqrt(d)) for a non-square d != 0, via the kernel of the quadratic
    // character attached to the field discriminant.
    static AbelianExtensionSpec quadratic(i64 d) {
        if (d == 0) fail("InvalidExtensionSpec", "quadratic field requires d != 0");
        i64 core = d < 0 ? -1 : 1;
        for (const auto& [p, e] : factorize(d))
            if (e % 2 == 1) core *= p;
        if (core == 1) fail("InvalidExtensionSpec", "d = " + std::to_string(d) + " is a perfect square");
        const i64 disc = (((core % 4) + 4) % 4 == 1) ? core : 4 * core;
        const i64 m = disc < 0 ? -disc : disc;
        std::vector<i64> kernel;
        for (i64 u : unit_group_values(m))
            if (kronecker(disc, u) == 1) kernel.push_back(u);
        return from_kernel_values(m, std::move(kernel));
    }

    i64 modulus() const { return modulus_; }
    const Subgroup& kernel() const { return kernel_; }
    const QuotientGroup& galois_group() const { return galois_; }
    i64 degree() const { return static_cast<i64>(galois_.size()); }

    friend bool operator==(const AbelianExtensionSpec& a, const AbelianExtensionSpec& b) {
        return a.modulus_ == b.modulus_ && a.kernel_ == b.kernel_;
    }

private:
    i64 modulus_;
    Subgroup kernel_;
    QuotientGroup galois_;
};

// chi(n) for an integer n coprime to the defining modulus: the canonical
// coset representative of n in G.
inline i64 chi(const AbelianExtensionSpec& ext, i64 n) {
    n %= ext.modulus();
    if (n < 0) n += ext.modulus();
    if (ext.modulus() > 1 && std::gcd(n, ext.modulus()) != 1) {
        fail("NotAUnit", std::to_string(n) + " is not a unit mod " + std::to_string(ext.modulus()));
    }
    return ext.galois_group().canon(n);
}

// Smallest divisor d of m such that chi factors through (Z/dZ)*, i.e. the
// kernel contains every unit congruent to 1 mod d. This is the conductor of
// the extension.
inline i64 conductor(const AbelianExtensionSpec& ext) {
    const i64 m = ext.modulus();
    std::vector<i64> divisors;
    for (i64 d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            divisors.push_back(d);
            if (d != m / d) divisors.push_back(m / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    for (i64 d : divisors) {
        bool factors = true;
        for (i64 u : unit_group_values(m)) {
            if (u % d == identity_value(d) && !ext.kernel().contains(u)) {
                factors = false;
                break;
            }
        }
        if (factors) return d;
    }
    return m;  // unreachable: d = m always factors
}

// chi applied to a residue living at another modulus. Well-defined whenever
// the residue's modulus is divisible by the conductor; the value is computed
// through an integer lift coprime to the defining modulus.
inline i64 chi(const AbelianExtensionSpec& ext, const UnitResidue& u) {
    const i64 m = ext.modulus();
    if (u.modulus % m == 0) return chi(ext, u.value % m);
    const i64 f = conductor(ext);
    if (u.modulus % f != 0) {
        fail("IncompatibleModulus", "residue modulus " + std::to_string(u.modulus) +
                                        " is not divisible by the conductor " + std::to_string(f));
    }
    for (i64 n = u.value % u.modulus;; n += u.modulus) {
        if (n == 0) continue;
        if (std::gcd(n % m, m) == 1) return chi(ext, n % m);
        if (n > u.modulus + checked_mul(m, u.modulus)) break;
    }
    fail("NotAUnit", "no lift of the residue is coprime to the modulus");
}

// Re-express an extension at a modulus M divisible by its own: the kernel
// lifts to its preimage under the unit-group reduction (Z/MZ)* -> (Z/mZ)*.
inline AbelianExtensionSpec lift_to_modulus(const AbelianExtensionSpec& ext, i64 M) {
    if (M % ext.modulus() != 0) fail("IncompatibleModulus", "target modulus is not a multiple");
    if (M == ext.modulus()) return ext;
    std::vector<i64> kernel;
    for (i64 u : unit_group_values(M))
        if (ext.kernel().contains(u % ext.modulus())) kernel.push_back(u);
    return AbelianExtensionSpec::from_kernel_values(M, std::move(kernel));
}

inline std::pair<AbelianExtensionSpec, AbelianExtensionSpec> lift_to_common_modulus(
    const AbelianExtensionSpec& e1, const AbelianExtensionSpec& e2) {
    const i64 M = checked_lcm(e1.modulus(), e2.modulus());
    return {lift_to_modulus(e1, M), lift_to_modulus(e2, M)};
}

// Equality as extensions of Q (not as presentations).
inline bool same_extension(const AbelianExtensionSpec& e1, const AbelianExtensionSpec& e2) {
    const auto [a, b] = lift_to_common_modulus(e1, e2);
    return a.kernel() == b.kernel();
}

// L1 is a subfield of L2 iff W2 is contained in W1 at a common modulus.
inline bool is_subfield(const AbelianExtensionSpec& e1, const AbelianExtensionSpec& e2) {
    const auto [a, b] = lift_to_common_modulus(e1, e2);
    return std::includes(a.kernel().elements.begin(), a.kernel().elements.end(),
                         b.kernel().elements.begin(), b.kernel().elements.end());
}

// A morphism sigma: L1 -> L2 of extensions, decomposed as the canonical
// inclusion followed by a Galois automorphism: sigma = iota . k with k in G1.
// The Galois restriction G2 -> G1 is tabulated on construction.
struct ExtensionMorphism {
    AbelianExtensionSpec source;  // L1
    AbelianExtensionSpec target;  // L2
    i64 twist;                    // k, a coset representative in G1
    std::map<i64, i64> restriction;  // G2 representative -> G1 representative
};

inline ExtensionMorphism make_morphism(const AbelianExtensionSpec& source,
                                       const AbelianExtensionSpec& target, i64 twist) {
    if (!is_subfield(source, target)) {
        fail("NotASubfield", "morphism requires the source to embed into the target");
    }
    const i64 k = source.galois_group().canon(twist);
    // Tabulate the restriction r: G2 -> G1 through units at the lcm modulus;
    // consistency of the table is exactly W2 <= W1.
    const i64 M = checked_lcm(source.modulus(), target.modulus());
    std::map<i64, i64> restriction;
    for (i64 u : unit_group_values(M)) {
        const i64 g2 = target.galois_group().canon(u % target.modulus());
        const i64 g1 = source.galois_group().canon(u % source.modulus());
        const auto [it, inserted] = restriction.emplace(g2, g1);
        if (!inserted && it->second != g1) {
            fail("NotASubfield", "Galois restriction is not well-defined");
        }
    }
    return ExtensionMorphism{source, target, k, std::move(restriction)};
}

inline ExtensionMorphism identity_morphism(const AbelianExtensionSpec& ext) {
    return make_morphism(ext, ext, ext.galois_group().identity());
}

// (s2 . s1): L1 -> L3 for s1: L1 -> L2 and s2: L2 -> L3; the twist composes
// as r(k') * k through the restriction r: G2 -> G1.
inline ExtensionMorphism compose_morphisms(const ExtensionMorphism& s1, const ExtensionMorphism& s2) {
    if (!(s1.target == s2.source)) {
        fail("CompositionMismatch", "target of the first morphism differs from source of the second");
    }
    const i64 restricted = s1.restriction.at(s2.twist);
    const i64 twist = s1.source.galois_group().mul(restricted, s1.twist);
    return make_morphism(s1.source, s2.target, twist);
}

// The induced map on cover fibers rho_sigma: G2 -> G1, g -> r(g) * k. It
// intertwines the two characters: chi1(w) rho(g) = rho(chi2(w) g).
inline std::map<i64, i64> induced_cover_map(const ExtensionMorphism& s) {
    std::map<i64, i64> rho;
    for (const auto& [g2, g1] : s.restriction) {
        rho[g2] = s.source.galois_group().mul(g1, s.twist);
    }
    return rho;
}

}  // namespace adelic
