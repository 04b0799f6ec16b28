#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/extension.hpp"
#include "adelic/numeric.hpp"
#include "adelic/places.hpp"
#include "adelic/rational.hpp"

namespace adelic {

// Geometric data of the finite cover attached to an extension: which primes
// ramify, the Frobenius monodromy of the periodic orbit C_p, the fiber
// decomposition into covering circles, and fiber stabilizers over strata
// points.

struct RamificationReport {
    std::vector<i64> ramified_finite_primes;          // C(chi), ascending
    bool archimedean_always_ramified = true;          // the place at infinity is always in the minimal set
    std::vector<Place> smallest_unramified_outside_set;  // C(chi) together with infinity
};

// Image of Z_p* in (Z/mZ)*: the units congruent to 1 modulo the prime-to-p
// part of m. chi is nontrivial on it exactly when p ramifies.
inline std::vector<i64> local_unit_image(const AbelianExtensionSpec& ext, i64 p) {
    const i64 m = ext.modulus();
    i64 rest = m;
    while (rest % p == 0) rest /= p;
    std::vector<i64> out;
    for (i64 u : unit_group_values(m))
        if (u % rest == identity_value(rest)) out.push_back(u);
    return out;
}

// C(chi) = { p | m : chi(Z_p*) != {1} }.
inline RamificationReport ramification_set(const AbelianExtensionSpec& ext) {
    RamificationReport report;
    const i64 id = ext.galois_group().identity();
    for (i64 p : prime_factors(ext.modulus())) {
        for (i64 u : local_unit_image(ext, p)) {
            if (ext.galois_group().canon(u) != id) {
                report.ramified_finite_primes.push_back(p);
                break;
            }
        }
    }
    for (i64 p : report.ramified_finite_primes)
        report.smallest_unramified_outside_set.push_back(Place::finite(p));
    report.smallest_unramified_outside_set.push_back(Place::infinite());
    return report;
}

inline bool is_ramified(const AbelianExtensionSpec& ext, i64 p) {
    const auto ramified = ramification_set(ext).ramified_finite_primes;
    return std::binary_search(ramified.begin(), ramified.end(), p);
}

// Frob_p for an unramified prime p: chi evaluated at p through the conductor.
inline i64 frobenius(const AbelianExtensionSpec& ext, i64 p) {
    if (!is_prime(p)) fail("InvalidPlace", std::to_string(p) + " is not prime");
    const i64 f = conductor(ext);
    if (f % p == 0) {
        fail("RamifiedPrime", "Frobenius is undefined at the ramified prime " + std::to_string(p));
    }
    return chi(ext, unit_residue(f, p % f));
}

struct CoverFiberReport {
    i64 prime = 0;
    i64 monodromy = 0;        // Frob_p as a coset representative in G
    i64 residue_degree = 0;   // ord(Frob_p); circle length is residue_degree * log p
    i64 component_count = 0;  // |G| / residue_degree
    std::vector<std::vector<i64>> component_labels;  // cosets of <Frob_p> in G

    double circle_length() const {
        return static_cast<double>(residue_degree) * std::log(static_cast<double>(prime));
    }
};

// Fiber decomposition over the periodic orbit C_p: a disjoint union of
// circles, one per coset of <Frob_p>, each of length ord(Frob_p) * log p.
inline CoverFiberReport cover_fiber_over_Cp(const AbelianExtensionSpec& ext, i64 p) {
    CoverFiberReport report;
    report.prime = p;
    report.monodromy = frobenius(ext, p);
    report.residue_degree = ext.galois_group().order_of(report.monodromy);
    report.component_count = ext.degree() / report.residue_degree;
    report.component_labels = ext.galois_group().cosets_of_cyclic(report.monodromy);
    return report;
}

// Fiber over the archimedean point: the coset space G / <chi(-1)>. Size |G|
// when L is totally real, |G|/2 otherwise; its elements are the archimedean
// places of L.
inline std::vector<std::vector<i64>> archimedean_fiber(const AbelianExtensionSpec& ext) {
    const i64 complex_conjugation = chi(ext, ext.modulus() - 1);
    return ext.galois_group().cosets_of_cyclic(complex_conjugation);
}

struct StrataPoint {
    std::vector<Place> zero_places;  // Z(x), sorted
};

// Stabilizer of any fiber point over x: chi(H) for H the product of the
// local unit groups at the places of Z(x). Requires infinity not in Z(x).
inline std::vector<i64> fiber_stabilizer(const AbelianExtensionSpec& ext, const StrataPoint& x) {
    const i64 m = ext.modulus();
    i64 z_part = 1;
    for (const Place& v : x.zero_places) {
        if (!v.is_finite()) {
            fail("ArchimedeanZeroUnsupported",
                 "the stabilizer is only defined when the archimedean component is nonzero");
        }
        const i64 p = v.prime();
        while ((m / z_part) % p == 0) z_part *= p;
    }
    const i64 rest = m / z_part;
    std::set<i64> image;
    for (i64 u : unit_group_values(m))
        if (u % rest == identity_value(rest)) image.insert(ext.galois_group().canon(u));
    return std::vector<i64>(image.begin(), image.end());
}

// True iff the cover is unramified outside S; S must contain infinity.
inline bool is_unramified_outside(const AbelianExtensionSpec& ext, const std::vector<Place>& S) {
    if (std::find(S.begin(), S.end(), Place::infinite()) == S.end()) {
        fail("MissingArchimedeanPlace", "an unramification set must contain the archimedean place");
    }
    for (i64 p : ramification_set(ext).ramified_finite_primes) {
        if (std::find(S.begin(), S.end(), Place::finite(p)) == S.end()) return false;
    }
    return true;
}

struct DensityScan {
    std::map<i64, i64> counts;  // G representative -> number of primes
    i64 total = 0;              // unramified primes tallied
    i64 nontrivial = 0;         // primes with chi(p) != 1

    Rational nontrivial_fraction() const {
        if (total == 0) return Rational(0);
        return Rational(nontrivial, total);
    }
};

// Tallies Frob_p over the unramified primes p <= bound. Equidistribution over
// G is the Dirichlet density statement checked by the acceptance suite.
inline DensityScan density_scan(const AbelianExtensionSpec& ext, i64 bound) {
    if (bound < 2) fail("InvalidBound", "density scan requires a bound >= 2");
    const i64 f = conductor(ext);
    // Frobenius class per residue mod the conductor, found through a lift
    // coprime to the defining modulus.
    std::map<i64, i64> class_of_residue;
    for (i64 r : unit_group_values(f)) {
        class_of_residue[r] = chi(ext, unit_residue(f, r));
    }
    DensityScan scan;
    const i64 id = ext.galois_group().identity();
    for (i64 rep : ext.galois_group().coset_representatives()) scan.counts[rep] = 0;
    for (i64 p : primes_upto(bound)) {
        if (f % p == 0 && f > 1) continue;  // ramified
        const i64 g = class_of_residue.at(f == 1 ? 0 : p % f);
        ++scan.counts[g];
        ++scan.total;
        if (g != id) ++scan.nontrivial;
    }
    return scan;
}

}  // namespace adelic
