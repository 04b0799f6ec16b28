#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "adelic/cover.hpp"
#include "adelic/error.hpp"
#include "adelic/extension.hpp"
#include "adelic/numeric.hpp"
#include "adelic/places.hpp"
#include "adelic/profinite.hpp"
#include "adelic/rational.hpp"

namespace adelic {

// Exact model of the semilocal adele ring over a finite place set S (always
// containing the archimedean place): per-place components stored as
// valuation + unit at a shared finite precision, and an exact rational at
// infinity. The quotient by Gamma_S is never materialized; only canonical
// forms and equivalence data are computed.

inline constexpr int kDefaultPrecision = 8;

struct PlaceSet {
    std::vector<i64> finite_primes;  // sorted, distinct; infinity is always implicitly a member

    static PlaceSet of(std::vector<i64> primes) {
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        for (i64 p : primes)
            if (!is_prime(p)) fail("InvalidPlaceSet", std::to_string(p) + " is not prime");
        return PlaceSet{std::move(primes)};
    }

    bool contains(i64 p) const {
        return std::binary_search(finite_primes.begin(), finite_primes.end(), p);
    }

    std::vector<Place> places() const {
        std::vector<Place> out;
        for (i64 p : finite_primes) out.push_back(Place::finite(p));
        out.push_back(Place::infinite());
        return out;
    }

    friend bool operator==(const PlaceSet&, const PlaceSet&) = default;
};

struct FiniteComponent {
    bool zero = true;
    i64 valuation = 0;  // meaningful when nonzero
    i64 unit = 1;       // residue mod p^k, coprime to p

    friend bool operator==(const FiniteComponent&, const FiniteComponent&) = default;
};

struct SemilocalAdele {
    PlaceSet places;
    int precision = kDefaultPrecision;          // shared k for all finite places
    std::map<i64, FiniteComponent> finite;      // keyed by the primes of S
    Rational archimedean = Rational(0);

    friend bool operator==(const SemilocalAdele&, const SemilocalAdele&) = default;
};

// Decompose each rational value as unit * p^valuation at its place.
inline SemilocalAdele from_rationals(const PlaceSet& S, const std::map<i64, Rational>& finite_values,
                                     const Rational& infinite_value, int precision = kDefaultPrecision) {
    if (precision < 1) fail("InvalidPrecision", "precision must be >= 1");
    SemilocalAdele a;
    a.places = S;
    a.precision = precision;
    a.archimedean = infinite_value;
    if (finite_values.size() != S.finite_primes.size()) {
        fail("PlaceMismatch", "values must be keyed exactly by the places of S");
    }
    for (i64 p : S.finite_primes) {
        const auto it = finite_values.find(p);
        if (it == finite_values.end()) fail("PlaceMismatch", "missing value at " + std::to_string(p));
        const Rational& x = it->second;
        FiniteComponent c;
        if (!x.is_zero()) {
            c.zero = false;
            c.valuation = padic_valuation(x, p);
            const i64 mod = checked_pow(p, precision);
            // unit part of x: strip p^valuation, reduce mod p^k
            i64 num = x.num();
            i64 den = x.den();
            while (num % p == 0) num /= p;
            while (den % p == 0) den /= p;
            c.unit = mulmod(((num % mod) + mod) % mod, modinv(den % mod, mod), mod);
        }
        a.finite[p] = c;
    }
    return a;
}

// Canonical representative mod the S-unit compact group: strips units, keeps
// valuations and the archimedean component. Idempotent.
inline SemilocalAdele section_rho(const SemilocalAdele& a) {
    SemilocalAdele out = a;
    for (auto& [p, c] : out.finite) {
        if (!c.zero) c.unit = 1;
    }
    return out;
}

// Exact rational values of rho(a): p^valuation per finite place.
inline std::map<i64, Rational> rho_values(const SemilocalAdele& a) {
    std::map<i64, Rational> out;
    for (const auto& [p, c] : a.finite) {
        if (c.zero) {
            out[p] = Rational(0);
        } else if (c.valuation >= 0) {
            out[p] = Rational(checked_pow(p, c.valuation));
        } else {
            out[p] = Rational(1, checked_pow(p, -c.valuation));
        }
    }
    return out;
}

struct Strata {
    std::vector<Place> zero_places;  // Z(x)
    int nu = 0;                      // #Z(x)
};

inline Strata strata(const SemilocalAdele& a) {
    Strata s;
    for (const auto& [p, c] : a.finite)
        if (c.zero) s.zero_places.push_back(Place::finite(p));
    if (a.archimedean.is_zero()) s.zero_places.push_back(Place::infinite());
    s.nu = static_cast<int>(s.zero_places.size());
    return s;
}

// The orbit of the class of a under the semilocal idele class group action is
// labeled exactly by its zero set.
inline std::vector<Place> orbit_label(const SemilocalAdele& a) {
    return strata(a).zero_places;
}

// Zero set of an adele as a strata point of the cover machinery; this is the
// construction that makes Z(x) representative independent.
inline StrataPoint strata_point(const SemilocalAdele& a) {
    return StrataPoint{strata(a).zero_places};
}

// An element of Gamma_S: a sign times a product of powers of primes in S.
struct GammaSElement {
    int sign = 1;                 // +1 or -1
    std::map<i64, i64> exponents; // prime in S -> integer exponent

    Rational value() const {
        Rational v(sign);
        for (const auto& [p, e] : exponents) {
            if (e >= 0) {
                v *= Rational(checked_pow(p, e));
            } else {
                v *= Rational(1, checked_pow(p, -e));
            }
        }
        return v;
    }

    GammaSElement inverse() const {
        GammaSElement g;
        g.sign = sign;
        for (const auto& [p, e] : exponents) g.exponents[p] = -e;
        return g;
    }
};

// Componentwise multiplication by the rational value of g. Valuations shift,
// units multiply by the prime-to-p part of g, the archimedean component
// scales exactly. Zero components stay zero, so Z(x) is preserved.
inline SemilocalAdele act_gamma(const GammaSElement& g, const SemilocalAdele& a) {
    if (g.sign != 1 && g.sign != -1) fail("InvalidArgument", "sign must be +1 or -1");
    for (const auto& [p, e] : g.exponents) {
        if (!a.places.contains(p)) {
            fail("PlaceMismatch", "exponent at " + std::to_string(p) + " outside the place set");
        }
    }
    SemilocalAdele out = a;
    for (auto& [p, c] : out.finite) {
        if (c.zero) continue;
        const auto it = g.exponents.find(p);
        const i64 shift = it == g.exponents.end() ? 0 : it->second;
        c.valuation += shift;
        const i64 mod = checked_pow(p, a.precision);
        i64 unit_factor = g.sign == 1 ? 1 : mod - 1;
        for (const auto& [q, e] : g.exponents) {
            if (q == p) continue;
            const i64 base = e >= 0 ? q % mod : modinv(q % mod, mod);
            unit_factor = mulmod(unit_factor, powmod(base, e >= 0 ? e : -e, mod), mod);
        }
        c.unit = mulmod(c.unit, unit_factor, mod);
    }
    out.archimedean = a.archimedean * g.value();
    return out;
}

// Gamma_S-reduction of a point on the orbit over C_p: divide out the
// prime-to-p content and the sign, leaving units at every q != p, then push
// the archimedean scale into the fundamental domain [1, p). The pair
// (group coordinate, scale) is a complete orbit invariant at the stored
// precision.
inline MappingTorusPoint reduce_orbit_Cp(const SemilocalAdele& a, i64 p) {
    if (!a.places.contains(p)) fail("NotOnOrbitCp", std::to_string(p) + " is not a place of S");
    const std::vector<Place> label = orbit_label(a);
    if (label.size() != 1 || label[0] != Place::finite(p)) {
        fail("NotOnOrbitCp", "the adele must vanish exactly at " + std::to_string(p));
    }
    GammaSElement strip;
    strip.sign = a.archimedean.sign() < 0 ? -1 : 1;
    for (const auto& [q, c] : a.finite) {
        if (q != p && !c.zero && c.valuation != 0) strip.exponents[q] = c.valuation;
    }
    const SemilocalAdele reduced = act_gamma(strip.inverse(), a);

    std::vector<i64> others;
    for (i64 q : a.places.finite_primes)
        if (q != p) others.push_back(q);
    const PrecisionProfile profile = PrecisionProfile::uniform(others, a.precision);
    std::map<i64, i64> residues;
    for (i64 q : others) residues[q] = reduced.finite.at(q).unit;
    const TruncatedProfiniteUnit h(profile, std::move(residues));
    return reduce_to_fundamental_domain(p, h, reduced.archimedean);
}

// Surjectivity of chi restricted to integers coprime to S and to the ramified
// set: the fiber over the archimedean stratum point collapses to one element,
// which is why every unramification set must contain the archimedean place.
inline bool collapsed_archimedean_fiber_check(const AbelianExtensionSpec& ext,
                                              const std::vector<i64>& finite_S) {
    i64 avoid = ext.modulus();
    for (i64 s : finite_S) {
        if (!is_prime(s)) fail("InvalidPlaceSet", std::to_string(s) + " is not prime");
        if (avoid % s != 0) avoid = checked_mul(avoid, s);
    }
    std::set<i64> image;
    const size_t needed = ext.galois_group().size();
    for (i64 n = 1; n <= avoid; ++n) {
        if (std::gcd(n, avoid) != 1) continue;
        image.insert(chi(ext, n % ext.modulus()));
        if (image.size() == needed) return true;
    }
    return image.size() == needed;
}

}  // namespace adelic
