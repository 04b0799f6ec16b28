#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"
#include "adelic/rational.hpp"

namespace adelic {

// Finite-precision arithmetic in products of local unit groups Z_q*, and the
// mapping-torus coordinates of points lying over a periodic orbit. An element
// is stored per supported prime q as a residue mod q^k; primes outside the
// support are ignored (precision 0).

class PrecisionProfile {
public:
    PrecisionProfile() = default;

    explicit PrecisionProfile(std::map<i64, int> entries) : entries_(std::move(entries)) {
        for (const auto& [q, k] : entries_) {
            if (!is_prime(q)) fail("InvalidPrecision", std::to_string(q) + " is not prime");
            if (k < 1) fail("InvalidPrecision", "precision exponents must be >= 1");
            checked_pow(q, k);  // reject unrepresentable moduli up front
        }
    }

    PrecisionProfile(std::initializer_list<std::pair<const i64, int>> entries)
        : PrecisionProfile(std::map<i64, int>(entries)) {}

    static PrecisionProfile uniform(const std::vector<i64>& primes, int k) {
        std::map<i64, int> entries;
        for (i64 q : primes) entries[q] = k;
        return PrecisionProfile(std::move(entries));
    }

    const std::map<i64, int>& entries() const { return entries_; }
    bool supports(i64 q) const { return entries_.count(q) > 0; }
    i64 modulus_at(i64 q) const { return checked_pow(q, entries_.at(q)); }

    // this is a coarsening of `other` when every supported prime appears in
    // `other` with at least the same exponent.
    bool coarsens(const PrecisionProfile& other) const {
        for (const auto& [q, k] : entries_) {
            const auto it = other.entries_.find(q);
            if (it == other.entries_.end() || it->second < k) return false;
        }
        return true;
    }

    friend bool operator==(const PrecisionProfile&, const PrecisionProfile&) = default;

private:
    std::map<i64, int> entries_;
};

class TruncatedProfiniteUnit {
public:
    TruncatedProfiniteUnit() = default;

    TruncatedProfiniteUnit(PrecisionProfile profile, std::map<i64, i64> residues)
        : profile_(std::move(profile)), residues_(std::move(residues)) {
        for (const auto& [q, k] : profile_.entries()) {
            const i64 mod = checked_pow(q, k);
            auto it = residues_.find(q);
            if (it == residues_.end()) fail("InvalidResidue", "missing residue at " + std::to_string(q));
            it->second %= mod;
            if (it->second < 0) it->second += mod;
            if (it->second % q == 0) {
                fail("NotAUnit", "residue at " + std::to_string(q) + " is divisible by " + std::to_string(q));
            }
        }
        if (residues_.size() != profile_.entries().size()) {
            fail("InvalidResidue", "residues keyed off the precision profile");
        }
    }

    static TruncatedProfiniteUnit identity(const PrecisionProfile& profile) {
        std::map<i64, i64> residues;
        for (const auto& [q, k] : profile.entries()) residues[q] = 1;
        return TruncatedProfiniteUnit(profile, std::move(residues));
    }

    const PrecisionProfile& profile() const { return profile_; }
    const std::map<i64, i64>& residues() const { return residues_; }
    i64 residue_at(i64 q) const { return residues_.at(q); }

    TruncatedProfiniteUnit mul(const TruncatedProfiniteUnit& other) const {
        require_same_profile(other);
        std::map<i64, i64> out;
        for (const auto& [q, r] : residues_) out[q] = mulmod(r, other.residues_.at(q), profile_.modulus_at(q));
        return TruncatedProfiniteUnit(profile_, std::move(out));
    }

    TruncatedProfiniteUnit inverse() const {
        std::map<i64, i64> out;
        for (const auto& [q, r] : residues_) out[q] = modinv(r, profile_.modulus_at(q));
        return TruncatedProfiniteUnit(profile_, std::move(out));
    }

    TruncatedProfiniteUnit pow(i64 e) const {
        const TruncatedProfiniteUnit base = e < 0 ? inverse() : *this;
        const i64 n = e < 0 ? -e : e;
        std::map<i64, i64> out;
        for (const auto& [q, r] : base.residues_) out[q] = powmod(r, n, profile_.modulus_at(q));
        return TruncatedProfiniteUnit(profile_, std::move(out));
    }

    // Forget precision down to a coarser profile.
    TruncatedProfiniteUnit reduced_to(const PrecisionProfile& coarser) const {
        if (!coarser.coarsens(profile_)) {
            fail("InvalidPrecision", "target profile is not a coarsening");
        }
        std::map<i64, i64> out;
        for (const auto& [q, k] : coarser.entries()) out[q] = residues_.at(q) % coarser.modulus_at(q);
        return TruncatedProfiniteUnit(coarser, std::move(out));
    }

    friend bool operator==(const TruncatedProfiniteUnit&, const TruncatedProfiniteUnit&) = default;

private:
    void require_same_profile(const TruncatedProfiniteUnit& other) const {
        if (!(profile_ == other.profile_)) fail("InvalidPrecision", "profiles differ");
    }

    PrecisionProfile profile_;
    std::map<i64, i64> residues_;  // q -> residue mod q^{k_q}, coprime to q
};

// The element p diagonally embedded in the product of the supported Z_q*.
inline TruncatedProfiniteUnit diagonal_embed(i64 p, const PrecisionProfile& profile) {
    if (!is_prime(p)) fail("InvalidPlace", std::to_string(p) + " is not prime");
    if (profile.supports(p)) {
        fail("SelfLinkingUndefined", "the diagonal of " + std::to_string(p) +
                                         " is only defined away from " + std::to_string(p));
    }
    std::map<i64, i64> residues;
    for (const auto& [q, k] : profile.entries()) residues[q] = p % checked_pow(q, k);
    return TruncatedProfiniteUnit(profile, std::move(residues));
}

// lcm of the per-prime multiplicative orders.
inline i64 multiplicative_order(const TruncatedProfiniteUnit& u) {
    i64 order = 1;
    for (const auto& [q, r] : u.residues()) {
        order = checked_lcm(order, multiplicative_order_mod(r, u.profile().modulus_at(q)));
    }
    return order;
}

struct InjectivityWitness {
    i64 residue = 0;           // p mod q^k
    i64 order = 0;             // multiplicative order of p mod q^k
    bool pairwise_distinct = false;  // p^n distinct for 0 <= n < horizon
    i64 witness_horizon = 0;   // min(bound, order)
};

// Verifies that n -> p^n mod q^k is injective up to the order: the finite
// shadow of the injectivity of Z -> Z_q*. p is usually prime but any base
// prime to q is accepted.
inline InjectivityWitness injectivity_witness(i64 p, i64 q, int k, i64 bound) {
    if (!is_prime(q)) fail("InvalidPlace", std::to_string(q) + " is not prime");
    if (p < 1 || p % q == 0) fail("SelfLinkingUndefined", "linking requires a base prime to q");
    if (k < 1) fail("InvalidPrecision", "precision must be >= 1");
    const i64 mod = checked_pow(q, k);
    InjectivityWitness w;
    w.residue = p % mod;
    w.order = multiplicative_order_mod(p, mod);
    w.witness_horizon = bound < w.order ? bound : w.order;
    std::unordered_set<i64> seen;
    seen.reserve(static_cast<size_t>(std::min<i64>(w.witness_horizon > 0 ? w.witness_horizon : 1, 1 << 20)));
    w.pairwise_distinct = true;
    i64 acc = 1;
    for (i64 n = 0; n < w.witness_horizon; ++n) {
        if (!seen.insert(acc).second) { w.pairwise_distinct = false; break; }
        acc = mulmod(acc, w.residue, mod);
    }
    return w;
}

// A point of the mapping torus over C_p in fundamental-domain form: a group
// coordinate h and a scale t in [1, p). The recorded power of p is the
// exponent stripped from the incoming scale; it depends on the representative
// and is excluded from equality.
struct MappingTorusPoint {
    i64 excluded_prime = 0;
    TruncatedProfiniteUnit h;
    i64 stripped_power = 0;  // n with incoming scale = p^n * t
    Rational scale = Rational(1);  // t in [1, p)

    friend bool operator==(const MappingTorusPoint& a, const MappingTorusPoint& b) {
        return a.excluded_prime == b.excluded_prime && a.h == b.h && a.scale == b.scale;
    }
};

// Unique representative of (h, lambda) modulo the diagonal action of p^Z:
// divide lambda into [1, p) and absorb the power into the group coordinate.
inline MappingTorusPoint reduce_to_fundamental_domain(i64 p, const TruncatedProfiniteUnit& h,
                                                      Rational lambda) {
    if (!is_prime(p)) fail("InvalidPlace", std::to_string(p) + " is not prime");
    if (h.profile().supports(p)) fail("SelfLinkingUndefined", "group coordinate must exclude p");
    if (!(lambda > Rational(0))) fail("InvalidScale", "the scale must be a positive rational");
    i64 n = 0;
    const Rational P(p);
    while (lambda >= P) { lambda /= P; ++n; }
    while (lambda < Rational(1)) { lambda *= P; --n; }
    MappingTorusPoint pt;
    pt.excluded_prime = p;
    pt.h = h.mul(diagonal_embed(p, h.profile()).pow(-n));
    pt.stripped_power = n;
    pt.scale = lambda;
    return pt;
}

// One full loop around the base circle: the group coordinate is multiplied by
// the diagonal of p, the scale is unchanged.
inline MappingTorusPoint monodromy_action(const MappingTorusPoint& pt) {
    MappingTorusPoint out = pt;
    out.h = pt.h.mul(diagonal_embed(pt.excluded_prime, pt.h.profile()));
    return out;
}

}  // namespace adelic
