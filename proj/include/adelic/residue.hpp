#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"

namespace adelic {

// Exact arithmetic in (Z/mZ)* and its quotients. All values are immutable
// after construction and every operation is pure.
//
// Convention for m = 1: the unit group is trivial with the single residue 0,
// which acts as the identity (1 mod 1 = 0).

struct Modulus {
    i64 value;

    explicit Modulus(i64 m) : value(m) {
        if (m < 1) fail("InvalidModulus", "modulus must be >= 1");
    }
};

inline i64 identity_value(i64 m) { return 1 % m; }

struct UnitResidue {
    i64 modulus;
    i64 value;  // in [0, m), coprime to m

    friend bool operator==(const UnitResidue&, const UnitResidue&) = default;
};

inline UnitResidue unit_residue(i64 m, i64 value) {
    if (m < 1) fail("InvalidModulus", "modulus must be >= 1");
    value %= m;
    if (value < 0) value += m;
    if (std::gcd(value, m) != 1) {
        fail("NotAUnit", std::to_string(value) + " is not a unit mod " + std::to_string(m));
    }
    return UnitResidue{m, value};
}

inline UnitResidue unit_mul(const UnitResidue& a, const UnitResidue& b) {
    if (a.modulus != b.modulus) fail("IncompatibleModulus", "unit residues at different moduli");
    if (a.modulus == 1) return a;
    return UnitResidue{a.modulus, mulmod(a.value, b.value, a.modulus)};
}

inline UnitResidue unit_inv(const UnitResidue& a) {
    if (a.modulus == 1) return a;
    return UnitResidue{a.modulus, modinv(a.value, a.modulus)};
}

inline UnitResidue unit_pow(const UnitResidue& a, i64 e) {
    if (a.modulus == 1) return a;
    if (e >= 0) return UnitResidue{a.modulus, powmod(a.value, e, a.modulus)};
    return UnitResidue{a.modulus, powmod(modinv(a.value, a.modulus), -e, a.modulus)};
}

// All residues coprime to m in ascending order; length phi(m).
inline std::vector<i64> unit_group_values(i64 m) {
    if (m < 1) fail("InvalidModulus", "modulus must be >= 1");
    if (m == 1) return {0};
    std::vector<i64> out;
    for (i64 x = 1; x < m; ++x)
        if (std::gcd(x, m) == 1) out.push_back(x);
    return out;
}

inline std::vector<UnitResidue> unit_group(const Modulus& m) {
    std::vector<UnitResidue> out;
    for (i64 v : unit_group_values(m.value)) out.push_back(UnitResidue{m.value, v});
    return out;
}

// Smallest n >= 1 with x^n = 1; divides phi(m).
inline i64 element_order(const UnitResidue& x) {
    if (x.modulus == 1) return 1;
    return multiplicative_order_mod(x.value, x.modulus);
}

// A subgroup of (Z/mZ)*, stored by full element enumeration.
struct Subgroup {
    i64 modulus;
    std::vector<i64> elements;  // sorted ascending, contains the identity

    size_t size() const { return elements.size(); }
    bool contains(i64 value) const {
        return std::binary_search(elements.begin(), elements.end(), value);
    }

    friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

inline bool is_closed_subgroup(i64 m, const std::vector<i64>& elements) {
    if (elements.empty()) return false;
    std::set<i64> set(elements.begin(), elements.end());
    if (set.count(identity_value(m)) == 0) return false;
    for (i64 a : set) {
        if (m > 1 && std::gcd(a, m) != 1) return false;
        for (i64 b : set)
            if (set.count(m == 1 ? 0 : mulmod(a, b, m)) == 0) return false;
    }
    return true;
}

inline Subgroup make_subgroup(i64 m, std::vector<i64> elements, const char* error_code) {
    for (i64& e : elements) {
        e %= m;
        if (e < 0) e += m;
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!is_closed_subgroup(m, elements)) {
        fail(error_code, "element set is not a subgroup of the units mod " + std::to_string(m));
    }
    // Lagrange sanity: |H| divides phi(m)
    if (euler_phi(m) % static_cast<i64>(elements.size()) != 0) {
        fail(error_code, "subgroup order does not divide phi(m)");
    }
    return Subgroup{m, std::move(elements)};
}

inline Subgroup subgroup_from_elements(i64 m, std::vector<i64> elements) {
    return make_subgroup(m, std::move(elements), "NotASubgroup");
}

// Smallest multiplicatively closed subset containing the generators and 1.
inline Subgroup subgroup_generated(const Modulus& m, const std::vector<i64>& generators) {
    for (i64 g : generators) {
        i64 v = g % m.value;
        if (v < 0) v += m.value;
        if (m.value > 1 && std::gcd(v, m.value) != 1) {
            fail("InvalidGenerator",
                 std::to_string(g) + " is not coprime to " + std::to_string(m.value));
        }
    }
    std::set<i64> closure{identity_value(m.value)};
    std::vector<i64> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<i64> next;
        for (i64 x : frontier) {
            for (i64 g : generators) {
                i64 v = g % m.value;
                if (v < 0) v += m.value;
                const i64 y = m.value == 1 ? 0 : mulmod(x, v, m.value);
                if (closure.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return make_subgroup(m.value, std::vector<i64>(closure.begin(), closure.end()), "InvalidGenerator");
}

inline Subgroup trivial_subgroup(i64 m) {
    return Subgroup{m, {identity_value(m)}};
}

inline Subgroup full_unit_subgroup(i64 m) {
    return Subgroup{m, unit_group_values(m)};
}

// G = (Z/mZ)*/kernel with canonical coset representatives (minimal positive
// representative per coset). Group elements are passed around as their
// representative value.
class QuotientGroup {
public:
    QuotientGroup(i64 m, Subgroup kernel) : modulus_(m), kernel_(std::move(kernel)) {
        if (kernel_.modulus != m) fail("IncompatibleModulus", "kernel at a different modulus");
        if (!is_closed_subgroup(m, kernel_.elements)) fail("NotASubgroup", "quotient kernel fails closure");
        const std::vector<i64> units = unit_group_values(m);
        canon_.reserve(units.size());
        for (i64 u : units) {
            if (canon_.count(u)) continue;
            // coset u*kernel; representative = minimal value
            std::vector<i64> coset;
            coset.reserve(kernel_.size());
            for (i64 w : kernel_.elements) coset.push_back(m == 1 ? 0 : mulmod(u, w, m));
            const i64 rep = *std::min_element(coset.begin(), coset.end());
            for (i64 c : coset) canon_[c] = rep;
            reps_.push_back(rep);
        }
        std::sort(reps_.begin(), reps_.end());
        if (reps_.size() * kernel_.size() != units.size()) {
            fail("NotASubgroup", "coset decomposition does not partition the unit group");
        }
    }

    i64 modulus() const { return modulus_; }
    const Subgroup& kernel() const { return kernel_; }
    const std::vector<i64>& coset_representatives() const { return reps_; }
    size_t size() const { return reps_.size(); }

    i64 identity() const { return canon(identity_value(modulus_)); }

    i64 canon(i64 unit_value) const {
        unit_value %= modulus_;
        if (unit_value < 0) unit_value += modulus_;
        const auto it = canon_.find(unit_value);
        if (it == canon_.end()) {
            fail("NotAUnit", std::to_string(unit_value) + " is not a unit mod " + std::to_string(modulus_));
        }
        return it->second;
    }

    i64 mul(i64 a, i64 b) const {
        return canon(modulus_ == 1 ? 0 : mulmod(canon(a), canon(b), modulus_));
    }

    i64 inverse(i64 a) const {
        return canon(modulus_ == 1 ? 0 : modinv(canon(a), modulus_));
    }

    i64 pow(i64 a, i64 e) const {
        if (modulus_ == 1) return 0;
        if (e < 0) return pow(inverse(a), -e);
        return canon(powmod(canon(a), e, modulus_));
    }

    i64 order_of(i64 a) const {
        i64 g = canon(a);
        const i64 id = identity();
        i64 acc = g;
        i64 n = 1;
        while (acc != id) {
            acc = mul(acc, g);
            ++n;
        }
        return n;
    }

    // Cosets of the cyclic subgroup generated by g, each sorted, listed by
    // ascending minimal element. Deterministic across runs.
    std::vector<std::vector<i64>> cosets_of_cyclic(i64 g) const {
        std::set<i64> remaining(reps_.begin(), reps_.end());
        std::vector<i64> gens;
        {
            i64 acc = identity();
            do {
                gens.push_back(acc);
                acc = mul(acc, g);
            } while (acc != identity());
        }
        std::vector<std::vector<i64>> out;
        while (!remaining.empty()) {
            const i64 lead = *remaining.begin();
            std::vector<i64> coset;
            for (i64 h : gens) coset.push_back(mul(lead, h));
            std::sort(coset.begin(), coset.end());
            coset.erase(std::unique(coset.begin(), coset.end()), coset.end());
            for (i64 c : coset) remaining.erase(c);
            out.push_back(std::move(coset));
        }
        return out;
    }

    friend bool operator==(const QuotientGroup& a, const QuotientGroup& b) {
        return a.modulus_ == b.modulus_ && a.kernel_ == b.kernel_;
    }

private:
    i64 modulus_;
    Subgroup kernel_;
    std::vector<i64> reps_;
    std::unordered_map<i64, i64> canon_;
};

inline QuotientGroup quotient(const Modulus& m, const Subgroup& kernel) {
    return QuotientGroup(m.value, kernel);
}

}  // namespace adelic
