#pragma once

#include <compare>
#include <string>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"

namespace adelic {

// A place of Q: a finite prime or the archimedean place. Finite places order
// ascending, the archimedean place sorts last.
class Place {
public:
    static Place infinite() { return Place(0); }
    static Place finite(i64 p) {
        if (!is_prime(p)) fail("InvalidPlace", std::to_string(p) + " is not prime");
        return Place(p);
    }

    bool is_finite() const { return p_ != 0; }
    i64 prime() const {
        if (!is_finite()) fail("InvalidPlace", "the archimedean place has no prime");
        return p_;
    }

    std::string str() const { return is_finite() ? std::to_string(p_) : "inf"; }

    friend bool operator==(const Place&, const Place&) = default;
    friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
        const i64 ka = a.p_ == 0 ? INT64_MAX : a.p_;
        const i64 kb = b.p_ == 0 ? INT64_MAX : b.p_;
        return ka <=> kb;
    }

private:
    explicit Place(i64 p) : p_(p) {}
    i64 p_;  // 0 encodes the archimedean place
};

inline std::vector<std::string> place_strings(const std::vector<Place>& places) {
    std::vector<std::string> out;
    out.reserve(places.size());
    for (const Place& v : places) out.push_back(v.str());
    return out;
}

}  // namespace adelic
