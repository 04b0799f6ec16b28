#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "adelic/error.hpp"

namespace adelic {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(a) * b) % m);
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
    if (m <= 0) fail("InvalidModulus", "powmod requires a positive modulus");
    base %= m;
    if (base < 0) base += m;
    i64 acc = 1 % m;
    while (exp > 0) {
        if (exp & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

// Inverse of a mod m; requires gcd(a, m) = 1.
inline i64 modinv(i64 a, i64 m) {
    a %= m;
    if (a < 0) a += m;
    i64 old_r = a, r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) fail("NotAUnit", std::to_string(a) + " is not invertible mod " + std::to_string(m));
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

inline i64 checked_mul(i64 a, i64 b) {
    const i128 p = static_cast<i128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) fail("Overflow", "integer product out of 64-bit range");
    return static_cast<i64>(p);
}

inline i64 checked_pow(i64 base, i64 exp) {
    if (exp < 0) fail("Overflow", "checked_pow requires a nonnegative exponent");
    i64 acc = 1;
    while (exp-- > 0) acc = checked_mul(acc, base);
    return acc;
}

inline i64 checked_lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b);
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Distinct prime factors in ascending order.
inline std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    if (n < 0) n = -n;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    if (n < 0) n = -n;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// p-adic valuation of n (n != 0).
inline int padic_valuation(i64 n, i64 p) {
    if (n == 0) fail("InvalidArgument", "valuation of zero is undefined");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline i64 euler_phi(i64 n) {
    i64 phi = n;
    for (i64 p : prime_factors(n)) phi = phi / p * (p - 1);
    return phi;
}

// Smallest t >= 1 with a^t = 1 mod m, via reduction of phi(m) by its prime factors.
inline i64 multiplicative_order_mod(i64 a, i64 m) {
    if (m == 1) return 1;
    a %= m;
    if (a < 0) a += m;
    if (std::gcd(a, m) != 1) fail("NotAUnit", "order undefined for a non-unit residue");
    i64 order = euler_phi(m);
    for (i64 f : prime_factors(order)) {
        while (order % f == 0 && powmod(a, order / f, m) == 1) order /= f;
    }
    return order;
}

inline std::vector<i64> primes_upto(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<char> sieve(static_cast<size_t>(n) + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (i64 i = 2; i * i <= n; ++i)
        if (sieve[static_cast<size_t>(i)])
            for (i64 j = i * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = 0;
    for (i64 i = 2; i <= n; ++i)
        if (sieve[static_cast<size_t>(i)]) out.push_back(i);
    return out;
}

// Kronecker symbol (a / n), defined for all integers n.
inline int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int e = 0;
        while (n % 2 == 0) { n /= 2; ++e; }
        const i64 amod8 = ((a % 8) + 8) % 8;
        if (e % 2 == 1 && (amod8 == 3 || amod8 == 5)) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    // now n odd positive, 0 <= a < n: standard quadratic reciprocity loop
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const i64 nmod8 = n % 8;
            if (nmod8 == 3 || nmod8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

}  // namespace adelic
