// Walkthrough: the cover attached to Q(i) and the linking of small primes.
//
//   $ cmake --build build && ./build/demos/quadratic_walkthrough

#include <cstdio>

#include "adelic/cover.hpp"
#include "adelic/extension.hpp"
#include "adelic/profinite.hpp"
#include "adelic/semilocal.hpp"

using namespace adelic;

int main() {
    const auto qi = AbelianExtensionSpec::quadratic(-1);
    std::printf("Q(i) as a kernel subgroup: modulus %lld, kernel {1}, degree %lld\n",
                static_cast<long long>(qi.modulus()), static_cast<long long>(qi.degree()));

    const auto ram = ramification_set(qi);
    std::printf("ramified finite primes:");
    for (i64 p : ram.ramified_finite_primes) std::printf(" %lld", static_cast<long long>(p));
    std::printf("  (the archimedean place is always in the minimal set)\n\n");

    for (i64 p : {3, 5, 7, 13}) {
        const auto fiber = cover_fiber_over_Cp(qi, p);
        std::printf("over C_%-2lld: %lld circle(s), each of length %lld*log(%lld)  [Frob = %lld]\n",
                    static_cast<long long>(p), static_cast<long long>(fiber.component_count),
                    static_cast<long long>(fiber.residue_degree), static_cast<long long>(p),
                    static_cast<long long>(fiber.monodromy));
    }

    std::printf("\narchimedean fiber size: %zu (one conjugate pair of embeddings)\n\n",
                archimedean_fiber(qi).size());

    // a point over C_2 in the semilocal space at S = {2, 3, inf}
    const PlaceSet S = PlaceSet::of({2, 3});
    const auto a = from_rationals(S, {{2, Rational(0)}, {3, Rational(3)}}, Rational(6), 4);
    const auto pt = reduce_orbit_Cp(a, 2);
    std::printf("the class of (0, 3, 6) over C_2 reduces to h = %lld mod %lld, scale %s\n",
                static_cast<long long>(pt.h.residue_at(3)),
                static_cast<long long>(pt.h.profile().modulus_at(3)), pt.scale.str().c_str());

    // how strongly 2 links with 3, 5, 7 at precision 3
    for (i64 q : {3, 5, 7}) {
        const auto w = injectivity_witness(2, q, 3, 1000);
        std::printf("linking of 2 with %lld: 2 = %lld mod %lld^3, order %lld\n",
                    static_cast<long long>(q), static_cast<long long>(w.residue),
                    static_cast<long long>(q), static_cast<long long>(w.order));
    }
    return 0;
}
