#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/numeric.hpp"
#include "adelic/rational.hpp"

namespace adelic {

// Finite models of Bruhat-Schwartz functions on products of non-archimedean
// local fields. A local function is supported in p^{-j} Z_p and constant on
// cosets of p^k Z_p, hence a table of p^(j+k) exact rational values; a
// product function is a multi-index table over several primes. The
// archimedean factor is carried as an opaque symbolic tag and never
// evaluated: every test here is local at a finite place.

inline constexpr i64 kMaxTableCells = 1 << 20;

struct LocalWindow {
    i64 prime = 2;
    int outer = 0;  // j: support within p^-j Z_p
    int inner = 0;  // k: constant on cosets of p^k Z_p

    i64 cell_count() const { return checked_pow(prime, outer + inner); }

    friend bool operator==(const LocalWindow&, const LocalWindow&) = default;
};

struct LocalBSFunction {
    LocalWindow window;
    std::vector<Rational> values;  // cell c holds the value on c * p^-j + p^k Z_p
};

inline LocalBSFunction local_table(i64 prime, int outer, int inner, std::vector<Rational> values) {
    if (!is_prime(prime)) fail("InvalidPlace", std::to_string(prime) + " is not prime");
    if (outer < 0 || inner < 0) fail("InvalidWindow", "window exponents must be >= 0");
    LocalWindow w{prime, outer, inner};
    if (static_cast<i64>(values.size()) != w.cell_count()) {
        fail("InvalidWindow", "value table does not match the window size");
    }
    return LocalBSFunction{w, std::move(values)};
}

inline LocalBSFunction indicator_of_integers(i64 prime) {
    return local_table(prime, 0, 0, {Rational(1)});
}

class ProductBSFunction {
public:
    ProductBSFunction() : values_{Rational(0)} {}

    static ProductBSFunction scalar(const Rational& c) {
        ProductBSFunction f;
        f.values_ = {c};
        return f;
    }

    // Assemble from an explicit window list (ascending primes) and a flat
    // row-major value table with the last place fastest.
    static ProductBSFunction from_flat(std::vector<LocalWindow> windows, std::vector<Rational> values) {
        i64 total = 1;
        for (size_t i = 0; i < windows.size(); ++i) {
            if (!is_prime(windows[i].prime)) fail("InvalidPlace", "window prime must be prime");
            if (windows[i].outer < 0 || windows[i].inner < 0) fail("InvalidWindow", "negative window exponent");
            if (i > 0 && windows[i - 1].prime >= windows[i].prime) {
                fail("InvalidWindow", "windows must be listed by ascending prime");
            }
            total = checked_mul(total, windows[i].cell_count());
        }
        if (total > kMaxTableCells) fail("TableTooLarge", "grid exceeds the configured bound");
        if (static_cast<i64>(values.size()) != total) {
            fail("InvalidWindow", "value table does not match the grid size");
        }
        ProductBSFunction f;
        f.windows_ = std::move(windows);
        f.values_ = std::move(values);
        return f;
    }

    static ProductBSFunction tensor(std::vector<LocalBSFunction> factors) {
        std::sort(factors.begin(), factors.end(),
                  [](const LocalBSFunction& a, const LocalBSFunction& b) {
                      return a.window.prime < b.window.prime;
                  });
        ProductBSFunction f;
        i64 total = 1;
        for (const auto& factor : factors) {
            if (!f.windows_.empty() && f.windows_.back().prime == factor.window.prime) {
                fail("PlaceAlreadyPresent", "duplicate place in tensor product");
            }
            f.windows_.push_back(factor.window);
            total = checked_mul(total, factor.window.cell_count());
        }
        if (total > kMaxTableCells) fail("TableTooLarge", "grid exceeds the configured bound");
        f.values_.assign(static_cast<size_t>(total), Rational(1));
        for (i64 flat = 0; flat < total; ++flat) {
            Rational v(1);
            i64 rem = flat;
            for (size_t i = factors.size(); i-- > 0;) {
                const i64 cells = factors[i].window.cell_count();
                v *= factors[i].values[static_cast<size_t>(rem % cells)];
                rem /= cells;
            }
            f.values_[static_cast<size_t>(flat)] = v;
        }
        return f;
    }

    const std::vector<LocalWindow>& windows() const { return windows_; }
    const std::vector<Rational>& values() const { return values_; }
    const std::string& archimedean_tag() const { return arch_tag_; }

    bool has_place(i64 prime) const { return find_place(prime).has_value(); }

    bool is_zero() const {
        for (const Rational& v : values_)
            if (!v.is_zero()) return false;
        return true;
    }

    i64 total_cells() const { return static_cast<i64>(values_.size()); }

    // Per-place cell indices of a flat index, in window order.
    std::vector<i64> cell_of(i64 flat) const {
        std::vector<i64> c(windows_.size(), 0);
        for (size_t i = windows_.size(); i-- > 0;) {
            const i64 cells = windows_[i].cell_count();
            c[i] = flat % cells;
            flat /= cells;
        }
        return c;
    }

    i64 flat_of(const std::vector<i64>& cell) const {
        i64 flat = 0;
        for (size_t i = 0; i < windows_.size(); ++i) {
            flat = flat * windows_[i].cell_count() + cell[i];
        }
        return flat;
    }

    // Value at a point given by one rational coordinate per place of this
    // function. Coordinates outside the support give 0.
    Rational evaluate(const std::vector<Rational>& coords) const {
        if (coords.size() != windows_.size()) fail("PlaceMismatch", "coordinate per place required");
        std::vector<i64> cell(windows_.size(), 0);
        for (size_t i = 0; i < windows_.size(); ++i) {
            const auto c = coordinate_cell(windows_[i], coords[i]);
            if (!c) return Rational(0);
            cell[i] = *c;
        }
        return values_[static_cast<size_t>(flat_of(cell))];
    }

    // The coset of x in the window grid, or nullopt when x falls outside the
    // supporting ball p^-j Z_p.
    static std::optional<i64> coordinate_cell(const LocalWindow& w, const Rational& x) {
        if (x.is_zero()) return 0;
        if (padic_valuation(x, w.prime) < -w.outer) return std::nullopt;
        const i64 mod = w.cell_count();
        const Rational shifted = x * Rational(checked_pow(w.prime, w.outer));
        return rational_mod(shifted, mod);
    }

    // Representative rational of a per-place cell index: c * p^-j.
    static Rational cell_representative(const LocalWindow& w, i64 cell) {
        return Rational(cell, checked_pow(w.prime, w.outer));
    }

    friend bool operator==(const ProductBSFunction&, const ProductBSFunction&) = default;

private:
    std::optional<size_t> find_place(i64 prime) const {
        for (size_t i = 0; i < windows_.size(); ++i)
            if (windows_[i].prime == prime) return i;
        return std::nullopt;
    }

    friend ProductBSFunction refined(const ProductBSFunction&, const std::vector<LocalWindow>&);
    friend ProductBSFunction extend(const ProductBSFunction&, i64);
    friend ProductBSFunction factor_out(const ProductBSFunction&, i64);
    friend ProductBSFunction twist(const ProductBSFunction&, const Rational&);
    friend ProductBSFunction add(const ProductBSFunction&, const ProductBSFunction&);
    friend ProductBSFunction scale(const ProductBSFunction&, const Rational&);
    friend ProductBSFunction pointwise_mul(const ProductBSFunction&, const ProductBSFunction&);
    friend size_t place_index(const ProductBSFunction&, i64);

    std::vector<LocalWindow> windows_;  // sorted by prime, distinct
    std::vector<Rational> values_;      // flat row-major table, last place fastest
    std::string arch_tag_ = "S(R)";     // symbolic archimedean factor
};

inline size_t place_index(const ProductBSFunction& f, i64 prime) {
    for (size_t i = 0; i < f.windows_.size(); ++i)
        if (f.windows_[i].prime == prime) return i;
    fail("PlaceNotPresent", std::to_string(prime) + " is not a place of the function");
}

// Re-express f on finer/larger windows (per place: outer' >= outer,
// inner' >= inner). New cells outside the old support read 0.
inline ProductBSFunction refined(const ProductBSFunction& f, const std::vector<LocalWindow>& target) {
    if (target.size() != f.windows_.size()) fail("PlaceMismatch", "refinement must keep the place list");
    i64 total = 1;
    for (size_t i = 0; i < target.size(); ++i) {
        if (target[i].prime != f.windows_[i].prime) fail("PlaceMismatch", "refinement must keep the place list");
        if (target[i].outer < f.windows_[i].outer || target[i].inner < f.windows_[i].inner) {
            fail("InvalidWindow", "refinement cannot shrink a window");
        }
        total = checked_mul(total, target[i].cell_count());
    }
    if (total > kMaxTableCells) fail("TableTooLarge", "grid exceeds the configured bound");
    ProductBSFunction out;
    out.windows_ = target;
    out.arch_tag_ = f.arch_tag_;
    out.values_.assign(static_cast<size_t>(total), Rational(0));
    for (i64 flat = 0; flat < total; ++flat) {
        const std::vector<i64> cell = out.cell_of(flat);
        std::vector<i64> old_cell(cell.size(), 0);
        bool inside = true;
        for (size_t i = 0; i < cell.size(); ++i) {
            const i64 p = target[i].prime;
            const i64 spread = checked_pow(p, target[i].outer - f.windows_[i].outer);
            if (cell[i] % spread != 0) { inside = false; break; }
            old_cell[i] = (cell[i] / spread) % f.windows_[i].cell_count();
        }
        if (inside) out.values_[static_cast<size_t>(flat)] = f.values_[static_cast<size_t>(f.flat_of(old_cell))];
    }
    return out;
}

// gamma(S, S u {v}): tensor with the indicator of Z_v.
inline ProductBSFunction extend(const ProductBSFunction& f, i64 prime) {
    if (!is_prime(prime)) fail("InvalidPlace", std::to_string(prime) + " is not prime");
    if (f.has_place(prime)) fail("PlaceAlreadyPresent", std::to_string(prime) + " already a place");
    ProductBSFunction out = f;
    LocalWindow w{prime, 0, 0};
    const auto pos = std::lower_bound(out.windows_.begin(), out.windows_.end(), prime,
                                      [](const LocalWindow& a, i64 p) { return a.prime < p; });
    out.windows_.insert(pos, w);
    // the new axis has a single cell, so the flat table is unchanged
    return out;
}

// Align two functions on the union of their places and the join of their
// windows, so tables can be combined cell by cell.
inline std::pair<ProductBSFunction, ProductBSFunction> aligned(ProductBSFunction a, ProductBSFunction b) {
    for (const LocalWindow& w : b.windows())
        if (!a.has_place(w.prime)) a = extend(a, w.prime);
    for (const LocalWindow& w : a.windows())
        if (!b.has_place(w.prime)) b = extend(b, w.prime);
    std::vector<LocalWindow> join;
    for (size_t i = 0; i < a.windows().size(); ++i) {
        const LocalWindow& wa = a.windows()[i];
        const LocalWindow& wb = b.windows()[i];
        join.push_back(LocalWindow{wa.prime, std::max(wa.outer, wb.outer), std::max(wa.inner, wb.inner)});
    }
    return {refined(a, join), refined(b, join)};
}

inline bool function_equal(const ProductBSFunction& a, const ProductBSFunction& b) {
    if (a.archimedean_tag() != b.archimedean_tag()) return false;
    const auto [fa, fb] = aligned(a, b);
    return fa.values() == fb.values();
}

inline ProductBSFunction add(const ProductBSFunction& a, const ProductBSFunction& b) {
    if (a.archimedean_tag() != b.archimedean_tag()) fail("PlaceMismatch", "archimedean tags differ");
    auto [fa, fb] = aligned(a, b);
    for (size_t i = 0; i < fa.values_.size(); ++i) fa.values_[i] += fb.values_[i];
    return fa;
}

inline ProductBSFunction scale(const ProductBSFunction& f, const Rational& c) {
    ProductBSFunction out = f;
    for (Rational& v : out.values_) v *= c;
    return out;
}

inline ProductBSFunction pointwise_mul(const ProductBSFunction& a, const ProductBSFunction& b) {
    auto [fa, fb] = aligned(a, b);
    for (size_t i = 0; i < fa.values_.size(); ++i) fa.values_[i] *= fb.values_[i];
    return fa;
}

// f is of the form 1_{Z_v} (x) g iff (1) it vanishes on cells outside Z_v and
// (2) it is constant across the cells inside Z_v in the v direction.
inline bool is_factorable_at(const ProductBSFunction& f, i64 prime) {
    const size_t vi = place_index(f, prime);
    const LocalWindow w = f.windows()[vi];
    const i64 inside_stride = checked_pow(w.prime, w.outer);  // cells c = stride * d are inside Z_v
    for (i64 flat = 0; flat < f.total_cells(); ++flat) {
        const std::vector<i64> cell = f.cell_of(flat);
        const i64 c = cell[vi];
        if (c % inside_stride != 0) {
            if (!f.values()[static_cast<size_t>(flat)].is_zero()) return false;  // support leaks out of Z_v
        } else if (c != 0) {
            std::vector<i64> base = cell;
            base[vi] = 0;
            if (f.values()[static_cast<size_t>(flat)] != f.values()[static_cast<size_t>(f.flat_of(base))]) {
                return false;  // not translation invariant inside Z_v
            }
        }
    }
    return true;
}

// The cofactor g with f = 1_{Z_v} (x) g: g(y) = f(0_v, y).
inline ProductBSFunction factor_out(const ProductBSFunction& f, i64 prime) {
    if (!is_factorable_at(f, prime)) {
        fail("NotFactorable", "function does not factor through 1_Z at " + std::to_string(prime));
    }
    const size_t vi = place_index(f, prime);
    ProductBSFunction out;
    out.windows_ = f.windows_;
    out.windows_.erase(out.windows_.begin() + static_cast<std::ptrdiff_t>(vi));
    out.arch_tag_ = f.arch_tag_;
    i64 total = 1;
    for (const LocalWindow& w : out.windows_) total = checked_mul(total, w.cell_count());
    out.values_.assign(static_cast<size_t>(total), Rational(0));
    for (i64 flat = 0; flat < total; ++flat) {
        std::vector<i64> cell = out.cell_of(flat);
        std::vector<i64> full = cell;
        full.insert(full.begin() + static_cast<std::ptrdiff_t>(vi), 0);
        out.values_[static_cast<size_t>(flat)] = f.values_[static_cast<size_t>(f.flat_of(full))];
    }
    return out;
}

// The twisted function x -> f(q^-1 x) for a nonzero rational q: per place the
// grid shifts by the valuation of q and the cells permute by its unit part.
inline ProductBSFunction twist(const ProductBSFunction& f, const Rational& q) {
    if (q.is_zero()) fail("InvalidArgument", "twist requires a nonzero rational");
    ProductBSFunction g = f;
    for (i64 p : prime_factors(q.num()))
        if (!g.has_place(p)) g = extend(g, p);
    for (i64 p : prime_factors(q.den()))
        if (!g.has_place(p)) g = extend(g, p);

    std::vector<LocalWindow> target;
    i64 total = 1;
    for (const LocalWindow& w : g.windows()) {
        const int e = padic_valuation(q, w.prime);
        LocalWindow t{w.prime, std::max(w.outer - e, 0), std::max(w.inner + e, 0)};
        target.push_back(t);
        total = checked_mul(total, t.cell_count());
    }
    if (total > kMaxTableCells) fail("TableTooLarge", "grid exceeds the configured bound");

    ProductBSFunction out;
    out.windows_ = target;
    out.arch_tag_ = g.arch_tag_;
    out.values_.assign(static_cast<size_t>(total), Rational(0));
    const Rational qinv = Rational(1) / q;
    for (i64 flat = 0; flat < total; ++flat) {
        const std::vector<i64> cell = out.cell_of(flat);
        std::vector<Rational> coords;
        coords.reserve(cell.size());
        for (size_t i = 0; i < cell.size(); ++i) {
            coords.push_back(ProductBSFunction::cell_representative(target[i], cell[i]) * qinv);
        }
        out.values_[static_cast<size_t>(flat)] = g.evaluate(coords);
    }
    return out;
}

struct SheafGlueReport {
    bool belongs_at_intersection = false;  // factorable at every finite place outside S
    bool premise_holds = false;            // belongs to every O(S_j^c)
    bool sheaf_consistent = true;          // premise implies membership
};

// The subsheaf criterion for the semilocal structure sheaf: a function lies
// in O(S^c) as soon as it lies in every O(S_j^c) with S the intersection of
// the S_j. Both sides are computed and compared.
inline SheafGlueReport sheaf_glue_check(const ProductBSFunction& f,
                                        const std::vector<std::vector<i64>>& s_list) {
    if (s_list.empty()) fail("InvalidPlaceSet", "at least one covering set is required");
    std::vector<i64> intersection = s_list.front();
    std::sort(intersection.begin(), intersection.end());
    for (const auto& s : s_list) {
        std::vector<i64> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        std::vector<i64> next;
        std::set_intersection(intersection.begin(), intersection.end(), sorted.begin(), sorted.end(),
                              std::back_inserter(next));
        intersection = std::move(next);
    }
    const auto outside = [&](const std::vector<i64>& s, i64 p) {
        return std::find(s.begin(), s.end(), p) == s.end();
    };
    SheafGlueReport report;
    report.belongs_at_intersection = true;
    for (const LocalWindow& w : f.windows()) {
        if (outside(intersection, w.prime) && !is_factorable_at(f, w.prime)) {
            report.belongs_at_intersection = false;
            break;
        }
    }
    report.premise_holds = true;
    for (const auto& s : s_list) {
        for (const LocalWindow& w : f.windows()) {
            if (outside(s, w.prime) && !is_factorable_at(f, w.prime)) {
                report.premise_holds = false;
                break;
            }
        }
        if (!report.premise_holds) break;
    }
    report.sheaf_consistent = !report.premise_holds || report.belongs_at_intersection;
    return report;
}

// An element of the algebraic cross product: a finite sum of terms f U_q with
// distinct rational keys q and nonzero coefficient functions.
struct CrossProductElement {
    std::vector<std::pair<Rational, ProductBSFunction>> terms;  // sorted by key

    static CrossProductElement of(std::vector<std::pair<Rational, ProductBSFunction>> in) {
        CrossProductElement h;
        for (auto& [q, f] : in) {
            if (q.is_zero()) fail("InvalidArgument", "cross-product keys must be nonzero");
            if (f.is_zero()) continue;
            h.terms.emplace_back(q, std::move(f));
        }
        std::sort(h.terms.begin(), h.terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 1; i < h.terms.size(); ++i) {
            if (h.terms[i].first == h.terms[i - 1].first) fail("InvalidArgument", "duplicate keys");
        }
        return h;
    }
};

// Convolution with the twisted action: (f U_q)(g U_r) = f * (g o q^-1) U_{qr}.
inline CrossProductElement cp_mul(const CrossProductElement& a, const CrossProductElement& b) {
    std::map<std::pair<i64, i64>, ProductBSFunction> acc;  // key as (num, den)
    for (const auto& [q, f] : a.terms) {
        for (const auto& [r, g] : b.terms) {
            const Rational key = q * r;
            const ProductBSFunction prod = pointwise_mul(f, twist(g, q));
            const auto mapkey = std::make_pair(key.num(), key.den());
            const auto it = acc.find(mapkey);
            if (it == acc.end()) {
                acc.emplace(mapkey, prod);
            } else {
                it->second = add(it->second, prod);
            }
        }
    }
    std::vector<std::pair<Rational, ProductBSFunction>> terms;
    for (auto& [k, f] : acc) terms.emplace_back(Rational(k.first, k.second), std::move(f));
    return CrossProductElement::of(std::move(terms));
}

inline bool rational_is_s_unit(const Rational& q, const std::vector<i64>& s_primes) {
    if (q.is_zero()) return false;
    const auto in_s = [&](i64 p) {
        return std::find(s_primes.begin(), s_primes.end(), p) != s_primes.end();
    };
    for (i64 p : prime_factors(q.num()))
        if (!in_s(p)) return false;
    for (i64 p : prime_factors(q.den()))
        if (!in_s(p)) return false;
    return true;
}

// Membership of a cross-product element in the sections over S^c: every key
// must be an S-unit and every coefficient must factor through 1_{Z_v} at each
// of its finite places outside S.
inline bool crossproduct_membership(const CrossProductElement& h, const std::vector<i64>& s_primes) {
    for (const auto& [q, f] : h.terms) {
        if (!rational_is_s_unit(q, s_primes)) return false;
        for (const LocalWindow& w : f.windows()) {
            if (std::find(s_primes.begin(), s_primes.end(), w.prime) == s_primes.end() &&
                !is_factorable_at(f, w.prime)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace adelic
