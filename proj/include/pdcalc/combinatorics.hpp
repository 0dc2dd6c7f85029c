#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pdcalc/integers.hpp"

namespace pdcalc {

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// C(n, k) for n >= 0; out-of-range k gives 0 so sums over shifting index
// ranges can be written without guards.
inline Int binom(long n, long k) {
    if (n < 0) throw std::domain_error("binom: negative n");
    if (k < 0 || k > n) return 0;
    if (n - k < k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact at every step: r is C(n-k+i, i)
    }
    return r;
}

// d! / (d_1! ... d_r!) with sum(parts) == d required.
inline Int multinom(long d, const std::vector<long>& parts) {
    long sum = 0;
    for (long p : parts) {
        if (p < 0) throw std::domain_error("multinom: negative part");
        sum += p;
    }
    if (sum != d) throw std::domain_error("multinom: parts do not sum to d");
    Int r = 1;
    long seen = 0;
    for (long p : parts) {
        seen += p;
        r *= binom(seen, p);
    }
    return r;
}

// (de)! / (d! (e!)^d): the multiplicity gamma_d(gamma_e(x)) / gamma_{de}(x).
// Integrality is an assertion, not an assumption.
inline Int sym_power_degree(unsigned d, unsigned e) {
    Int num = factorial(d * e);
    Int den = factorial(d) * pow(factorial(e), d);
    return exact_div(num, den, "sym_power_degree");
}

// Exponent of 2 in n, n != 0.
inline unsigned two_adic_order(const Int& n) {
    if (n == 0) throw std::domain_error("two_adic_order: zero");
    Int m = n < 0 ? Int(-n) : n;
    unsigned v = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++v;
    }
    return v;
}

// N = 1 + floor(log2(3g)), the 2-power exponent attached to genus g.
inline unsigned factor_N(unsigned g) {
    if (g == 0) throw std::domain_error("factor_N: genus 0");
    unsigned n = 3 * g, lg = 0;
    while (n >>= 1u) ++lg;
    return 1 + lg;
}

// Checks by literal summation that
//   sum_{n>=0} C(2g-M, g-n) * sum_{m=0..n} C(n,m)(-1)^m  ==  C(2g-M, g);
// the inner alternating sum kills every n except n = 0.
inline bool verify_binomial_collapse(unsigned g, unsigned M) {
    Int lhs = 0;
    for (long n = 0; n <= 2 * (long)g; ++n) {
        Int inner = 0;
        for (long m = 0; m <= n; ++m) {
            Int t = binom(n, m);
            inner += (m % 2 == 0) ? t : -t;
        }
        lhs += binom(2 * (long)g - (long)M, (long)g - n) * inner;
    }
    return lhs == binom(2 * (long)g - (long)M, (long)g);
}

// Enumerates weak compositions (d_1,...,d_r) of d, i.e. d_i >= 0 summing to d.
// fn receives the full vector once per composition.
inline void for_each_weak_composition(
    long d, long r, const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> parts((size_t)r, 0);
    if (r == 0) {
        if (d == 0) fn(parts);
        return;
    }
    std::function<void(long, long)> rec = [&](long idx, long rest) {
        if (idx == r - 1) {
            parts[(size_t)idx] = rest;
            fn(parts);
            return;
        }
        for (long v = 0; v <= rest; ++v) {
            parts[(size_t)idx] = v;
            rec(idx + 1, rest - v);
        }
    };
    rec(0, d);
}

} // namespace pdcalc
